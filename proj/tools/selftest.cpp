// selftest.cpp: Invariant groups run by the selftest command

#include "selftest.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "jcprop/cavity_modes.hpp"
#include "jcprop/diagrams.hpp"
#include "jcprop/scattering.hpp"

namespace jcprop::app {

namespace {

double rel(cplx a, cplx b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

// Largest relative mismatch over the terms of two distribution-valued propagators; a term
// present in one and absent in the other counts as a full mismatch.
double term_mismatch(const diagrams::PropagatorValue& a, const diagrams::PropagatorValue& b)
{
    double worst = a.terms.size() == b.terms.size() ? 0.0 : 1.0;
    for (const auto& t : a.terms) {
        const auto* other = b.find(t.delta_pairs);
        worst = std::max(worst, other ? rel(t.smooth, other->smooth) : 1.0);
    }
    return worst;
}

GroupResult make_group(std::string name, double worst, double tol)
{
    return {std::move(name), worst <= tol, worst, tol};
}

class Sampler {
public:
    explicit Sampler(unsigned seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    cplx upper(double centre, double spread)
    {
        return {uniform(centre - spread, centre + spread), uniform(0.05, spread)};
    }

private:
    std::mt19937_64 rng_;
};

GroupResult cavity_group(Sampler& s)
{
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double k = s.uniform(0.1, 50.0);
        const double mu = s.uniform(0.0, 5.0);
        const auto m = cavity::mirror_coefficients(k, mu);
        worst = std::max(worst, std::abs(std::norm(m.r) + std::norm(m.t) - 1.0));

        const cavity::Geometry geom{s.uniform(0.5, 3.0), mu, mu};
        const auto left = cavity::mode_coefficients(cavity::Side::left, k, geom);
        const auto right = cavity::mode_coefficients(cavity::Side::right, k, geom);
        worst = std::max(worst, std::abs(std::norm(left.R) + std::norm(left.T) - 1.0));
        worst = std::max(worst, std::abs(left.T - right.T));
        for (double x : {-0.5 * geom.length, 0.5 * geom.length}) {
            for (auto side : {cavity::Side::left, cavity::Side::right}) {
                const double eps = 1e-13 * std::max(1.0, std::abs(x));
                worst = std::max(worst, std::abs(cavity::mode_function(side, k, x - eps, geom) -
                                                 cavity::mode_function(side, k, x + eps, geom)));
            }
        }
    }
    return make_group("cavity modes", worst, 1e-10);
}

GroupResult pole_group(const ModelParams& params, Sampler& s)
{
    double worst = 0.0;
    const cplx z = params.pole();
    for (int n = 1; n <= std::max(params.n_max, 1); ++n) {
        const auto pd = pole_decomposition(n, params);
        worst = std::max(worst, std::abs(pd.a_plus + pd.a_minus - 1.0));
        for (int i = 0; i < 20; ++i) {
            const cplx w = s.upper(params.k_c, 3.0 * params.kappa_c);
            const double dn = n;
            const cplx lhs = (w - pd.omega_plus) * (w - pd.omega_minus);
            const cplx rhs = (w - dn * z) * (w - params.omega_a - (dn - 1.0) * z) - dn * params.lambda;
            worst = std::max(worst, rel(lhs, rhs));
            worst = std::max(worst, rel(phi(n, 1, 0, w, params), phi(n, 0, 1, w, params)));
            const cplx ratio = (w - dn * z) / (w - params.omega_a - (dn - 1.0) * z);
            worst = std::max(worst, rel(phi(n, 1, 1, w, params), ratio * phi(n, 0, 0, w, params)));
        }
    }
    const cplx w0 = s.upper(0.0, 2.0);
    worst = std::max(worst, rel(phi(0, 0, 0, w0, params), 1.0 / w0));
    return make_group("pole identities", worst, 1e-12);
}

GroupResult diagram_group(const ModelParams& params, Sampler& s, bool mutate_zeta)
{
    double worst = 0.0;
    for (int i = 0; i < 25; ++i) {
        const cplx w = s.upper(params.k_c, 3.0 * params.kappa_c);
        const double k1 = params.k_c + s.uniform(-2.0, 2.0);
        const double k2 = params.k_c + s.uniform(-2.0, 2.0);
        const double kp1 = params.k_c + s.uniform(-2.0, 2.0);
        const double kp2 = params.k_c + s.uniform(-2.0, 2.0);
        for (int p = 0; p <= 1; ++p) {
            for (int q = 0; q <= 1; ++q) {
                std::vector<double> out1(static_cast<std::size_t>(1 - p), k1);
                std::vector<double> in1(static_cast<std::size_t>(1 - q), kp1);
                const diagrams::ProcessSpec s1{1, p, q, out1, in1};
                worst = std::max(worst, term_mismatch(diagrams::full_propagator(s1, w, params),
                                                      diagrams::closed_form_g1(p, q, w, out1, in1, params)));

                std::vector<double> out2{k1, k2};
                std::vector<double> in2{kp1, kp2};
                out2.resize(static_cast<std::size_t>(2 - p));
                in2.resize(static_cast<std::size_t>(2 - q));
                const diagrams::ProcessSpec s2{2, p, q, out2, in2};
                worst = std::max(worst, term_mismatch(diagrams::full_propagator(s2, w, params),
                                                      diagrams::closed_form_g2(p, q, w, out2, in2, params)));
            }
        }
        // Dressed single-excitation propagator against its self-energy form.
        const double sign = mutate_zeta ? -1.0 : 1.0;
        const cplx dressed = 1.0 / (w - params.omega_a - sign * zeta(w, params));
        const diagrams::ProcessSpec empty{1, 1, 1, {}, {}};
        worst = std::max(worst, rel(diagrams::full_propagator(empty, w, params).linked(), dressed));
    }
    return make_group("generic vs closed form", worst, 1e-12);
}

GroupResult quadrature_group(const ModelParams& params, Sampler& s, int samples)
{
    ModelParams res = params;
    res.omega_a = res.k_c;
    const scattering::InputPacket packet{gamma_sp(res), res.k_c};
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double k1 = res.k_c + s.uniform(-2.0, 2.0) * res.kappa_c;
        const double k2 = res.k_c + s.uniform(-2.0, 2.0) * res.kappa_c;
        worst = std::max(worst, rel(scattering::i1(k1, k2, packet, res, scattering::Method::quadrature),
                                    scattering::i1(k1, k2, packet, res)));
        worst = std::max(worst, rel(scattering::i2(k1, k2, packet, res, scattering::Method::quadrature),
                                    scattering::i2(k1, k2, packet, res)));
    }
    return make_group("residue vs quadrature", worst, 1e-5);
}

GroupResult normalization_group(const ModelParams& params)
{
    ModelParams res = params;
    res.omega_a = res.k_c;
    const scattering::InputPacket packet{gamma_sp(res), res.k_c};
    return make_group("normalization", std::abs(scattering::full_plane_norm(packet, res) - 1.0), 1e-3);
}

} // namespace

bool SelftestReport::passed() const
{
    return std::all_of(groups.begin(), groups.end(), [](const GroupResult& g) { return g.passed; });
}

SelftestReport run_selftest(const ModelParams& params, const SelftestOptions& options)
{
    params.validate();
    Sampler sampler(options.seed);
    SelftestReport report;
    report.groups.push_back(cavity_group(sampler));
    report.groups.push_back(pole_group(params, sampler));
    report.groups.push_back(diagram_group(params, sampler, options.mutate_zeta_sign));
    report.groups.push_back(quadrature_group(params, sampler, options.quadrature_samples));
    report.groups.push_back(normalization_group(params));
    for (int n = 0; n <= params.n_max; ++n) {
        for (int p = 0; p <= std::min(n, 1); ++p) {
            for (int q = 0; q <= std::min(n, 1); ++q) {
                report.sequence_counts.push_back({n, p, q, diagrams::count_sequences(n, p, q)});
            }
        }
    }
    return report;
}

} // namespace jcprop::app
