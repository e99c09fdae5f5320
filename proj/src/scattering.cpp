// scattering.cpp: Residue and quadrature evaluation of the packet integrals and the joint spectrum

#include "jcprop/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "jcprop/errors.hpp"

namespace jcprop::scattering {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kQuadWindow = 200.0;  // in units of kappa_c; tails handled by the infinite-range rule
constexpr double kDegenerateTol = 1e-8;
constexpr unsigned kNormDepth = 8;

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

cplx phi1(cplx w, const ModelParams& p) { return phi(1, 1, 1, w, p); }
cplx phi2(cplx w, const ModelParams& p) { return phi(2, 1, 1, w, p); }

void check_inputs(const InputPacket& packet, const ModelParams& params)
{
    params.validate();
    packet.validate();
}

void check_degenerate(const InputPacket& packet, const ModelParams& params)
{
    if (std::abs(packet.pole() - params.pole()) <= kDegenerateTol * params.kappa_c) {
        throw DegeneratePoleError("packet pole coincides with the coupling pole; use quadrature");
    }
}

// Integral over the real line, split at the given points; the outer pieces extend to infinity.
template <class F>
cplx integrate_line(F&& f, std::vector<double> cuts, double tol)
{
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cplx total{0.0, 0.0};
    total += GK::integrate(f, -kInf, cuts.front(), 15, tol);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        total += GK::integrate(f, cuts[i], cuts[i + 1], 15, tol);
    }
    total += GK::integrate(f, cuts.back(), kInf, 15, tol);
    return total;
}

std::vector<double> base_cuts(double k1, double k2, const InputPacket& packet, const ModelParams& params)
{
    const double c = params.k_c;
    const double lo = c - kQuadWindow * params.kappa_c;
    const double hi = c + kQuadWindow * params.kappa_c;
    std::vector<double> cuts{lo, hi};
    const auto add = [&](double x) {
        if (x > lo && x < hi) cuts.push_back(x);
    };
    for (double w : {params.kappa_c, packet.kappa_in}) {
        for (double m : {-10.0, -3.0, -1.0, 0.0, 1.0, 3.0, 10.0}) {
            add(c + m * w);
            add(packet.centre + m * w);
        }
    }
    // Phi1(k1 + k2 - k') peaks near k' = k1 + k2 - k_c.
    add(k1 + k2 - c);
    return cuts;
}

// Polynomial extrapolation to delta = 0 through three (delta, value) samples.
cplx richardson_zero(const double d[3], const cplx v[3])
{
    cplx out{0.0, 0.0};
    for (int i = 0; i < 3; ++i) {
        double w = 1.0;
        for (int j = 0; j < 3; ++j) {
            if (j != i) w *= (0.0 - d[j]) / (d[i] - d[j]);
        }
        out += w * v[i];
    }
    return out;
}

cplx i1_quadrature(double k1, double k2, const InputPacket& packet, const ModelParams& params)
{
    const double s = k1 + k2;
    const double deltas[3] = {1e-2 * params.kappa_c, 1e-3 * params.kappa_c, 1e-4 * params.kappa_c};
    cplx values[3];
    for (int n = 0; n < 3; ++n) {
        const double delta = deltas[n];
        auto cuts = base_cuts(k1, k2, packet, params);
        for (double m : {0.0, 1.0, -1.0, 10.0, -10.0, 100.0, -100.0, 1000.0, -1000.0}) {
            const double x = k1 + m * delta;
            if (x > cuts[0] && x < cuts[1]) cuts.push_back(x);
        }
        const auto f = [&](double kp) {
            return coupling(kp, params) * phi1(s - kp, params) * packet.amplitude(kp) / (k1 - kp + I * delta);
        };
        values[n] = integrate_line(f, std::move(cuts), 1e-10);
    }
    return richardson_zero(deltas, values);
}

cplx i2_quadrature(double k1, double k2, const InputPacket& packet, const ModelParams& params)
{
    const double s = k1 + k2;
    const cplx z = params.pole();
    const auto f = [&](double kp) {
        return coupling(kp, params) * phi1(s - kp, params) * packet.amplitude(kp) / (s - kp - z);
    };
    return integrate_line(f, base_cuts(k1, k2, packet, params), 1e-12);
}

// One ordering of the bracketed amplitude; the full value symmetrizes over (a, b).
cplx half_amplitude(double a, double b, const InputPacket& packet, const ModelParams& params, Subset subset,
                    Method method)
{
    const cplx ga = coupling_conj(a, params);
    const cplx pa = phi1(a, params);
    cplx v = ga * pa * packet.amplitude(b);
    if (subset == Subset::unlinked) {
        return v;
    }
    const cplx gab = ga * coupling_conj(b, params);
    v += gab * pa * i1(a, b, packet, params, method);
    if (subset == Subset::unlinked_plus_linked1) {
        return v;
    }
    const cplx z = params.pole();
    v += gab * params.lambda / (a - z) * pa * phi2(a + b, params) * i2(a, b, packet, params, method);
    return v;
}

std::vector<double> norm_cuts(double centre, double narrow, double kappa_c)
{
    std::vector<double> cuts;
    for (double w : {narrow, kappa_c, 10.0 * kappa_c, 100.0 * kappa_c}) {
        for (double m : {-3.0, -1.0, 1.0, 3.0}) cuts.push_back(centre + m * w);
    }
    cuts.push_back(centre);
    return cuts;
}

} // namespace

cplx InputPacket::amplitude(cplx k) const
{
    return std::sqrt(kappa_in / std::numbers::pi) / (k - pole());
}

void InputPacket::validate() const
{
    if (!(kappa_in > 0.0) || !std::isfinite(kappa_in)) {
        throw std::invalid_argument("packet width kappa_in must be positive");
    }
    if (!std::isfinite(centre)) {
        throw std::invalid_argument("packet centre must be finite");
    }
}

std::string to_string(Subset s)
{
    switch (s) {
    case Subset::all: return "all";
    case Subset::unlinked: return "unlinked";
    case Subset::unlinked_plus_linked1: return "unlinked+linked1";
    }
    return "all";
}

Subset parse_subset(const std::string& text)
{
    if (text == "all") return Subset::all;
    if (text == "unlinked") return Subset::unlinked;
    if (text == "unlinked+linked1") return Subset::unlinked_plus_linked1;
    throw std::invalid_argument("unknown diagram subset '" + text + "'");
}

cplx i1(double k1, double k2, const InputPacket& packet, const ModelParams& params, Method method)
{
    check_inputs(packet, params);
    if (method == Method::quadrature) {
        return i1_quadrature(k1, k2, packet, params);
    }
    check_degenerate(packet, params);
    // Closing below picks up the coupling pole z and the packet pole z_in.
    const double s = k1 + k2;
    const cplx z = params.pole();
    const cplx zin = packet.pole();
    const cplx c0 = std::sqrt(packet.kappa_in / std::numbers::pi);
    const cplx from_coupling = coupling_residue(params) * phi1(s - z, params) * packet.amplitude(z) / (k1 - z);
    const cplx from_packet = coupling(zin, params) * phi1(s - zin, params) * c0 / (k1 - zin);
    return -2.0 * std::numbers::pi * I * (from_coupling + from_packet);
}

cplx i2(double k1, double k2, const InputPacket& packet, const ModelParams& params, Method method)
{
    check_inputs(packet, params);
    if (method == Method::quadrature) {
        return i2_quadrature(k1, k2, packet, params);
    }
    check_degenerate(packet, params);
    // 1/(s - k' - z) has its pole at s - z, above the axis, so it does not contribute.
    const double s = k1 + k2;
    const cplx z = params.pole();
    const cplx zin = packet.pole();
    const cplx c0 = std::sqrt(packet.kappa_in / std::numbers::pi);
    const cplx from_coupling = coupling_residue(params) * phi1(s - z, params) * packet.amplitude(z) / (s - 2.0 * z);
    const cplx from_packet = coupling(zin, params) * phi1(s - zin, params) * c0 / (s - zin - z);
    return -2.0 * std::numbers::pi * I * (from_coupling + from_packet);
}

cplx two_photon_amplitude(double k1, double k2, const InputPacket& packet, const ModelParams& params, Subset subset)
{
    check_inputs(packet, params);
    if (!params.resonant()) {
        throw std::invalid_argument("two-photon amplitude requires omega_a == k_c");
    }
    Method method = Method::residue;
    if (std::abs(packet.pole() - params.pole()) <= kDegenerateTol * params.kappa_c) {
        method = Method::quadrature;
    }
    const cplx x12 = half_amplitude(k1, k2, packet, params, subset, method);
    const cplx x21 = half_amplitude(k2, k1, packet, params, subset, method);
    return (x12 + x21) / std::numbers::sqrt2;
}

JointSpectrumGrid joint_spectrum_grid(double window, int n_points, const InputPacket& packet,
                                      const ModelParams& params, Subset subset)
{
    check_inputs(packet, params);
    if (!(window > 0.0) || !std::isfinite(window)) {
        throw std::invalid_argument("grid window must be positive");
    }
    if (n_points < 16) {
        throw std::invalid_argument("grid needs at least 16 points per axis");
    }
    JointSpectrumGrid grid;
    grid.params = params;
    grid.packet = packet;
    grid.subset = subset;
    grid.window = window;
    if (std::abs(packet.pole() - params.pole()) <= kDegenerateTol * params.kappa_c) {
        grid.warnings.push_back("kappa_in equals kappa_c: packet integrals evaluated by quadrature");
    }
    grid.k1_axis = Eigen::VectorXd::LinSpaced(n_points, params.k_c - window, params.k_c + window);
    grid.k2_axis = grid.k1_axis;
    grid.values.resize(n_points, n_points);
    for (int i = 0; i < n_points; ++i) {
        for (int j = 0; j < n_points; ++j) {
            grid.values(i, j) = std::norm(two_photon_amplitude(grid.k1_axis(i), grid.k2_axis(j), packet, params, subset));
        }
    }
    const double h = grid.k1_axis(1) - grid.k1_axis(0);
    Eigen::VectorXd w = Eigen::VectorXd::Constant(n_points, h);
    w(0) = w(n_points - 1) = 0.5 * h;
    grid.integrated_norm = w.dot(grid.values * w);
    return grid;
}

double full_plane_norm(const InputPacket& packet, const ModelParams& params, Subset subset, double rel_tol)
{
    check_inputs(packet, params);
    const double narrow = std::min({packet.kappa_in, gamma_sp(params), params.kappa_c});
    const double c = params.k_c;
    const auto inner = [&](double k1) {
        auto cuts = norm_cuts(c, narrow, params.kappa_c);
        // Features of the second photon sit at k_c and on the energy shell k1 + k2 = 2 k_c.
        for (double m : {-3.0, -1.0, 0.0, 1.0, 3.0}) cuts.push_back(2.0 * c - k1 + m * narrow);
        const auto f = [&](double k2) { return std::norm(two_photon_amplitude(k1, k2, packet, params, subset)); };
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        double total = GK::integrate(f, -kInf, cuts.front(), kNormDepth, rel_tol);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += GK::integrate(f, cuts[i], cuts[i + 1], kNormDepth, rel_tol);
        return total + GK::integrate(f, cuts.back(), kInf, kNormDepth, rel_tol);
    };
    auto cuts = norm_cuts(c, narrow, params.kappa_c);
    std::sort(cuts.begin(), cuts.end());
    double total = GK::integrate(inner, -kInf, cuts.front(), kNormDepth, rel_tol);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += GK::integrate(inner, cuts[i], cuts[i + 1], kNormDepth, rel_tol);
    return total + GK::integrate(inner, cuts.back(), kInf, kNormDepth, rel_tol);
}

} // namespace jcprop::scattering
