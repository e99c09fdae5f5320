// quasimode.cpp: Coupling function and closed-form quasi-mode propagators

#include "jcprop/quasimode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "jcprop/errors.hpp"

namespace jcprop {

namespace {

constexpr double kPoleGuard = 1e-13;
constexpr double kDegenerateTol = 1e-12;

void guard_pole(cplx omega, cplx pole)
{
    if (std::abs(omega - pole) <= kPoleGuard * std::abs(omega)) {
        throw PoleError("propagator evaluated at its pole (" + std::to_string(pole.real()) + ", " +
                        std::to_string(pole.imag()) + ")");
    }
}

double coupling_scale(const ModelParams& params)
{
    return std::sqrt(params.lambda * params.kappa_c / std::numbers::pi);
}

} // namespace

void ModelParams::validate(bool allow_zero_coupling) const
{
    if (!(kappa_c > 0.0) || !std::isfinite(kappa_c)) {
        throw std::invalid_argument("kappa_c must be positive");
    }
    const bool lambda_ok = allow_zero_coupling ? lambda >= 0.0 : lambda > 0.0;
    if (!lambda_ok || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda must be positive");
    }
    if (!std::isfinite(omega_a) || !std::isfinite(k_c) || !std::isfinite(coupling_phase)) {
        throw std::invalid_argument("model parameters must be finite");
    }
    if (n_max < 0) {
        throw std::invalid_argument("n_max must be non-negative");
    }
}

cplx coupling(cplx k, const ModelParams& params)
{
    return std::polar(coupling_scale(params), params.coupling_phase) / (k - params.pole());
}

cplx coupling_conj(cplx k, const ModelParams& params)
{
    return std::polar(coupling_scale(params), -params.coupling_phase) / (k - std::conj(params.pole()));
}

cplx coupling_residue(const ModelParams& params)
{
    return std::polar(coupling_scale(params), params.coupling_phase);
}

cplx zeta(cplx omega, const ModelParams& params)
{
    const cplx z = params.pole();
    guard_pole(omega, z);
    return params.lambda / (omega - z);
}

PoleDecomposition pole_decomposition(int n, const ModelParams& params)
{
    if (n < 1) {
        throw std::invalid_argument("pole decomposition needs n >= 1");
    }
    const cplx z = params.pole();
    const cplx d = 0.5 * (params.omega_a - z);
    const cplx s = std::sqrt(d * d + static_cast<double>(n) * params.lambda);
    const cplx centre = 0.5 * params.omega_a + (n - 0.5) * z;

    PoleDecomposition out;
    out.n = n;
    out.omega_plus = centre + s;
    out.omega_minus = centre - s;
    const double scale = std::max({std::abs(d), std::sqrt(n * params.lambda), params.kappa_c});
    out.degenerate = std::abs(s) <= kDegenerateTol * scale;
    if (!out.degenerate) {
        out.a_plus = 0.5 * (1.0 + d / s);
        out.a_minus = 0.5 * (1.0 - d / s);
    } else {
        out.a_plus = out.a_minus = cplx{std::nan(""), std::nan("")};
    }
    return out;
}

cplx phi(int n, int p, int q, cplx omega, const ModelParams& params)
{
    if (p < 0 || p > 1 || q < 0 || q > 1) {
        throw std::invalid_argument("atom occupations must be 0 or 1");
    }
    if (n < p || n < q) {
        throw std::invalid_argument("phi needs n >= p and n >= q");
    }
    if (n == 0) {
        guard_pole(omega, 0.0);
        return 1.0 / omega;
    }
    const auto pd = pole_decomposition(n, params);
    guard_pole(omega, pd.omega_plus);
    guard_pole(omega, pd.omega_minus);
    const cplx dp = omega - pd.omega_plus;
    const cplx dm = omega - pd.omega_minus;
    const cplx z = params.pole();

    if (p != q) {
        return std::sqrt(n * params.lambda) / (dp * dm);
    }
    if (pd.degenerate) {
        const cplx numer = p == 1 ? omega - static_cast<double>(n) * z
                                  : omega - params.omega_a - static_cast<double>(n - 1) * z;
        return numer / (dp * dm);
    }
    if (p == 1) {
        return pd.a_plus / dp + pd.a_minus / dm;
    }
    return (1.0 - pd.a_plus) / dp + (1.0 - pd.a_minus) / dm;
}

cplx phi11_series(cplx omega, int terms, const ModelParams& params)
{
    if (terms < 1) {
        throw std::invalid_argument("series needs at least one term");
    }
    guard_pole(omega, params.omega_a);
    const cplx free = 1.0 / (omega - params.omega_a);
    const cplx ratio = zeta(omega, params) * free;
    cplx sum{0.0, 0.0};
    cplx power{1.0, 0.0};
    for (int j = 0; j < terms; ++j) {
        sum += power;
        power *= ratio;
    }
    return free * sum;
}

double gamma_sp(const ModelParams& params)
{
    const auto pd = pole_decomposition(1, params);
    return std::min(std::abs(pd.omega_plus.imag()), std::abs(pd.omega_minus.imag()));
}

bool strong_coupling(const ModelParams& params)
{
    return params.lambda > 0.25 * params.kappa_c * params.kappa_c;
}

} // namespace jcprop
