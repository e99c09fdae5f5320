// cavity_modes.cpp: Mirror coefficients, mode functions and quasi-mode parameters

#include "jcprop/cavity_modes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace jcprop::cavity {

namespace {

constexpr cplx I{0.0, 1.0};

struct SideMirrors {
    cplx r_near;  // mirror the incident wave meets first
    cplx r_far;
    cplx t_near;
    cplx t_far;
};

SideMirrors mirrors_for(Side side, double k, const Geometry& geom)
{
    const double mu_near = side == Side::left ? geom.mu_left : geom.mu_right;
    const double mu_far = side == Side::left ? geom.mu_right : geom.mu_left;
    return {reflection(k, mu_near), reflection(k, mu_far),
            transmission(k, mu_near), transmission(k, mu_far)};
}

} // namespace

void Geometry::validate() const
{
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw std::invalid_argument("cavity length must be positive and finite");
    }
    if (!(mu_left >= 0.0) || !(mu_right >= 0.0) || !std::isfinite(mu_left) || !std::isfinite(mu_right)) {
        throw std::invalid_argument("mirror parameters must be non-negative and finite");
    }
}

cplx reflection(cplx k, double mu)
{
    return I * k * mu / (2.0 - I * k * mu);
}

cplx transmission(cplx k, double mu)
{
    return 2.0 / (2.0 - I * k * mu);
}

MirrorCoefficients mirror_coefficients(double k, double mu)
{
    return {reflection(k, mu), transmission(k, mu), k};
}

cplx d_function(cplx k, const Geometry& geom)
{
    return 1.0 - reflection(k, geom.mu_left) * reflection(k, geom.mu_right) * std::exp(2.0 * I * k * geom.length);
}

cplx d_function_frozen(cplx k, double k_ref, const Geometry& geom)
{
    const cplx rr = reflection(k_ref, geom.mu_left) * reflection(k_ref, geom.mu_right);
    return 1.0 - rr * std::exp(2.0 * I * k * geom.length);
}

ModeCoefficients mode_coefficients(Side side, double k, const Geometry& geom)
{
    if (!(k > 0.0)) {
        throw std::invalid_argument("mode functions require k > 0");
    }
    geom.validate();
    const auto m = mirrors_for(side, k, geom);
    const double L = geom.length;
    const cplx D = d_function(k, geom);
    ModeCoefficients c;
    c.R = (m.r_near * std::exp(-I * k * L) + m.r_far * std::exp(I * k * L + 2.0 * I * std::arg(m.t_near))) / D;
    c.I = m.t_near / D;
    c.J = m.t_near * m.r_far * std::exp(I * k * L) / D;
    c.T = m.t_near * m.t_far / D;
    return c;
}

cplx mode_function(Side side, double k, double x, const Geometry& geom)
{
    const auto c = mode_coefficients(side, k, geom);
    const double half = 0.5 * geom.length;
    // Mirror the right-incident mode onto the left-incident layout: u_R(x) has the same
    // piecewise form as u_L(-x) with L and R interchanged.
    const double y = side == Side::left ? x : -x;
    if (y < -half) {
        return std::exp(I * k * y) + c.R * std::exp(-I * k * y);
    }
    if (y <= half) {
        return c.I * std::exp(I * k * y) + c.J * std::exp(-I * k * y);
    }
    return c.T * std::exp(I * k * y);
}

QuasiModeParams quasimode_params(const Geometry& geom, int m, int refinements)
{
    geom.validate();
    if (m < 1) {
        throw std::invalid_argument("quasi-mode index must be >= 1");
    }
    if (refinements < 0) {
        throw std::invalid_argument("refinement count must be non-negative");
    }
    const double L = geom.length;
    double k_ref = m * std::numbers::pi / L;
    QuasiModeParams out;
    out.mode_index = m;
    for (int pass = 0; pass <= refinements; ++pass) {
        const cplx rr = reflection(k_ref, geom.mu_left) * reflection(k_ref, geom.mu_right);
        const double mag = std::abs(rr);
        if (mag == 0.0) {
            throw std::invalid_argument("transparent mirror: cavity decay rate undefined");
        }
        if (!(mag < 1.0)) {
            throw std::invalid_argument("|r_L r_R| must be below 1");
        }
        const cplx lg = std::log(rr);
        out.k_c = m * std::numbers::pi / L - lg.imag() / (2.0 * L);
        out.kappa_c = -lg.real() / (2.0 * L);
        k_ref = out.k_c;
    }
    return out;
}

} // namespace jcprop::cavity
