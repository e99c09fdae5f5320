// cavity_modes.hpp: Delta-sheet Fabry-Perot mirrors, continuum mode functions and quasi-mode extraction

#pragma once

#include <complex>

namespace jcprop::cavity {

using cplx = std::complex<double>;

enum class Side { left, right };

// Mirrors sit at x = -length/2 (left) and x = +length/2 (right). Each mirror is the
// thin-slab limit n^2 l -> mu, so only mu enters.
struct Geometry {
    double length{1.0};
    double mu_left{0.0};
    double mu_right{0.0};

    // Only the symmetric case is exercised by the application layer.
    bool symmetric() const { return mu_left == mu_right; }
    void validate() const;
};

struct MirrorCoefficients {
    cplx r;
    cplx t;
    double k{0.0};
};

MirrorCoefficients mirror_coefficients(double k, double mu);

// Analytic continuation of r(k) and t(k) to complex k.
cplx reflection(cplx k, double mu);
cplx transmission(cplx k, double mu);

// D(k) = 1 - r_L(k) r_R(k) exp(2ikL).
cplx d_function(cplx k, const Geometry& geom);

// Same as d_function but with r_L, r_R held at their values at k_ref.
cplx d_function_frozen(cplx k, double k_ref, const Geometry& geom);

// Piecewise amplitudes: outside-incident unit wave, reflected R, inside I (co-propagating)
// and J (counter-propagating), transmitted T.
struct ModeCoefficients {
    cplx R;
    cplx I;
    cplx J;
    cplx T;
};

ModeCoefficients mode_coefficients(Side side, double k, const Geometry& geom);
cplx mode_function(Side side, double k, double x, const Geometry& geom);

struct QuasiModeParams {
    double k_c{0.0};
    double kappa_c{0.0};
    int mode_index{1};
};

// Root of D near m*pi/L with ln(r_L r_R) evaluated at m*pi/L. Each refinement re-evaluates
// the mirror coefficients at the previous k_c.
QuasiModeParams quasimode_params(const Geometry& geom, int m, int refinements = 0);

} // namespace jcprop::cavity
