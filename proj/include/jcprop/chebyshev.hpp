// chebyshev.hpp: Chebyshev expansion of exp(-iHt) for time-independent Hermitian operators

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "jcprop/errors.hpp"

namespace jcprop::chebyshev {

// J_0(x) .. J_n(x) by Miller's backward recurrence, truncated once |J_n| < cutoff beyond n > x.
// Throws NumericalError if the normalization sum rule J_0^2 + 2 sum J_n^2 = 1 is off by more
// than 1e-12.
std::vector<double> bessel_sequence(double x, double cutoff);

struct Stats {
    std::size_t matvecs{0};
    std::size_t chunks{0};
};

// Op must provide
//   double centre() const; double half_width() const;   spectrum inside centre +- half_width
//   void fused(const VectorXcd& cur, VectorXcd& prev, VectorXcd& acc,
//              double alpha, double beta, std::complex<double> coef) const;
// where fused sets prev <- alpha * Hs cur - beta * prev and then acc += coef * prev,
// with Hs = (H - centre) / half_width.
template <class Op>
void evolve(const Op& op, Eigen::VectorXcd& psi, double t, double tol, Stats* stats = nullptr,
            double chunk_phase = 200.0)
{
    using cplx = std::complex<double>;
    if (t < 0.0) {
        throw NumericalError("negative propagation time");
    }
    const double half = op.half_width();
    const double centre = op.centre();
    double remaining = t;
    Eigen::VectorXcd cur(psi.size());
    Eigen::VectorXcd prev(psi.size());
    Eigen::VectorXcd acc(psi.size());
    while (remaining > 0.0) {
        const double tau = std::min(remaining, chunk_phase / half);
        const auto bessel = bessel_sequence(half * tau, 1e-3 * tol);
        cplx phase_i{1.0, 0.0};  // (-i)^n
        acc = bessel[0] * psi;
        cur = psi;
        prev.setZero();
        for (std::size_t n = 1; n < bessel.size(); ++n) {
            phase_i *= cplx{0.0, -1.0};
            const cplx coef = 2.0 * bessel[n] * phase_i;
            if (n == 1) {
                op.fused(cur, prev, acc, 1.0, 0.0, coef);
            } else {
                op.fused(cur, prev, acc, 2.0, 1.0, coef);
            }
            cur.swap(prev);
        }
        psi = std::polar(1.0, -centre * tau) * acc;
        remaining -= tau;
        if (stats) {
            stats->matvecs += bessel.size() - 1;
            ++stats->chunks;
        }
    }
}

} // namespace jcprop::chebyshev
