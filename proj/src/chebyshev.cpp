// chebyshev.cpp: Bessel coefficients for the Chebyshev propagator

#include "jcprop/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jcprop::chebyshev {

std::vector<double> bessel_sequence(double x, double cutoff)
{
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw NumericalError("Bessel argument must be finite and non-negative");
    }
    if (x == 0.0) {
        return {1.0};
    }
    // Start well beyond the turning point n = x, where J_n decays faster than exponentially.
    const int start = static_cast<int>(std::ceil(x + 40.0 + 12.0 * std::cbrt(x))) + 2;
    std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
    j[static_cast<std::size_t>(start)] = 1e-300;
    for (int n = start; n >= 1; --n) {
        const auto un = static_cast<std::size_t>(n);
        j[un - 1] = (2.0 * n / x) * j[un] - j[un + 1];
        if (std::abs(j[un - 1]) > 1e250) {
            for (std::size_t m = un - 1; m <= static_cast<std::size_t>(start); ++m) j[m] *= 1e-250;
        }
    }
    // J_0 + 2 sum J_{2k} = 1 fixes the overall scale.
    double norm = j[0];
    for (std::size_t n = 2; n <= static_cast<std::size_t>(start); n += 2) norm += 2.0 * j[n];
    for (auto& v : j) v /= norm;

    double sum_sq = j[0] * j[0];
    for (std::size_t n = 1; n <= static_cast<std::size_t>(start); ++n) sum_sq += 2.0 * j[n] * j[n];
    if (std::abs(sum_sq - 1.0) > 1e-12) {
        throw NumericalError("Bessel sum rule violated: " + std::to_string(sum_sq));
    }

    std::size_t last = static_cast<std::size_t>(start);
    const auto turning = static_cast<std::size_t>(std::ceil(x));
    while (last > turning && std::abs(j[last]) < cutoff) --last;
    if (last == static_cast<std::size_t>(start)) {
        throw NumericalError("Chebyshev series did not converge within " + std::to_string(start) + " terms");
    }
    j.resize(last + 1);
    return j;
}

} // namespace jcprop::chebyshev
