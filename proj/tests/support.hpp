// support.hpp: Shared helpers for the unit tests

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

namespace testsupport {

using cplx = std::complex<double>;

inline double rel_err(cplx a, cplx b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

class Rng {
public:
    explicit Rng(unsigned seed) : gen_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    // Random point in the upper half-plane with Im in [im_lo, im_hi].
    cplx upper(double re_lo, double re_hi, double im_lo, double im_hi) { return {uniform(re_lo, re_hi), uniform(im_lo, im_hi)}; }

private:
    std::mt19937_64 gen_;
};

} // namespace testsupport
