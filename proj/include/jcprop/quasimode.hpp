// quasimode.hpp: Model constants, Lorentzian coupling and the two-pole quasi-mode propagators

#pragma once

#include <complex>

namespace jcprop {

using cplx = std::complex<double>;

// Units: hbar = c = 1. The CLI measures everything in units of kappa_c.
struct ModelParams {
    double omega_a{0.0};   // atomic transition frequency
    double k_c{0.0};       // quasi-mode centre
    double kappa_c{1.0};   // quasi-mode half width
    double lambda{0.1};    // integrated coupling strength, units frequency^2
    int n_max{6};          // largest excitation number handed to the diagram layer
    double coupling_phase{0.0};  // constant phase of g(k); observables |.|^2 are blind to it

    // k_c - i kappa_c, the pole of g(k).
    cplx pole() const { return {k_c, -kappa_c}; }
    bool resonant() const { return omega_a == k_c; }
    void validate(bool allow_zero_coupling = false) const;
};

// g(k) = e^{i phase} sqrt(lambda kappa_c / pi) / (k - k_c + i kappa_c), continued to complex k.
cplx coupling(cplx k, const ModelParams& params);

// Analytic continuation of conj(g(k)) from the real axis.
cplx coupling_conj(cplx k, const ModelParams& params);

// Residue of g at k = k_c - i kappa_c.
cplx coupling_residue(const ModelParams& params);

// zeta(omega) = lambda / (omega - k_c + i kappa_c).
cplx zeta(cplx omega, const ModelParams& params);

struct PoleDecomposition {
    int n{1};
    cplx a_plus;
    cplx a_minus;
    cplx omega_plus;
    cplx omega_minus;
    bool degenerate{false};  // omega_plus == omega_minus; the weights are then undefined
};

// A_pm = (1 +- d/s)/2, Omega_pm = omega_a/2 + (N - 1/2) z +- s, with z = k_c - i kappa_c,
// d = (omega_a - z)/2, s = sqrt(d^2 + N lambda) on the principal branch.
PoleDecomposition pole_decomposition(int n, const ModelParams& params);

// Quasi-mode propagator Phi^(N)_{pq}(omega). Throws PoleError within 1e-13 |omega| of a pole
// and std::invalid_argument for p > n, q > n or p, q outside {0, 1}.
cplx phi(int n, int p, int q, cplx omega, const ModelParams& params);

// Partial sum of 1/(omega - omega_a) * sum_{j < terms} (zeta / (omega - omega_a))^j, the expansion
// of Phi^(1)_11 in powers of the self-energy.
cplx phi11_series(cplx omega, int terms, const ModelParams& params);

// Rate of the slower pole of Phi^(1)_11 at resonance: kappa_c/2 - Re sqrt(kappa_c^2/4 - lambda).
double gamma_sp(const ModelParams& params);

// lambda > kappa_c^2 / 4: both N = 1 poles share the decay rate kappa_c / 2.
bool strong_coupling(const ModelParams& params);

} // namespace jcprop
