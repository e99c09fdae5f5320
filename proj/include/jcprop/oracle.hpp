// oracle.hpp: Discretized-continuum Hamiltonian in the one- and two-excitation sectors

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "jcprop/quasimode.hpp"
#include "jcprop/scattering.hpp"

namespace jcprop::oracle {

// uniform: equal cells on [k_c - W, k_c + W].
// tangent: k = k_c + s tan(theta) with equal cells in theta; fine near k_c, coarse in the tails,
// so the recurrence time 2 pi / dk at the centre is far longer than for a uniform grid.
enum class GridKind { uniform, tangent };

std::string to_string(GridKind kind);
GridKind parse_grid_kind(const std::string& text);

// Each mode stands for one cell of the continuum. Couplings and packet amplitudes carry the
// cell integral of |g|^2 (or |C|^2) with the phase at the node; the two end cells also absorb
// the Lorentzian tails beyond the window, so sum |g_j|^2 = lambda.
struct DiscretizedModel {
    ModelParams params;
    GridKind kind{GridKind::tangent};
    double window{40.0};
    double scale{1.0};
    Eigen::VectorXd k;       // node frequencies, ascending
    Eigen::VectorXd edges;   // cell boundaries, size M + 1 (outermost at the window)
    Eigen::VectorXd width;   // edges(j + 1) - edges(j)
    Eigen::VectorXcd g;      // discretized couplings

    Eigen::Index modes() const { return k.size(); }
    std::size_t pair_count() const;
    std::size_t pair_index(Eigen::Index j, Eigen::Index l) const;  // j <= l
};

// Requires M >= 64 and W >= 10 kappa_c. scale <= 0 selects kappa_c. lambda = 0 is allowed.
DiscretizedModel build(const ModelParams& params, Eigen::Index mode_count, double window,
                       GridKind kind = GridKind::tangent, double scale = 0.0);

// Two-excitation sector: b_j (atom excited, one photon) followed by the packed upper triangle
// j <= l of the photon pairs in orthonormal coordinates x_jl = sqrt(2) c_jl (j < l), x_jj = c_jj,
// so that the Euclidean norm of `amplitudes` is the state norm.
struct SectorState {
    Eigen::Index modes{0};
    Eigen::VectorXcd amplitudes;

    auto b() { return amplitudes.head(modes); }
    auto b() const { return amplitudes.head(modes); }
    // Symmetric two-photon amplitude c_jl.
    cplx pair(Eigen::Index j, Eigen::Index l) const;
    double norm() const { return amplitudes.norm(); }
    double b_norm2() const { return b().squaredNorm(); }
};

SectorState zero_state(const DiscretizedModel& model);

// b_j(0) from the packet's cell integrals, renormalized to unit norm. Throws when the window is
// narrower than 10 max(kappa_in, kappa_c).
SectorState initial_state(const DiscretizedModel& model, const scattering::InputPacket& packet);

// Applies H to a sector state (no shift or scaling). Used for hermiticity and selection-rule checks.
SectorState apply_hamiltonian(const DiscretizedModel& model, const SectorState& state);

struct EvolveStats {
    double norm_drift{0.0};
    std::size_t matvecs{0};
};

// exp(-iHt) by Chebyshev expansion; tol bounds the dropped Bessel weight per chunk.
SectorState evolve(const DiscretizedModel& model, const SectorState& initial, double t_final, double tol = 1e-10,
                   EvolveStats* stats = nullptr);

// One-excitation sector: atom amplitude and one photon amplitude per mode.
struct SingleExcitationState {
    cplx atom{1.0, 0.0};
    Eigen::VectorXcd photons;
};

SingleExcitationState excited_atom(const DiscretizedModel& model);
SingleExcitationState evolve(const DiscretizedModel& model, const SingleExcitationState& initial, double t_final,
                             double tol = 1e-10, EvolveStats* stats = nullptr);

struct CompareGrid {
    double window{1.0};  // in units of kappa_c, centred on k_c
    int points{101};
};

struct Report {
    double l2_rel_error{0.0};
    double max_rel_error{0.0};
    double residual_b_norm{0.0};
    double norm_drift{0.0};
    double coupling_sum_ratio{0.0};  // sum |g_j|^2 / lambda
    double t_final{0.0};
    std::size_t matvecs{0};
    std::vector<std::string> warnings;
};

// |c_jl|^2 / (width_j width_l) bilinearly interpolated at (k1, k2).
double pair_density(const DiscretizedModel& model, const SectorState& state, double k1, double k2);

// Compares an evolved state against |C(k1, k2)|^2 on the comparison grid.
Report compare_state(const DiscretizedModel& model, const SectorState& state, const scattering::InputPacket& packet,
                     const CompareGrid& grid);

// Builds the packet state, evolves to t_final and compares. Requires t_final >= 30 / gamma_sp
// when lambda > 0.
Report compare_joint_spectrum(const DiscretizedModel& model, const scattering::InputPacket& packet, double t_final,
                              const CompareGrid& grid, double tol = 1e-10);

} // namespace jcprop::oracle
