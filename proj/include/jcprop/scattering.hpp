// scattering.hpp: Single-photon packet on an excited atom: long-time two-photon amplitude

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "jcprop/quasimode.hpp"

namespace jcprop::scattering {

// C(k) = sqrt(kappa_in / pi) / (k - centre + i kappa_in), unit norm on the real line.
struct InputPacket {
    double kappa_in{0.1};
    double centre{0.0};

    cplx pole() const { return {centre, -kappa_in}; }
    cplx amplitude(cplx k) const;
    void validate() const;
};

enum class Subset { all, unlinked, unlinked_plus_linked1 };
enum class Method { residue, quadrature };

std::string to_string(Subset s);
Subset parse_subset(const std::string& text);  // "all", "unlinked", "unlinked+linked1"

// Residue evaluation throws DegeneratePoleError when the packet and coupling poles merge.
cplx i1(double k1, double k2, const InputPacket& packet, const ModelParams& params, Method method = Method::residue);
cplx i2(double k1, double k2, const InputPacket& packet, const ModelParams& params, Method method = Method::residue);

// Long-time amplitude with exp(-i(k1+k2)t) removed; symmetric in (k1, k2) by construction.
// Residues are used unless the poles are degenerate, in which case both integrals fall back
// to quadrature.
cplx two_photon_amplitude(double k1, double k2, const InputPacket& packet, const ModelParams& params,
                          Subset subset = Subset::all);

struct JointSpectrumGrid {
    Eigen::VectorXd k1_axis;
    Eigen::VectorXd k2_axis;
    Eigen::MatrixXd values;  // |C(k1_axis(i), k2_axis(j))|^2
    ModelParams params;
    InputPacket packet;
    Subset subset{Subset::all};
    double window{0.0};
    double integrated_norm{0.0};  // trapezoid rule over the sampled square
    std::vector<std::string> warnings;
};

// Samples [k_c - window, k_c + window]^2 on a uniform n_points x n_points grid.
JointSpectrumGrid joint_spectrum_grid(double window, int n_points, const InputPacket& packet,
                                      const ModelParams& params, Subset subset = Subset::all);

// Adaptive integral of |C|^2 over the whole plane.
double full_plane_norm(const InputPacket& packet, const ModelParams& params, Subset subset = Subset::all,
                       double rel_tol = 1e-9);

} // namespace jcprop::scattering
