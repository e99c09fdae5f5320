// config.hpp: Run configuration for the command-line front end

#pragma once

#include <string>

#include <json.hpp>

#include "jcprop/oracle.hpp"
#include "jcprop/quasimode.hpp"
#include "jcprop/scattering.hpp"

namespace jcprop::app {

// A quantity given absolutely ("0.3"), as a multiple of gamma_sp ("2xgamma") or as a multiple of
// 1 / gamma_sp ("50/gamma").
struct GammaScaled {
    enum class Unit { absolute, times_gamma, over_gamma };

    double value{1.0};
    Unit unit{Unit::absolute};

    double resolve(double gamma) const;
    bool operator==(const GammaScaled&) const = default;
};

GammaScaled parse_gamma_scaled(const std::string& text);
std::string to_string(const GammaScaled& v);

// Frequencies and widths share one unit, kappa_c = 1 by default. The atom sits on resonance.
struct RunConfig {
    double lambda{0.1};
    double kappa_c{1.0};
    double k_c{100.0};  // keeps every sampled k positive for the default windows
    int n_max{6};

    GammaScaled kappa_in{1.0, GammaScaled::Unit::times_gamma};

    double window{30.0};
    int points{600};
    scattering::Subset subset{scattering::Subset::all};
    double norm_tolerance{2e-3};

    std::string out;
    std::string format{"csv"};

    // quasimode table: omega sampled on [k_c + omega_min, k_c + omega_max] + i omega_imag
    double omega_min{-2.0};
    double omega_max{2.0};
    int omega_points{9};
    double omega_imag{0.0};

    int oracle_modes{2000};
    double oracle_window{40.0};
    GammaScaled t_final{50.0, GammaScaled::Unit::over_gamma};
    double oracle_tol{1e-10};
    double oracle_threshold{0.05};
    double compare_window{1.0};  // half width around k_c
    int compare_points{101};
    oracle::GridKind oracle_grid{oracle::GridKind::tangent};

    bool strict{false};

    ModelParams model() const;
    scattering::InputPacket packet() const;
    double t_final_value() const;  // absolute time
    void validate() const;

    bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& cfg);
// Missing keys keep their current values; unknown keys are rejected.
void apply_json(RunConfig& cfg, const nlohmann::json& j);
RunConfig from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

} // namespace jcprop::app
