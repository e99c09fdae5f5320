// main.cpp: jcprop command-line entry point
//
// Precedence: built-in defaults < --config JSON file < individual flags.

#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "jcprop/errors.hpp"

namespace {

using jcprop::app::RunConfig;

struct FlagValues {
    std::optional<std::string> config_path;
    std::optional<double> lambda;
    std::optional<double> kappa_c;
    std::optional<double> k_c;
    std::optional<int> n_max;
    std::optional<std::string> kappa_in;
    std::optional<double> window;
    std::optional<int> points;
    std::optional<std::string> subset;
    std::optional<double> norm_tolerance;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<double> omega_min;
    std::optional<double> omega_max;
    std::optional<int> omega_points;
    std::optional<double> omega_imag;
    std::optional<int> oracle_modes;
    std::optional<double> oracle_window;
    std::optional<std::string> t_final;
    std::optional<double> oracle_tol;
    std::optional<double> oracle_threshold;
    std::optional<std::string> oracle_grid;
    bool strict{false};
};

template <class T, class U>
void apply(const std::optional<T>& flag, U& field)
{
    if (flag) field = *flag;
}

RunConfig resolve(const FlagValues& f)
{
    RunConfig cfg = f.config_path ? jcprop::app::load_config(*f.config_path) : RunConfig{};
    apply(f.lambda, cfg.lambda);
    apply(f.kappa_c, cfg.kappa_c);
    apply(f.k_c, cfg.k_c);
    apply(f.n_max, cfg.n_max);
    if (f.kappa_in) cfg.kappa_in = jcprop::app::parse_gamma_scaled(*f.kappa_in);
    apply(f.window, cfg.window);
    apply(f.points, cfg.points);
    if (f.subset) cfg.subset = jcprop::scattering::parse_subset(*f.subset);
    apply(f.norm_tolerance, cfg.norm_tolerance);
    apply(f.out, cfg.out);
    apply(f.format, cfg.format);
    apply(f.omega_min, cfg.omega_min);
    apply(f.omega_max, cfg.omega_max);
    apply(f.omega_points, cfg.omega_points);
    apply(f.omega_imag, cfg.omega_imag);
    apply(f.oracle_modes, cfg.oracle_modes);
    apply(f.oracle_window, cfg.oracle_window);
    if (f.t_final) cfg.t_final = jcprop::app::parse_gamma_scaled(*f.t_final);
    apply(f.oracle_tol, cfg.oracle_tol);
    apply(f.oracle_threshold, cfg.oracle_threshold);
    if (f.oracle_grid) cfg.oracle_grid = jcprop::oracle::parse_grid_kind(*f.oracle_grid);
    if (f.strict) cfg.strict = true;
    return cfg;
}

} // namespace

int main(int argc, char** argv)
{
    using namespace jcprop::app;

    CLI::App app{"Propagators of an atom in a leaky cavity and two-photon scattering spectra"};
    app.fallthrough();
    app.require_subcommand(1);

    FlagValues f;
    app.add_option("--config", f.config_path, "JSON config file; flags override its values");
    app.add_option("--lambda", f.lambda, "coupling strength lambda (kappa_c^2)");
    app.add_option("--kappa-c", f.kappa_c, "quasi-mode half width");
    app.add_option("--k-c", f.k_c, "quasi-mode centre, also the atomic frequency");
    app.add_option("--n-max", f.n_max, "largest excitation number");
    app.add_option("--kappa-in", f.kappa_in, "packet width: a value or a multiple of gamma_sp, e.g. 0.5xgamma");
    app.add_option("--window", f.window, "half width of the spectrum grid around k_c");
    app.add_option("--points", f.points, "grid points per axis");
    app.add_option("--subset", f.subset, "diagram subset")->check(CLI::IsMember({"all", "unlinked", "unlinked+linked1"}));
    app.add_option("--norm-tol", f.norm_tolerance, "accepted |integrated norm - 1| for subset all");
    app.add_option("--out", f.out, "output path (stdout when empty, except for scatter)");
    app.add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--omega-min", f.omega_min, "start of the omega line, relative to k_c");
    app.add_option("--omega-max", f.omega_max, "end of the omega line, relative to k_c");
    app.add_option("--omega-points", f.omega_points, "samples on the omega line");
    app.add_option("--omega-imag", f.omega_imag, "imaginary part of the omega line");
    app.add_option("--oracle-modes", f.oracle_modes, "continuum modes in the discretized model");
    app.add_option("--oracle-window", f.oracle_window, "half width of the discretized continuum");
    app.add_option("--t-final", f.t_final, "evolution time: a value or a multiple of 1/gamma_sp, e.g. 50/gamma");
    app.add_option("--oracle-tol", f.oracle_tol, "propagator truncation tolerance");
    app.add_option("--oracle-threshold", f.oracle_threshold, "accepted L2 relative error");
    app.add_option("--oracle-grid", f.oracle_grid, "continuum grid")->check(CLI::IsMember({"uniform", "tangent"}));
    app.add_flag("--strict", f.strict, "treat convergence warnings as failures");

    auto* quasimode = app.add_subcommand("quasimode", "pole weights, pole positions and propagators along an omega line");
    auto* scatter = app.add_subcommand("scatter", "joint two-photon spectrum on a grid");
    auto* oracle = app.add_subcommand("oracle", "discretized-continuum time evolution against the analytic spectrum");
    auto* selftest = app.add_subcommand("selftest", "invariant checks grouped by subsystem");
    auto* show = app.add_subcommand("config", "print the resolved configuration as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_validation;
    }

    try {
        const RunConfig cfg = resolve(f);
        if (*show) {
            cfg.validate();
            std::cout << to_json(cfg).dump(2) << '\n';
            return exit_ok;
        }
        if (*quasimode) return cmd_quasimode(cfg, std::cout, std::cerr);
        if (*scatter) return cmd_scatter(cfg, std::cout, std::cerr);
        if (*oracle) return cmd_oracle(cfg, std::cout, std::cerr);
        if (*selftest) return cmd_selftest(cfg, std::cout, std::cerr);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const jcprop::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return exit_validation;
    }
    return exit_validation;
}
