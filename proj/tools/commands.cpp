// commands.cpp: Subcommands of the jcprop executable

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "jcprop/oracle.hpp"
#include "jcprop/scattering.hpp"
#include "selftest.hpp"

namespace jcprop::app {

namespace {

const char* kDefaultGridPath = "joint_spectrum.csv";

// Writes `text` to `path`, or to `fallback` when path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& fallback)
{
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::ios_base::failure("cannot open '" + path + "' for writing");
    f << text;
    f.close();
    if (!f) throw std::ios_base::failure("write to '" + path + "' failed");
}

void push_complex(std::vector<std::string>& row, cplx v)
{
    row.push_back(format_full(v.real()));
    row.push_back(format_full(v.imag()));
}

std::string join_csv(const std::vector<std::string>& row)
{
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) line += ',';
        line += row[i];
    }
    return line + '\n';
}

nlohmann::json complex_json(cplx v)
{
    return nlohmann::json::array({v.real(), v.imag()});
}

} // namespace

std::string format_full(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int cmd_quasimode(const RunConfig& cfg, std::ostream& out, std::ostream& log)
{
    cfg.validate();
    const ModelParams params = cfg.model();
    params.validate();

    std::vector<cplx> omegas;
    for (int i = 0; i < cfg.omega_points; ++i) {
        const double f = cfg.omega_points == 1 ? 0.0 : static_cast<double>(i) / (cfg.omega_points - 1);
        omegas.emplace_back(cfg.k_c + cfg.omega_min + f * (cfg.omega_max - cfg.omega_min), cfg.omega_imag);
    }

    std::ostringstream text;
    nlohmann::json rows = nlohmann::json::array();
    if (cfg.format == "csv") {
        text << "n,omega_re,omega_im,a_plus_re,a_plus_im,a_minus_re,a_minus_im,a_sum_re,a_sum_im,"
                "omega_plus_re,omega_plus_im,omega_minus_re,omega_minus_im,"
                "phi11_re,phi11_im,phi00_re,phi00_im,phi01_re,phi01_im\n";
    }
    for (int n = 0; n <= params.n_max; ++n) {
        PoleDecomposition pd;
        if (n > 0) pd = pole_decomposition(n, params);
        for (const cplx w : omegas) {
            const cplx p00 = phi(n, 0, 0, w, params);
            if (cfg.format == "csv") {
                std::vector<std::string> row{std::to_string(n)};
                push_complex(row, w);
                if (n > 0) {
                    push_complex(row, pd.a_plus);
                    push_complex(row, pd.a_minus);
                    push_complex(row, pd.a_plus + pd.a_minus);
                    push_complex(row, pd.omega_plus);
                    push_complex(row, pd.omega_minus);
                    push_complex(row, phi(n, 1, 1, w, params));
                    push_complex(row, p00);
                    push_complex(row, phi(n, 0, 1, w, params));
                } else {
                    row.insert(row.end(), 12, "");
                    push_complex(row, p00);
                    row.insert(row.end(), 2, "");
                }
                text << join_csv(row);
            } else {
                nlohmann::json r{{"n", n}, {"omega", complex_json(w)}, {"phi00", complex_json(p00)}};
                if (n > 0) {
                    r["a_plus"] = complex_json(pd.a_plus);
                    r["a_minus"] = complex_json(pd.a_minus);
                    r["a_sum"] = complex_json(pd.a_plus + pd.a_minus);
                    r["omega_plus"] = complex_json(pd.omega_plus);
                    r["omega_minus"] = complex_json(pd.omega_minus);
                    r["phi11"] = complex_json(phi(n, 1, 1, w, params));
                    r["phi01"] = complex_json(phi(n, 0, 1, w, params));
                }
                rows.push_back(std::move(r));
            }
        }
    }
    if (cfg.format == "json") {
        nlohmann::json doc{{"config", to_json(cfg)}, {"gamma_sp", params.lambda > 0.0 ? gamma_sp(params) : 0.0},
                           {"rows", rows}};
        text << doc.dump(2) << '\n';
    }
    emit(cfg.out, text.str(), out);
    if (strong_coupling(params)) {
        log << "warning: lambda > kappa_c^2/4, both single-excitation poles decay at kappa_c/2\n";
    }
    return exit_ok;
}

int cmd_scatter(const RunConfig& cfg, std::ostream& out, std::ostream& log)
{
    cfg.validate();
    const ModelParams params = cfg.model();
    params.validate();
    const auto packet = cfg.packet();
    const auto grid = scattering::joint_spectrum_grid(cfg.window, cfg.points, packet, params, cfg.subset);

    const bool checked = cfg.subset == scattering::Subset::all;
    const double norm_error = std::abs(grid.integrated_norm - 1.0);
    const bool norm_ok = !checked || norm_error <= cfg.norm_tolerance;

    nlohmann::json meta{
        {"config", to_json(cfg)},
        {"gamma_sp", gamma_sp(params)},
        {"kappa_in", packet.kappa_in},
        {"subset", scattering::to_string(cfg.subset)},
        {"window", grid.window},
        {"points", cfg.points},
        {"integrated_norm", grid.integrated_norm},
        {"norm_checked", checked},
        {"norm_ok", norm_ok},
        {"warnings", grid.warnings},
    };

    const std::string path = cfg.out.empty() ? kDefaultGridPath : cfg.out;
    if (cfg.format == "csv") {
        std::string text = "k1\\k2";
        for (Eigen::Index j = 0; j < grid.k2_axis.size(); ++j) text += ',' + format_full(grid.k2_axis(j));
        text += '\n';
        for (Eigen::Index i = 0; i < grid.k1_axis.size(); ++i) {
            text += format_full(grid.k1_axis(i));
            for (Eigen::Index j = 0; j < grid.k2_axis.size(); ++j) text += ',' + format_full(grid.values(i, j));
            text += '\n';
        }
        emit(path, text, out);
        emit(path + ".json", meta.dump(2) + '\n', out);
    } else {
        nlohmann::json doc = meta;
        doc["k1"] = std::vector<double>(grid.k1_axis.data(), grid.k1_axis.data() + grid.k1_axis.size());
        doc["k2"] = std::vector<double>(grid.k2_axis.data(), grid.k2_axis.data() + grid.k2_axis.size());
        nlohmann::json values = nlohmann::json::array();
        for (Eigen::Index i = 0; i < grid.values.rows(); ++i) {
            std::vector<double> row(static_cast<std::size_t>(grid.values.cols()));
            for (Eigen::Index j = 0; j < grid.values.cols(); ++j) row[static_cast<std::size_t>(j)] = grid.values(i, j);
            values.push_back(std::move(row));
        }
        doc["values"] = std::move(values);
        emit(path, doc.dump() + '\n', out);
    }
    for (const auto& w : grid.warnings) log << "warning: " << w << '\n';
    log << "integrated norm " << format_full(grid.integrated_norm);
    if (checked) log << (norm_ok ? " (within " : " (outside ") << cfg.norm_tolerance << " of 1)";
    log << '\n';
    return norm_ok ? exit_ok : exit_numerical;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& log)
{
    cfg.validate();
    const ModelParams params = cfg.model();
    params.validate(true);
    if (cfg.kappa_in.unit != GammaScaled::Unit::absolute || cfg.t_final.unit != GammaScaled::Unit::absolute) {
        if (!(params.lambda > 0.0)) throw std::invalid_argument("lambda = 0 needs absolute kappa_in and t_final");
    }
    const scattering::InputPacket packet{params.lambda > 0.0 ? cfg.packet().kappa_in : cfg.kappa_in.value, cfg.k_c};
    const double t_final = cfg.t_final_value();

    const auto model = oracle::build(params, cfg.oracle_modes, cfg.oracle_window, cfg.oracle_grid);
    const oracle::CompareGrid grid{cfg.compare_window, cfg.compare_points};
    const auto report = oracle::compare_joint_spectrum(model, packet, t_final, grid, cfg.oracle_tol);

    const bool accurate = report.l2_rel_error <= cfg.oracle_threshold;
    const bool clean = report.warnings.empty();
    const bool passed = accurate && (clean || !cfg.strict);

    nlohmann::json doc{
        {"config", to_json(cfg)},
        {"gamma_sp", params.lambda > 0.0 ? gamma_sp(params) : 0.0},
        {"kappa_in", packet.kappa_in},
        {"l2_rel_error", report.l2_rel_error},
        {"max_rel_error", report.max_rel_error},
        {"residual_b_norm", report.residual_b_norm},
        {"norm_drift", report.norm_drift},
        {"coupling_sum_ratio", report.coupling_sum_ratio},
        {"t_final", report.t_final},
        {"matvecs", report.matvecs},
        {"warnings", report.warnings},
        {"threshold", cfg.oracle_threshold},
        {"passed", passed},
    };
    emit(cfg.out, doc.dump(2) + '\n', out);
    for (const auto& w : report.warnings) log << "warning: " << w << '\n';
    log << "oracle l2 relative error " << format_full(report.l2_rel_error) << (passed ? " pass" : " FAIL") << '\n';
    return passed ? exit_ok : exit_numerical;
}

int cmd_selftest(const RunConfig& cfg, std::ostream& out, std::ostream& log)
{
    cfg.validate();
    const auto report = run_selftest(cfg.model());
    std::ostringstream text;
    for (const auto& g : report.groups) {
        text << (g.passed ? "PASS " : "FAIL ") << g.name << "  worst " << format_full(g.worst) << "  tol "
             << g.tolerance << '\n';
    }
    text << "sequence counts (n p q count)\n";
    for (const auto& c : report.sequence_counts) {
        text << "  " << c.n << ' ' << c.p << ' ' << c.q << ' ' << c.count << '\n';
    }
    emit(cfg.out, text.str(), out);
    log << (report.passed() ? "selftest passed\n" : "selftest FAILED\n");
    return report.passed() ? exit_ok : exit_numerical;
}

} // namespace jcprop::app
