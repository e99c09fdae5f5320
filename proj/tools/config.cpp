// config.cpp: JSON round-trip and validation of RunConfig

#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace jcprop::app {

namespace {

double parse_number(const std::string& text)
{
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    return v;
}

std::string shortest(double v)
{
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ec == std::errc{} ? ptr : buf);
}

nlohmann::json gamma_json(const GammaScaled& v)
{
    if (v.unit == GammaScaled::Unit::absolute) return v.value;
    return to_string(v);
}

GammaScaled gamma_from_json(const nlohmann::json& j)
{
    if (j.is_number()) return {j.get<double>(), GammaScaled::Unit::absolute};
    if (j.is_string()) return parse_gamma_scaled(j.get<std::string>());
    throw std::invalid_argument("expected a number or a string such as \"2xgamma\"");
}

void require_positive(double v, const char* name)
{
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + " must be positive");
    }
}

} // namespace

double GammaScaled::resolve(double gamma) const
{
    switch (unit) {
    case Unit::times_gamma: return value * gamma;
    case Unit::over_gamma: return value / gamma;
    case Unit::absolute: break;
    }
    return value;
}

GammaScaled parse_gamma_scaled(const std::string& text)
{
    const auto split = [&](const std::string& suffix) {
        return text.size() > suffix.size() && text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (split("xgamma")) return {parse_number(text.substr(0, text.size() - 6)), GammaScaled::Unit::times_gamma};
    if (split("/gamma")) return {parse_number(text.substr(0, text.size() - 6)), GammaScaled::Unit::over_gamma};
    return {parse_number(text), GammaScaled::Unit::absolute};
}

std::string to_string(const GammaScaled& v)
{
    switch (v.unit) {
    case GammaScaled::Unit::times_gamma: return shortest(v.value) + "xgamma";
    case GammaScaled::Unit::over_gamma: return shortest(v.value) + "/gamma";
    case GammaScaled::Unit::absolute: break;
    }
    return shortest(v.value);
}

ModelParams RunConfig::model() const
{
    ModelParams p;
    p.lambda = lambda;
    p.kappa_c = kappa_c;
    p.k_c = k_c;
    p.omega_a = k_c;
    p.n_max = n_max;
    return p;
}

scattering::InputPacket RunConfig::packet() const
{
    return {kappa_in.resolve(gamma_sp(model())), k_c};
}

double RunConfig::t_final_value() const
{
    if (t_final.unit == GammaScaled::Unit::absolute) return t_final.value;
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("t_final relative to gamma_sp needs lambda > 0");
    }
    return t_final.resolve(gamma_sp(model()));
}

void RunConfig::validate() const
{
    model().validate(true);
    require_positive(kappa_in.value, "kappa_in");
    if (kappa_in.unit == GammaScaled::Unit::over_gamma) {
        throw std::invalid_argument("kappa_in takes a value or a multiple of gamma ('2xgamma')");
    }
    if (kappa_in.unit == GammaScaled::Unit::times_gamma && !(lambda > 0.0)) {
        throw std::invalid_argument("kappa_in relative to gamma_sp needs lambda > 0");
    }
    require_positive(window, "window");
    if (points < 16) throw std::invalid_argument("points must be at least 16");
    require_positive(norm_tolerance, "norm tolerance");
    if (format != "csv" && format != "json") throw std::invalid_argument("format must be csv or json");
    if (!(omega_max >= omega_min) || omega_points < 1) throw std::invalid_argument("empty omega line");
    if (omega_imag < 0.0) throw std::invalid_argument("omega imaginary part must be non-negative");
    if (oracle_modes < 64) throw std::invalid_argument("oracle needs at least 64 modes");
    require_positive(oracle_window, "oracle window");
    require_positive(t_final.value, "t_final");
    if (t_final.unit == GammaScaled::Unit::times_gamma) {
        throw std::invalid_argument("t_final takes a value or a multiple of 1/gamma ('50/gamma')");
    }
    require_positive(oracle_tol, "oracle tolerance");
    require_positive(oracle_threshold, "oracle threshold");
    require_positive(compare_window, "compare window");
    if (compare_points < 2) throw std::invalid_argument("compare points must be at least 2");
    // Physical momenta are positive; every grid the CLI touches stays on k > 0.
    const double reach = std::max({window, oracle_window, compare_window,
                                   std::abs(omega_min), std::abs(omega_max)});
    if (k_c - reach <= 0.0) {
        throw std::invalid_argument("k_c must exceed every sampling window so that k > 0");
    }
}

nlohmann::json to_json(const RunConfig& cfg)
{
    return {
        {"lambda", cfg.lambda},
        {"kappa_c", cfg.kappa_c},
        {"k_c", cfg.k_c},
        {"n_max", cfg.n_max},
        {"kappa_in", gamma_json(cfg.kappa_in)},
        {"window", cfg.window},
        {"points", cfg.points},
        {"subset", scattering::to_string(cfg.subset)},
        {"norm_tolerance", cfg.norm_tolerance},
        {"out", cfg.out},
        {"format", cfg.format},
        {"omega_min", cfg.omega_min},
        {"omega_max", cfg.omega_max},
        {"omega_points", cfg.omega_points},
        {"omega_imag", cfg.omega_imag},
        {"oracle_modes", cfg.oracle_modes},
        {"oracle_window", cfg.oracle_window},
        {"t_final", gamma_json(cfg.t_final)},
        {"oracle_tol", cfg.oracle_tol},
        {"oracle_threshold", cfg.oracle_threshold},
        {"compare_window", cfg.compare_window},
        {"compare_points", cfg.compare_points},
        {"oracle_grid", oracle::to_string(cfg.oracle_grid)},
        {"strict", cfg.strict},
    };
}

void apply_json(RunConfig& cfg, const nlohmann::json& j)
{
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
        try {
            if (key == "lambda") cfg.lambda = v.get<double>();
            else if (key == "kappa_c") cfg.kappa_c = v.get<double>();
            else if (key == "k_c") cfg.k_c = v.get<double>();
            else if (key == "n_max") cfg.n_max = v.get<int>();
            else if (key == "kappa_in") cfg.kappa_in = gamma_from_json(v);
            else if (key == "window") cfg.window = v.get<double>();
            else if (key == "points") cfg.points = v.get<int>();
            else if (key == "subset") cfg.subset = scattering::parse_subset(v.get<std::string>());
            else if (key == "norm_tolerance") cfg.norm_tolerance = v.get<double>();
            else if (key == "out") cfg.out = v.get<std::string>();
            else if (key == "format") cfg.format = v.get<std::string>();
            else if (key == "omega_min") cfg.omega_min = v.get<double>();
            else if (key == "omega_max") cfg.omega_max = v.get<double>();
            else if (key == "omega_points") cfg.omega_points = v.get<int>();
            else if (key == "omega_imag") cfg.omega_imag = v.get<double>();
            else if (key == "oracle_modes") cfg.oracle_modes = v.get<int>();
            else if (key == "oracle_window") cfg.oracle_window = v.get<double>();
            else if (key == "t_final") cfg.t_final = gamma_from_json(v);
            else if (key == "oracle_tol") cfg.oracle_tol = v.get<double>();
            else if (key == "oracle_threshold") cfg.oracle_threshold = v.get<double>();
            else if (key == "compare_window") cfg.compare_window = v.get<double>();
            else if (key == "compare_points") cfg.compare_points = v.get<int>();
            else if (key == "oracle_grid") cfg.oracle_grid = oracle::parse_grid_kind(v.get<std::string>());
            else if (key == "strict") cfg.strict = v.get<bool>();
            else throw std::invalid_argument("unknown config key");
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument("config key '" + key + "': " + e.what());
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config key '" + key + "': " + e.what());
        }
    }
}

RunConfig from_json(const nlohmann::json& j)
{
    RunConfig cfg;
    apply_json(cfg, j);
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return from_json(j);
}

} // namespace jcprop::app
