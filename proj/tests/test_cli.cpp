#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include <json.hpp>

#include "config.hpp"
#include "selftest.hpp"

using namespace jcprop::app;
namespace fs = std::filesystem;

namespace {

struct Scratch {
    fs::path dir;
    Scratch()
    {
        dir = fs::temp_directory_path() / ("jcprop_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

// Runs the CLI with stdout to `out_file` and stderr discarded; returns the exit status.
int run(const std::string& args, const std::string& out_file = "/dev/null")
{
    const std::string cmd = std::string(JCPROP_CLI_PATH) + " " + args + " >" + out_file + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    if (!line.empty() && line.back() == sep) parts.emplace_back();
    return parts;
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("gamma-scaled quantities")
    {
        CHECK(parse_gamma_scaled("2xgamma") == GammaScaled{2.0, GammaScaled::Unit::times_gamma});
        CHECK(parse_gamma_scaled("50/gamma") == GammaScaled{50.0, GammaScaled::Unit::over_gamma});
        CHECK(parse_gamma_scaled("0.3") == GammaScaled{0.3, GammaScaled::Unit::absolute});
        CHECK(parse_gamma_scaled("2xgamma").resolve(0.5) == 1.0);
        CHECK(parse_gamma_scaled("50/gamma").resolve(0.5) == 100.0);
        for (const char* text : {"0.1xgamma", "30/gamma", "1.25"}) {
            CHECK(to_string(parse_gamma_scaled(text)) == text);
        }
        for (const char* bad : {"", "xgamma", "2ygamma", "abc", "1/gam"}) {
            CHECK_THROWS_AS(parse_gamma_scaled(bad), std::invalid_argument);
        }
    }

    TEST_CASE("config round trip and validation")
    {
        RunConfig cfg;
        cfg.lambda = 0.07;
        cfg.kappa_in = parse_gamma_scaled("0.5xgamma");
        cfg.points = 64;
        cfg.subset = jcprop::scattering::Subset::unlinked;
        cfg.t_final = parse_gamma_scaled("40/gamma");
        cfg.oracle_grid = jcprop::oracle::GridKind::uniform;
        CHECK(from_json(to_json(cfg)) == cfg);

        nlohmann::json j = to_json(cfg);
        j["no_such_key"] = 1;
        CHECK_THROWS_AS(from_json(j), std::invalid_argument);

        RunConfig bad;
        bad.window = bad.k_c;
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        bad = RunConfig{};
        bad.points = 4;
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        CHECK_NOTHROW(RunConfig{}.validate());
    }

    TEST_CASE("selftest passes and catches a flipped self-energy")
    {
        jcprop::ModelParams p;
        p.lambda = 0.1;
        p.k_c = 40.0;
        p.omega_a = 40.0;
        SelftestOptions opt;
        opt.quadrature_samples = 2;
        const auto good = run_selftest(p, opt);
        CHECK(good.passed());
        opt.mutate_zeta_sign = true;
        const auto bad = run_selftest(p, opt);
        CHECK_FALSE(bad.passed());
        bool flagged = false;
        for (const auto& g : bad.groups) {
            if (g.name == "generic vs closed form") flagged = !g.passed;
        }
        CHECK(flagged);
        REQUIRE_FALSE(good.sequence_counts.empty());
        CHECK(good.sequence_counts.front().count > 0);
    }

    TEST_CASE("exit codes")
    {
        Scratch tmp;
        CHECK(run("config") == 0);
        CHECK(run("config --lambda -1") == 1);
        CHECK(run("config --kappa-in 3zgamma") == 1);
        CHECK(run("nosuchcommand") == 1);
        CHECK(run("config --config " + tmp.path("missing.json")) == 3);
        CHECK(run("quasimode --out " + tmp.path("no/such/dir/q.csv")) == 3);
        // A narrow window cannot hold the whole joint spectrum.
        CHECK(run("scatter --window 2 --points 32 --norm-tol 1e-6 --out " + tmp.path("s.csv")) == 2);
        CHECK(run("oracle --t-final 5/gamma") == 1);
    }

    TEST_CASE("config file is overridden by flags")
    {
        Scratch tmp;
        {
            std::ofstream f(tmp.path("c.json"));
            f << R"({"lambda": 0.05, "points": 100})";
        }
        REQUIRE(run("config --config " + tmp.path("c.json") + " --points 80", tmp.path("out.json")) == 0);
        const auto j = nlohmann::json::parse(slurp(tmp.path("out.json")));
        CHECK(j.at("lambda").get<double>() == 0.05);
        CHECK(j.at("points").get<int>() == 80);
    }

    TEST_CASE("quasimode table")
    {
        Scratch tmp;
        REQUIRE(run("quasimode --n-max 2 --omega-points 3 --omega-imag 0.5", tmp.path("q.csv")) == 0);
        std::istringstream in(slurp(tmp.path("q.csv")));
        std::string line;
        std::getline(in, line);
        const auto header = split(line, ',');
        REQUIRE(header.size() == 19);
        CHECK(header[7] == "a_sum_re");
        int rows = 0;
        while (std::getline(in, line)) {
            const auto cells = split(line, ',');
            REQUIRE(cells.size() == 19);
            const int n = std::stoi(cells[0]);
            if (n == 0) {
                CHECK(cells[3].empty());
                const std::complex<double> w(std::stod(cells[1]), std::stod(cells[2]));
                const std::complex<double> phi00(std::stod(cells[15]), std::stod(cells[16]));
                CHECK(std::abs(phi00 - 1.0 / w) < 1e-14 * std::abs(1.0 / w));
            } else {
                CHECK(std::abs(std::stod(cells[7]) - 1.0) < 1e-12);
                CHECK(std::abs(std::stod(cells[8])) < 1e-12);
            }
            ++rows;
        }
        CHECK(rows == 9);

        REQUIRE(run("quasimode --n-max 1 --omega-points 2 --format json", tmp.path("q.json")) == 0);
        const auto j = nlohmann::json::parse(slurp(tmp.path("q.json")));
        CHECK(j.at("rows").size() == 4);
        CHECK(j.at("gamma_sp").get<double>() > 0.0);
    }

    TEST_CASE("scatter grid output is deterministic")
    {
        Scratch tmp;
        const std::string common = "scatter --k-c 50 --window 4 --points 24 --norm-tol 1 --out ";
        REQUIRE(run(common + tmp.path("a.csv")) == 0);
        REQUIRE(run(common + tmp.path("b.csv")) == 0);
        const std::string a = slurp(tmp.path("a.csv"));
        CHECK(a == slurp(tmp.path("b.csv")));
        CHECK(a.find('\r') == std::string::npos);

        std::istringstream in(a);
        std::string line;
        std::getline(in, line);
        auto header = split(line, ',');
        REQUIRE(header.size() == 25);
        CHECK(header[0] == "k1\\k2");
        CHECK(std::stod(header[1]) == doctest::Approx(46.0));
        int rows = 0;
        std::vector<std::vector<double>> values;
        while (std::getline(in, line)) {
            const auto cells = split(line, ',');
            REQUIRE(cells.size() == 25);
            values.emplace_back();
            for (std::size_t c = 1; c < cells.size(); ++c) values.back().push_back(std::stod(cells[c]));
            ++rows;
        }
        REQUIRE(rows == 24);
        CHECK(values[3][17] == values[17][3]);

        const auto meta = nlohmann::json::parse(slurp(tmp.path("a.csv.json")));
        CHECK(meta.at("points").get<int>() == 24);
        CHECK(meta.at("subset").get<std::string>() == "all");
        CHECK(meta.at("integrated_norm").get<double>() > 0.0);
        CHECK(meta.at("config").at("k_c").get<double>() == 50.0);
    }

    TEST_CASE("oracle report")
    {
        Scratch tmp;
        const int code = run("oracle --k-c 50 --oracle-modes 100 --t-final 30/gamma", tmp.path("o.json"));
        CHECK((code == 0 || code == 2));
        const auto j = nlohmann::json::parse(slurp(tmp.path("o.json")));
        CHECK(j.at("passed").get<bool>() == (code == 0));
        CHECK(j.at("l2_rel_error").get<double>() >= 0.0);
        CHECK(j.at("norm_drift").get<double>() <= 1e-8);
        // A threshold nothing can meet forces the numerical-failure exit.
        CHECK(run("oracle --k-c 50 --oracle-modes 64 --t-final 30/gamma --oracle-threshold 1e-12") == 2);
    }
}
