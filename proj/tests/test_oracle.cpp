#include <doctest.h>

#include <numbers>

#include "jcprop/chebyshev.hpp"
#include "jcprop/oracle.hpp"
#include "support.hpp"

using namespace jcprop;
using namespace jcprop::oracle;
using testsupport::Rng;

namespace {

ModelParams resonant(double lambda = 0.1, double k_c = 0.0)
{
    ModelParams p;
    p.lambda = lambda;
    p.k_c = k_c;
    p.omega_a = k_c;
    return p;
}

SectorState random_state(const DiscretizedModel& m, Rng& rng)
{
    SectorState s = zero_state(m);
    for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i) {
        s.amplitudes(i) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    }
    s.amplitudes.normalize();
    return s;
}

// Atom amplitude of the one-excitation sector from the two-pole decomposition.
cplx decay_amplitude(const ModelParams& p, double t)
{
    const auto pd = pole_decomposition(1, p);
    const cplx i{0.0, 1.0};
    return pd.a_plus * std::exp(-i * pd.omega_plus * t) + pd.a_minus * std::exp(-i * pd.omega_minus * t);
}

} // namespace

TEST_SUITE("oracle")
{
    TEST_CASE("build validation")
    {
        const ModelParams p = resonant();
        CHECK_THROWS_AS(build(p, 63, 40.0), std::invalid_argument);
        CHECK_THROWS_AS(build(p, 128, 9.0), std::invalid_argument);
        CHECK_NOTHROW(build(resonant(0.0), 64, 10.0));
        CHECK(parse_grid_kind(to_string(GridKind::uniform)) == GridKind::uniform);
        CHECK(parse_grid_kind(to_string(GridKind::tangent)) == GridKind::tangent);
        CHECK_THROWS_AS(parse_grid_kind("log"), std::invalid_argument);
    }

    TEST_CASE("cells tile the window and carry the full coupling weight")
    {
        const ModelParams p = resonant(0.1, 5.0);
        for (GridKind kind : {GridKind::uniform, GridKind::tangent}) {
            const auto m = build(p, 257, 40.0, kind);
            REQUIRE(m.edges.size() == m.modes() + 1);
            CHECK(m.edges(0) == doctest::Approx(p.k_c - 40.0).epsilon(1e-12));
            CHECK(m.edges(m.modes()) == doctest::Approx(p.k_c + 40.0).epsilon(1e-12));
            for (Eigen::Index j = 0; j < m.modes(); ++j) {
                CHECK(m.k(j) >= m.edges(j));
                CHECK(m.k(j) <= m.edges(j + 1));
                CHECK(m.width(j) > 0.0);
            }
            CHECK(std::abs(m.g.squaredNorm() / p.lambda - 1.0) < 1e-12);
            CHECK(m.pair_count() == static_cast<std::size_t>(m.modes() * (m.modes() + 1) / 2));
        }
        // Tangent cells are finest at the resonance.
        const auto t = build(p, 257, 40.0, GridKind::tangent);
        CHECK(t.width(128) < 0.2 * t.width(0));
    }

    TEST_CASE("pair indexing is a bijection onto the packed triangle")
    {
        const auto m = build(resonant(), 64, 40.0);
        std::vector<int> seen(m.pair_count(), 0);
        for (Eigen::Index j = 0; j < m.modes(); ++j) {
            for (Eigen::Index l = j; l < m.modes(); ++l) {
                REQUIRE(m.pair_index(j, l) < m.pair_count());
                ++seen[m.pair_index(j, l)];
                CHECK(m.pair_index(l, j) == m.pair_index(j, l));
            }
        }
        CHECK(std::all_of(seen.begin(), seen.end(), [](int n) { return n == 1; }));
    }

    TEST_CASE("Bessel weights satisfy the sum rule and match the library")
    {
        for (double x : {0.0, 0.5, 7.0, 120.0}) {
            const auto j = chebyshev::bessel_sequence(x, 1e-16);
            double sum = j[0] * j[0];
            for (std::size_t n = 1; n < j.size(); ++n) sum += 2.0 * j[n] * j[n];
            CHECK(std::abs(sum - 1.0) < 1e-12);
            for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{5}}) {
                if (n < j.size()) {
                    CHECK(std::abs(j[n] - std::cyl_bessel_j(static_cast<double>(n), x)) < 1e-12);
                }
            }
        }
    }

    TEST_CASE("Hamiltonian is Hermitian")
    {
        Rng rng(51);
        const auto m = build(resonant(), 64, 40.0);
        for (int trial = 0; trial < 5; ++trial) {
            const SectorState u = random_state(m, rng);
            const SectorState v = random_state(m, rng);
            const cplx uhv = u.amplitudes.dot(apply_hamiltonian(m, v).amplitudes);
            const cplx vhu = v.amplitudes.dot(apply_hamiltonian(m, u).amplitudes);
            CHECK(std::abs(uhv - std::conj(vhu)) <= 1e-12 * std::abs(uhv));
        }
    }

    TEST_CASE("one atom-photon state couples only to its own pairs")
    {
        // b_j sigma+ a_j^dag |0> is sent to omega_A + k_j times itself plus
        // g_l^* b_j |jl> (l != j) and sqrt(2) g_j^* b_j |jj>.
        const ModelParams p = resonant(0.1, 2.0);
        const auto m = build(p, 64, 40.0);
        const Eigen::Index j = 20;
        SectorState s = zero_state(m);
        s.amplitudes(j) = 1.0;
        const SectorState h = apply_hamiltonian(m, s);
        for (Eigen::Index i = 0; i < m.modes(); ++i) {
            const cplx expect = i == j ? cplx(p.omega_a + m.k(j)) : cplx(0.0);
            CHECK(std::abs(h.amplitudes(i) - expect) <= 1e-12);
        }
        for (Eigen::Index a = 0; a < m.modes(); ++a) {
            for (Eigen::Index b = a; b < m.modes(); ++b) {
                const cplx x = h.amplitudes(m.modes() + static_cast<Eigen::Index>(m.pair_index(a, b)));
                cplx expect = 0.0;
                if (a == j && b == j) {
                    expect = std::sqrt(2.0) * std::conj(m.g(j));
                } else if (a == j || b == j) {
                    expect = std::conj(m.g(a == j ? b : a));
                }
                CHECK(std::abs(x - expect) <= 1e-12);
            }
        }
    }

    TEST_CASE("one photon pair couples back only to its own modes")
    {
        const ModelParams p = resonant(0.1, 2.0);
        const auto m = build(p, 64, 40.0);
        for (auto [j, l] : {std::pair<Eigen::Index, Eigen::Index>{10, 33}, {17, 17}}) {
            SectorState s = zero_state(m);
            s.amplitudes(m.modes() + static_cast<Eigen::Index>(m.pair_index(j, l))) = 1.0;
            const SectorState h = apply_hamiltonian(m, s);
            for (Eigen::Index i = 0; i < m.modes(); ++i) {
                cplx expect = 0.0;
                if (j == l && i == j) {
                    expect = std::sqrt(2.0) * m.g(j);
                } else if (i == j) {
                    expect = m.g(l);
                } else if (i == l) {
                    expect = m.g(j);
                }
                CHECK(std::abs(h.amplitudes(i) - expect) <= 1e-12);
            }
            const cplx diag = h.amplitudes(m.modes() + static_cast<Eigen::Index>(m.pair_index(j, l)));
            CHECK(std::abs(diag - (m.k(j) + m.k(l))) <= 1e-12);
        }
    }

    TEST_CASE("free evolution without coupling is a phase per mode")
    {
        const ModelParams p = resonant(0.0, 3.0);
        const auto m = build(p, 96, 30.0);
        Rng rng(52);
        const SectorState s0 = random_state(m, rng);
        const double t = 37.5;
        const SectorState s = evolve(m, s0, t, 1e-12);
        const cplx i{0.0, 1.0};
        for (Eigen::Index j = 0; j < m.modes(); ++j) {
            const cplx expect = s0.amplitudes(j) * std::exp(-i * (p.omega_a + m.k(j)) * t);
            CHECK(std::abs(s.amplitudes(j) - expect) <= 1e-10 * s0.norm());
        }
        const cplx x0 = s0.amplitudes(m.modes() + static_cast<Eigen::Index>(m.pair_index(4, 70)));
        const cplx x = s.amplitudes(m.modes() + static_cast<Eigen::Index>(m.pair_index(4, 70)));
        CHECK(std::abs(x - x0 * std::exp(-i * (m.k(4) + m.k(70)) * t)) <= 1e-10 * s0.norm());
    }

    TEST_CASE("evolution preserves the norm")
    {
        const ModelParams p = resonant(0.1, 0.0);
        const auto m = build(p, 120, 40.0);
        const scattering::InputPacket pk{gamma_sp(p), p.k_c};
        EvolveStats stats;
        const SectorState s = evolve(m, initial_state(m, pk), 40.0 / gamma_sp(p), 1e-10, &stats);
        CHECK(std::abs(s.norm() - 1.0) <= 1e-8);
        CHECK(stats.norm_drift <= 1e-8);
        CHECK(stats.matvecs > 0);
    }

    TEST_CASE("spontaneous decay follows the two-pole amplitude")
    {
        const ModelParams p = resonant();
        const double gsp = gamma_sp(p);
        const auto m = build(p, 800, 40.0);
        SingleExcitationState s = excited_atom(m);
        CHECK(s.atom == cplx(1.0));
        double t = 0.0;
        std::vector<std::pair<double, double>> samples;
        for (double tg : {2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0}) {
            const double next = tg / gsp;
            s = evolve(m, s, next - t);
            t = next;
            CHECK(std::abs(s.atom - decay_amplitude(p, t)) < 1e-4);
            CHECK(std::abs(std::norm(s.atom) + s.photons.squaredNorm() - 1.0) < 1e-8);
            samples.emplace_back(t, std::log(std::norm(s.atom)));
        }
        // Least-squares slope of log|a|^2: the population rate is twice the amplitude rate.
        double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
        for (const auto& [x, y] : samples) {
            st += x;
            sy += y;
            stt += x * x;
            sty += x * y;
        }
        const double n = static_cast<double>(samples.size());
        const double slope = (n * sty - st * sy) / (n * stt - st * st);
        CHECK(std::abs(-slope / (2.0 * gsp) - 1.0) < 0.05);
    }

    TEST_CASE("packet state is normalized and needs a wide enough window")
    {
        const ModelParams p = resonant(0.1, 0.0);
        const auto m = build(p, 200, 40.0);
        const auto s = initial_state(m, {gamma_sp(p), 0.0});
        CHECK(std::abs(s.norm() - 1.0) < 1e-14);
        CHECK(s.amplitudes.tail(static_cast<Eigen::Index>(m.pair_count())).norm() == 0.0);
        CHECK_THROWS_AS(initial_state(m, {5.0, 0.0}), std::invalid_argument);
    }

    TEST_CASE("pair density is symmetric")
    {
        Rng rng(53);
        const auto m = build(resonant(), 64, 40.0);
        SectorState s = random_state(m, rng);
        for (int i = 0; i < 20; ++i) {
            const double a = rng.uniform(-3.0, 3.0);
            const double b = rng.uniform(-3.0, 3.0);
            CHECK(pair_density(m, s, a, b) == doctest::Approx(pair_density(m, s, b, a)).epsilon(1e-14));
        }
    }

    TEST_CASE("scattered pair density matches the analytic joint spectrum")
    {
        const ModelParams p = resonant(0.1, 0.0);
        const double gsp = gamma_sp(p);
        const scattering::InputPacket pk{gsp, p.k_c};
        const CompareGrid grid{1.0, 41};
        const auto coarse = compare_joint_spectrum(build(p, 150, 40.0), pk, 30.0 / gsp, grid);
        const auto fine = compare_joint_spectrum(build(p, 300, 40.0), pk, 30.0 / gsp, grid);
        CHECK(fine.l2_rel_error < 0.05);
        CHECK(fine.l2_rel_error < coarse.l2_rel_error);
        CHECK(fine.residual_b_norm < 1e-3);
        CHECK(fine.norm_drift <= 1e-8);
        CHECK(std::abs(fine.coupling_sum_ratio - 1.0) < 1e-12);
        CHECK_THROWS_AS(compare_joint_spectrum(build(p, 150, 40.0), pk, 10.0 / gsp, grid), std::invalid_argument);
    }
}
