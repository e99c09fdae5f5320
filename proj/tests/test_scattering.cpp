#include <doctest.h>

#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "jcprop/errors.hpp"
#include "jcprop/scattering.hpp"
#include "support.hpp"

using namespace jcprop;
using namespace jcprop::scattering;
using testsupport::Rng;
using testsupport::rel_err;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ModelParams resonant(double lambda = 0.1, double k_c = 0.0)
{
    ModelParams p;
    p.lambda = lambda;
    p.k_c = k_c;
    p.omega_a = k_c;
    return p;
}

InputPacket packet_at(const ModelParams& p, double gamma_multiple)
{
    return {gamma_multiple * gamma_sp(p), p.k_c};
}

double joint(double a, double b, const InputPacket& pk, const ModelParams& p, Subset s = Subset::all)
{
    return std::norm(two_photon_amplitude(a, b, pk, p, s));
}

// Amplitude rebuilt from the quadrature evaluation of both packet integrals.
cplx amplitude_by_quadrature(double k1, double k2, const InputPacket& pk, const ModelParams& p)
{
    const auto half = [&](double a, double b) {
        const cplx ga = coupling_conj(a, p);
        const cplx pa = phi(1, 1, 1, a, p);
        const cplx i1v = i1(a, b, pk, p, Method::quadrature);
        const cplx i2v = i2(a, b, pk, p, Method::quadrature);
        return ga * pa * pk.amplitude(b) +
               ga * coupling_conj(b, p) * pa * (i1v + p.lambda / (a - p.pole()) * phi(2, 1, 1, a + b, p) * i2v);
    };
    return (half(k1, k2) + half(k2, k1)) / std::sqrt(2.0);
}

} // namespace

TEST_SUITE("scattering")
{
    TEST_CASE("packet is normalized with its pole below the axis")
    {
        using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
        for (double w : {0.01, 0.3, 5.0}) {
            const InputPacket pk{w, 1.7};
            const auto f = [&](double k) { return std::norm(pk.amplitude(k)); };
            const double total = GK::integrate(f, -kInf, pk.centre, 15, 1e-12) + GK::integrate(f, pk.centre, kInf, 15, 1e-12);
            CHECK(std::abs(total - 1.0) < 1e-8);
            CHECK(pk.pole().imag() < 0.0);
        }
        CHECK_THROWS_AS(InputPacket({0.0, 0.0}).validate(), std::invalid_argument);
    }

    TEST_CASE("reference amplitude for a matched packet at lambda 0.1")
    {
        // Independent evaluation of the same closed form in double precision.
        const ModelParams p = resonant();
        const InputPacket pk = packet_at(p, 1.0);
        const cplx c = two_photon_amplitude(0.3, -0.2, pk, p);
        CHECK(rel_err(c, cplx(0.4592565099927034, -1.0389259578169932)) < 1e-12);
        CHECK(rel_err(i1(0.3, -0.2, pk, p), cplx(-0.43105704793141536, 3.276809710199189)) < 1e-12);
        CHECK(rel_err(i2(0.3, -0.2, pk, p), cplx(0.7270954172734759, 0.4613518958692988)) < 1e-12);
    }

    TEST_CASE("exchange symmetry is exact")
    {
        Rng rng(41);
        const ModelParams p = resonant();
        const InputPacket pk = packet_at(p, 0.5);
        for (int i = 0; i < 100; ++i) {
            const double a = rng.uniform(-3.0, 3.0);
            const double b = rng.uniform(-3.0, 3.0);
            for (Subset s : {Subset::all, Subset::unlinked, Subset::unlinked_plus_linked1}) {
                CHECK(two_photon_amplitude(a, b, pk, p, s) == two_photon_amplitude(b, a, pk, p, s));
            }
        }
    }

    TEST_CASE("residue and quadrature agree")
    {
        Rng rng(42);
        const ModelParams p = resonant(0.1, 50.0);
        const InputPacket pk = packet_at(p, 1.0);
        for (int i = 0; i < 6; ++i) {
            const double a = p.k_c + rng.uniform(-3.0, 3.0);
            const double b = p.k_c + rng.uniform(-3.0, 3.0);
            CHECK(rel_err(i1(a, b, pk, p, Method::quadrature), i1(a, b, pk, p)) < 1e-5);
            CHECK(rel_err(i2(a, b, pk, p, Method::quadrature), i2(a, b, pk, p)) < 1e-5);
        }
        CHECK(rel_err(amplitude_by_quadrature(50.4, 49.9, pk, p), two_photon_amplitude(50.4, 49.9, pk, p)) < 1e-5);
    }

    TEST_CASE("integrals vanish for very wide packets")
    {
        const ModelParams p = resonant();
        double prev1 = kInf;
        double prev2 = kInf;
        for (double w : {1e2, 1e4, 1e6}) {
            const InputPacket pk{w, 0.0};
            const double a1 = std::abs(i1(0.2, 0.1, pk, p));
            const double a2 = std::abs(i2(0.2, 0.1, pk, p));
            CHECK(a1 < prev1);
            CHECK(a2 < prev2);
            prev1 = a1;
            prev2 = a2;
        }
        CHECK(prev1 < 1e-2);
        CHECK(prev2 < 1e-2);
    }

    TEST_CASE("first integral is finite on the real plane")
    {
        const ModelParams p = resonant();
        const InputPacket pk = packet_at(p, 1.0);
        for (int i = 0; i < 100; ++i) {
            for (int j = 0; j < 100; ++j) {
                const cplx v = i1(-3.0 + 0.06 * i, -3.0 + 0.06 * j, pk, p);
                REQUIRE(std::isfinite(v.real()));
                REQUIRE(std::isfinite(v.imag()));
            }
        }
    }

    TEST_CASE("second integral depends on the total momentum only")
    {
        const ModelParams p = resonant();
        const InputPacket pk = packet_at(p, 2.0);
        CHECK(i2(0.7, -0.1, pk, p) == i2(-0.1, 0.7, pk, p));
        CHECK(rel_err(i2(0.7, -0.1, pk, p), i2(0.2, 0.4, pk, p)) < 1e-13);
    }

    TEST_CASE("merged poles fall back to quadrature")
    {
        const ModelParams p = resonant(0.1, 30.0);
        const InputPacket pk{p.kappa_c, p.k_c};
        CHECK_THROWS_AS(i1(30.1, 29.8, pk, p), DegeneratePoleError);
        CHECK_THROWS_AS(i2(30.1, 29.8, pk, p), DegeneratePoleError);
        const cplx c = two_photon_amplitude(30.1, 29.8, pk, p);
        // Nudging the packet width off the degenerate point changes C smoothly.
        const InputPacket near{p.kappa_c * (1.0 + 1e-5), p.k_c};
        CHECK(rel_err(c, two_photon_amplitude(30.1, 29.8, near, p)) < 1e-4);
    }

    TEST_CASE("global coupling phase leaves the joint spectrum unchanged")
    {
        Rng rng(43);
        ModelParams p = resonant();
        ModelParams q = p;
        q.coupling_phase = 1.234;
        const InputPacket pk = packet_at(p, 1.0);
        for (int i = 0; i < 50; ++i) {
            const double a = rng.uniform(-2.0, 2.0);
            const double b = rng.uniform(-2.0, 2.0);
            const double x = joint(a, b, pk, p);
            CHECK(std::abs(joint(a, b, pk, q) - x) <= 1e-13 * x);
        }
    }

    TEST_CASE("unlinked subset is the product of emission and packet")
    {
        const ModelParams p = resonant();
        const InputPacket pk = packet_at(p, 1.0);
        const double a = 0.4;
        const double b = -0.7;
        const auto term = [&](double x, double y) { return coupling_conj(x, p) * phi(1, 1, 1, x, p) * pk.amplitude(y); };
        const cplx expect = (term(a, b) + term(b, a)) / std::sqrt(2.0);
        CHECK(rel_err(two_photon_amplitude(a, b, pk, p, Subset::unlinked), expect) < 1e-15);
    }

    TEST_CASE("subset names")
    {
        for (Subset s : {Subset::all, Subset::unlinked, Subset::unlinked_plus_linked1}) {
            CHECK(parse_subset(to_string(s)) == s);
        }
        CHECK_THROWS_AS(parse_subset("linked"), std::invalid_argument);
    }

    TEST_CASE("detuned atom is rejected")
    {
        ModelParams p = resonant();
        p.omega_a = 0.2;
        CHECK_THROWS_AS(two_photon_amplitude(0.1, 0.1, packet_at(resonant(), 1.0), p), std::invalid_argument);
    }

    TEST_CASE("the whole-plane norm is one")
    {
        const ModelParams p = resonant(0.1, 20.0);
        for (double f : {10.0, 0.1}) {
            CHECK(std::abs(full_plane_norm(packet_at(p, f), p) - 1.0) < 1e-3);
        }
    }

    TEST_CASE("grid invariants")
    {
        const ModelParams p = resonant(0.1, 10.0);
        const InputPacket pk = packet_at(p, 1.0);
        const auto g = joint_spectrum_grid(3.0, 41, pk, p);
        CHECK(g.k1_axis.size() == 41);
        CHECK(g.values.minCoeff() >= 0.0);
        for (Eigen::Index i = 0; i < 41; ++i) {
            CHECK(g.k1_axis(i) - p.k_c == doctest::Approx(-(g.k1_axis(40 - i) - p.k_c)).epsilon(1e-12));
        }
        CHECK(g.integrated_norm > 0.0);
        CHECK(g.integrated_norm <= 1.05);
        CHECK(g.values(7, 29) == joint(g.k1_axis(7), g.k2_axis(29), pk, p));
        CHECK(g.values(7, 29) == g.values(29, 7));
        const auto again = joint_spectrum_grid(3.0, 41, pk, p);
        CHECK((again.values.array() == g.values.array()).all());
        CHECK_THROWS_AS(joint_spectrum_grid(3.0, 8, pk, p), std::invalid_argument);
        CHECK_THROWS_AS(joint_spectrum_grid(0.0, 32, pk, p), std::invalid_argument);
    }

    TEST_CASE("matched packet: central dip with nearby diagonal peaks")
    {
        const ModelParams p = resonant();
        const double gsp = gamma_sp(p);
        const InputPacket pk = packet_at(p, 1.0);
        const auto diag = [&](double d) { return joint(d, d, pk, p); };
        const double h = 0.01 * gsp;
        CHECK(diag(0.0) < diag(h));
        CHECK(diag(0.0) < diag(-h));
        // Largest diagonal value on each side of the centre.
        for (double sign : {1.0, -1.0}) {
            double best = 0.0;
            double where = 0.0;
            for (int i = 1; i <= 400; ++i) {
                const double d = sign * i * h;
                if (diag(d) > best) {
                    best = diag(d);
                    where = std::abs(d);
                }
            }
            CHECK(where >= 0.5 * gsp);
            CHECK(where <= 2.0 * gsp);
            CHECK(diag(sign * where) > diag(sign * (where - h)));
            CHECK(diag(sign * where) > diag(sign * (where + h)));
        }
    }

    TEST_CASE("wide and narrow packets give a cross without a central dip")
    {
        const ModelParams p = resonant();
        const double gsp = gamma_sp(p);
        for (double f : {10.0, 0.1}) {
            const InputPacket pk = packet_at(p, f);
            const double h = 0.01 * std::min(pk.kappa_in, gsp);
            CHECK(joint(0.0, 0.0, pk, p) > joint(h, h, pk, p));
            CHECK(joint(0.0, 0.0, pk, p) > joint(-h, -h, pk, p));
            const double r = 3.0 * std::max(pk.kappa_in, gsp);
            CHECK(joint(r, 0.0, pk, p) > joint(r / std::sqrt(2.0), r / std::sqrt(2.0), pk, p));
        }
        // The matched packet is not a cross by the same measure.
        const InputPacket pk = packet_at(p, 1.0);
        const double r = 3.0 * gsp;
        CHECK(joint(r, 0.0, pk, p) < joint(r / std::sqrt(2.0), r / std::sqrt(2.0), pk, p));
    }
}
