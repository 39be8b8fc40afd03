#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "nskfv/state.hpp"

using namespace nskfv;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("parameter validation") {
    ModelParams p;
    CHECK_NOTHROW(p.validate());
    p.gamma = 1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p.gamma = 2.0;
    p.kappa = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p.kappa = 1e-3;
    p.mu = -0.1;
    CHECK_THROWS_AS(p.validate(), ConfigError);

    ModelParams q;
    CHECK(q.ek_mode());
    q.mu = q.eta = 0.01;
    CHECK(q.nsk_mode());
}

TEST_CASE("pressure law and potential") {
    ModelParams p;  // k=1, gamma=2
    CHECK(pressure(0.0, p) == 0.0);
    CHECK(pressure_potential(0.0, p) == 0.0);
    CHECK(pressure(3.0, p) == doctest::Approx(9.0).epsilon(1e-15));
    CHECK(pressure_potential(3.0, p) == doctest::Approx(9.0).epsilon(1e-15));
    CHECK_THROWS_AS(pressure(-1.0, p), ConfigError);
    CHECK_THROWS_AS(pressure_potential(-0.5, p), ConfigError);

    // rho P'(rho) = p(rho) + P(rho), with P' by central differences
    ModelParams q;
    q.k = 2.0;
    q.gamma = 1.4;
    const double rho = 1.7;
    const double eps = 1e-6;
    const double Pp =
        (pressure_potential(rho + eps, q) - pressure_potential(rho - eps, q)) / (2.0 * eps);
    CHECK(rho * Pp - pressure(rho, q) - pressure_potential(rho, q) ==
          doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("eta_tilde extended values") {
    ModelParams p;
    CHECK(eta_tilde(0.0, 0.0, 0.0, p) == 0.0);
    CHECK(std::isinf(eta_tilde(-1.0, 0.3, 0.0, p)));
    CHECK(std::isinf(eta_tilde(0.0, 0.1, 0.0, p)));
    CHECK(eta_tilde(2.0, 2.0, 0.0, p) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("eta_tilde is convex for positive density") {
    ModelParams p;
    p.k = 1.3;
    p.gamma = 1.6;
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> rho_d(0.1, 3.0), m_d(-2.0, 2.0), th_d(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const double r1 = rho_d(rng), r2 = rho_d(rng);
        const double a1 = m_d(rng), b1 = m_d(rng), a2 = m_d(rng), b2 = m_d(rng);
        const double th = th_d(rng);
        const double mix = eta_tilde(th * r1 + (1 - th) * r2, th * a1 + (1 - th) * a2,
                                     th * b1 + (1 - th) * b2, p);
        const double bound = th * eta_tilde(r1, a1, b1, p) + (1 - th) * eta_tilde(r2, a2, b2, p);
        CHECK(mix <= bound + 1e-12 * (1.0 + std::abs(bound)));
    }
}

TEST_CASE("discrete energy") {
    ModelParams p;

    SUBCASE("constant unit state on the unit torus") {
        GridSpec g(1.0, 1.0, 8, 8);
        FluidState s(g);
        s.rho = ScalarField(g, 1.0);
        CHECK(discrete_energy(s, p) == doctest::Approx(1.0).epsilon(1e-14));
    }

    SUBCASE("zeroing momentum removes exactly the kinetic sum") {
        GridSpec g(1.0, 1.0, 8, 8);
        FluidState s(g);
        std::mt19937 rng(17);
        std::uniform_real_distribution<double> rd(0.5, 2.0), md(-1.0, 1.0);
        for (int j = 0; j < 8; ++j)
            for (int i = 0; i < 8; ++i) {
                s.rho.at(i, j) = rd(rng);
                s.m.x.at(i, j) = md(rng);
                s.m.y.at(i, j) = md(rng);
            }
        double kinetic = 0.0;
        for (int j = 0; j < 8; ++j)
            for (int i = 0; i < 8; ++i)
                kinetic += (s.m.x(i, j) * s.m.x(i, j) + s.m.y(i, j) * s.m.y(i, j)) /
                           (2.0 * s.rho(i, j));
        kinetic *= g.cell_area();
        FluidState rest = s;
        rest.m = VectorField(g);
        CHECK(discrete_energy(s, p) - discrete_energy(rest, p) ==
              doctest::Approx(kinetic).epsilon(1e-13));
    }

    SUBCASE("brute-force re-summation oracle") {
        GridSpec g(1.0, 1.0, 64, 64);
        ModelParams q;
        q.kappa = 1e-2;
        FluidState s(g);
        for (int j = 0; j < 64; ++j)
            for (int i = 0; i < 64; ++i)
                s.rho.at(i, j) = 1.0 + 0.5 * std::cos(2.0 * kPi * i / 64.0);
        double sum = 0.0;
        for (int j = 0; j < 64; ++j)
            for (int i = 0; i < 64; ++i) {
                const double gx = (s.rho(i + 1, j) - s.rho(i, j)) / g.hx();
                const double gy = (s.rho(i, j + 1) - s.rho(i, j)) / g.hy();
                sum += pressure_potential(s.rho(i, j), q) +
                       0.5 * q.kappa * (gx * gx + gy * gy);
            }
        CHECK(discrete_energy(s, q) == doctest::Approx(g.cell_area() * sum).epsilon(1e-13));
    }

    SUBCASE("translation invariance") {
        GridSpec g(1.0, 1.0, 8, 8);
        FluidState s(g);
        std::mt19937 rng(23);
        std::uniform_real_distribution<double> rd(0.5, 2.0);
        for (double& v : s.rho.data()) v = rd(rng);
        for (double& v : s.m.x.data()) v = rd(rng) - 1.2;
        FluidState shifted(g);
        shifted.rho = shift(s.rho, 3, -2);
        shifted.m.x = shift(s.m.x, 3, -2);
        shifted.m.y = shift(s.m.y, 3, -2);
        CHECK(discrete_energy(shifted, p) ==
              doctest::Approx(discrete_energy(s, p)).epsilon(1e-13));
    }

    SUBCASE("vacuum with momentum is infinite") {
        GridSpec g(1.0, 1.0, 4, 4);
        FluidState s(g);
        s.m.x.at(0, 0) = 1.0;
        CHECK(std::isinf(discrete_energy(s, p)));
    }
}

TEST_CASE("velocity and vacuum detection") {
    ModelParams p;
    GridSpec g(1.0, 1.0, 4, 4);

    FluidState s(g);
    s.rho = ScalarField(g, 2.0);
    s.m.x = ScalarField(g, 4.0);
    s.m.y = ScalarField(g, -2.0);
    const VectorField u = velocity(s, p);
    CHECK(u.x(1, 2) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(u.y(1, 2) == doctest::Approx(-1.0).epsilon(1e-15));

    FluidState z(g);
    z.rho = ScalarField(g, 1.0);
    CHECK(max_abs(velocity(z, p).x) == 0.0);

    ModelParams floor8 = p;
    floor8.rho_floor = 1e-8;
    FluidState bad(g);
    bad.rho = ScalarField(g, 1.0);
    bad.rho.at(2, 3) = 1e-9;
    try {
        velocity(bad, floor8);
        FAIL("expected vacuum breakdown");
    } catch (const VacuumBreakdown& e) {
        CHECK(e.i == 2);
        CHECK(e.j == 3);
    }
}
