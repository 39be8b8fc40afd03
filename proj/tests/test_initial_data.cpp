#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "nskfv/initial_data.hpp"

using namespace nskfv;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("constant data projects exactly") {
    ModelParams p;
    GridSpec g(2.0, 1.0, 8, 4);
    InitExpr e;
    e.Lx = 2.0;
    e.rho_bar = 1.7;
    const FluidState s = project(e, g, p);
    for (int j = 0; j < g.N; ++j)
        for (int i = 0; i < g.M; ++i) {
            CHECK(s.rho(i, j) == doctest::Approx(1.7).epsilon(1e-15));
            CHECK(s.m.x(i, j) == 0.0);
            CHECK(s.m.y(i, j) == 0.0);
        }
}

TEST_CASE("single x-mode cell averages match the closed form") {
    // rho = 1 + a cos(2 pi x): exact cell average is
    // 1 + a * (sin(pi h)/(pi h)) * cos(2 pi x_i)
    ModelParams p;
    const int M = 32;
    GridSpec g(1.0, 1.0, M, M);
    InitExpr e;
    e.density = InitExpr::Density::PerturbedConstant;
    e.amp = 0.1;
    e.px = 1;
    e.qy = 0;
    const FluidState s = project(e, g, p);
    const double h = 1.0 / M;
    const double sinc = std::sin(kPi * h) / (kPi * h);
    for (int i = 0; i < M; ++i) {
        const double expect = 1.0 + 0.1 * sinc * std::cos(2.0 * kPi * g.xc(i));
        CHECK(s.rho(i, 0) == doctest::Approx(expect).epsilon(1e-10));
        CHECK(s.rho(i, M / 2) == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("analytic gradient matches a finite difference of rho") {
    InitExpr e;
    e.density = InitExpr::Density::Bubble;
    e.bubble_amp = 0.4;
    e.bubble_w = 0.2;
    const double eps = 1e-6;
    for (double x : {0.31, 0.62}) {
        for (double y : {0.44, 0.83}) {
            double gx = 0.0, gy = 0.0;
            e.grad_rho(x, y, gx, gy);
            const double fx = (e.rho(x + eps, y) - e.rho(x - eps, y)) / (2.0 * eps);
            const double fy = (e.rho(x, y + eps) - e.rho(x, y - eps)) / (2.0 * eps);
            CHECK(gx == doctest::Approx(fx).epsilon(1e-7));
            CHECK(gy == doctest::Approx(fy).epsilon(1e-7));
        }
    }
}

TEST_CASE("total mass closed forms") {
    ModelParams p;

    SUBCASE("perturbed constant: oscillation integrates to zero") {
        InitExpr e;
        e.density = InitExpr::Density::PerturbedConstant;
        e.amp = 0.3;
        e.rho_bar = 2.0;
        CHECK(e.total_mass() == doctest::Approx(2.0));
        GridSpec g(1.0, 1.0, 16, 16);
        CHECK(integrate(project(e, g, p).rho) == doctest::Approx(2.0).epsilon(1e-12));
    }

    SUBCASE("bubble: separable Bessel closed form vs fine quadrature") {
        InitExpr e;
        e.density = InitExpr::Density::Bubble;
        e.bubble_amp = 0.5;
        e.bubble_w = 0.3;
        // brute-force midpoint quadrature of rho over the torus
        const int n = 2048;
        double sum = 0.0;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) sum += e.rho((i + 0.5) / n, (j + 0.5) / n);
        CHECK(e.total_mass() == doctest::Approx(sum / (n * n)).epsilon(1e-10));
    }
}

TEST_CASE("momentum averages the product, not the product of averages") {
    ModelParams p;
    GridSpec g(1.0, 1.0, 8, 8);
    InitExpr e;
    e.density = InitExpr::Density::PerturbedConstant;
    e.amp = 0.4;
    e.velocity = InitExpr::Velocity::Shear;
    e.vel_A = 1.0;
    const FluidState s = project(e, g, p);
    double max_gap = 0.0;
    for (int j = 0; j < g.N; ++j)
        for (int i = 0; i < g.M; ++i) {
            const double ubar = e.ux(g.xc(i), g.yc(j));
            max_gap = std::max(max_gap, std::abs(s.m.x(i, j) - s.rho(i, j) * ubar));
        }
    // the gap is O(h^2) but clearly nonzero on a coarse grid
    CHECK(max_gap > 1e-4);
}

TEST_CASE("perturbation is linear in the amplitude") {
    ModelParams p;
    GridSpec g(1.0, 1.0, 16, 16);
    InitExpr e1;
    e1.density = InitExpr::Density::PerturbedConstant;
    e1.amp = 0.1;
    InitExpr e2 = e1;
    e2.amp = 0.2;
    const FluidState s1 = project(e1, g, p);
    const FluidState s2 = project(e2, g, p);
    for (int j = 0; j < g.N; ++j)
        for (int i = 0; i < g.M; ++i)
            CHECK(s2.rho(i, j) - 1.0 ==
                  doctest::Approx(2.0 * (s1.rho(i, j) - 1.0)).epsilon(1e-12));
}

TEST_CASE("validation rejects unusable data") {
    ModelParams p;
    GridSpec g(1.0, 1.0, 8, 8);

    InitExpr big;
    big.density = InitExpr::Density::PerturbedConstant;
    big.amp = 1.0;
    CHECK_THROWS_AS(project(big, g, p), ConfigError);

    InitExpr neg;
    neg.density = InitExpr::Density::Bubble;
    neg.bubble_amp = -2.0;  // rho dips below zero at the bubble center
    try {
        project(neg, g, p);
        CHECK(false);
    } catch (const ConfigError& err) {
        CHECK(std::string(err.what()).find("x=") != std::string::npos);
    }

    InitExpr wrong;
    wrong.Lx = 2.0;  // domain mismatch with the grid
    CHECK_THROWS_AS(project(wrong, g, p), ConfigError);
}

TEST_CASE("continuous energy of constant data is the potential alone") {
    ModelParams p;
    p.k = 1.5;
    p.gamma = 2.0;
    InitExpr e;
    e.rho_bar = 1.3;
    // P(rho) = k rho^gamma / (gamma - 1)
    const double expect = 1.5 * 1.3 * 1.3 / 1.0;
    CHECK(continuous_energy(e, p, 32) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("initial energy check") {
    ModelParams p;
    p.kappa = 1e-3;

    SUBCASE("constant data: equality at every level") {
        InitExpr e;
        const InitialEnergyReport rep =
            initial_energy_check(e, {GridSpec(1, 1, 8, 8), GridSpec(1, 1, 16, 16)}, p);
        CHECK(rep.all_jensen_ok);
        CHECK(rep.monotone_toward_reference);
        for (const auto& lv : rep.levels)
            CHECK(lv.E_h0 == doctest::Approx(rep.reference).epsilon(1e-10));
    }

    SUBCASE("perturbed data: discrete energy below and increasing") {
        InitExpr e;
        e.density = InitExpr::Density::PerturbedConstant;
        e.amp = 0.3;
        std::vector<GridSpec> grids;
        for (int m : {16, 32, 64}) grids.emplace_back(1.0, 1.0, m, m);
        const InitialEnergyReport rep = initial_energy_check(e, grids, p);
        CHECK(rep.all_jensen_ok);
        CHECK(rep.monotone_toward_reference);
        CHECK(rep.levels.front().E_h0 < rep.levels.back().E_h0);
        CHECK(rep.levels.back().E_h0 < rep.reference * (1.0 + 1e-8));
    }

    SUBCASE("fewer than two grids is an error") {
        InitExpr e;
        CHECK_THROWS_AS(initial_energy_check(e, {GridSpec(1, 1, 8, 8)}, p), ConfigError);
    }
}
