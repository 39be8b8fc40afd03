#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "nskfv/grid.hpp"

using namespace nskfv;

namespace {

ScalarField random_field(const GridSpec& g, unsigned seed, double lo = -1.0, double hi = 1.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    ScalarField f(g);
    for (double& v : f.data()) v = dist(rng);
    return f;
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("grid spec validation and derived quantities") {
    CHECK_THROWS_AS(GridSpec(0.0, 1.0, 8, 8), ConfigError);
    CHECK_THROWS_AS(GridSpec(1.0, 1.0, 2, 8), ConfigError);

    GridSpec g(2.0, 1.0, 8, 4);
    CHECK(g.hx() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g.hy() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g.h() == 0.25);
    CHECK(g.cells() == 32);
    CHECK(g.xc(3) == doctest::Approx(0.75));
}

TEST_CASE("shift wraps periodically") {
    GridSpec g(1.0, 1.0, 4, 4);
    ScalarField f(g);
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) f.at(i, j) = 10 * i + j;

    const ScalarField left = shift(f, -1, 0);
    CHECK(left(0, 0) == f(3, 0));  // wraps to column 3

    const ScalarField id = shift(f, 0, 0);
    const ScalarField full = shift(shift(f, 4, 0), 0, 4);
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) {
            CHECK(id(i, j) == f(i, j));
            CHECK(full(i, j) == f(i, j));
        }
    // explicit aliasing: (i + kM, j + lN) is (i, j)
    CHECK(f(1 + 8, 2 - 4) == f(1, 2));
}

TEST_CASE("difference stencils") {
    GridSpec g(1.0, 1.0, 4, 4);

    SUBCASE("constants map to zero") {
        ScalarField c(g, 3.7);
        for (auto kind : {DiffKind::Forward, DiffKind::Backward, DiffKind::Central})
            for (auto axis : {Axis::X, Axis::Y})
                CHECK(max_abs(diff(c, axis, kind)) == 0.0);
    }

    SUBCASE("hand-evaluated forward difference of a sine sample") {
        ScalarField f(g);
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) f.at(i, j) = std::sin(2.0 * kPi * i / 4.0);
        // (sin(pi/2) - 0) / 0.25 = 4
        CHECK(diff(f, Axis::X, DiffKind::Forward)(0, 0) == doctest::Approx(4.0).epsilon(1e-14));
    }

    SUBCASE("central is the mean of forward and backward") {
        const ScalarField f = random_field(g, 11);
        const ScalarField c = diff(f, Axis::X, DiffKind::Central);
        const ScalarField fw = diff(f, Axis::X, DiffKind::Forward);
        const ScalarField bw = diff(f, Axis::X, DiffKind::Backward);
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i)
                CHECK(c(i, j) == doctest::Approx(0.5 * (fw(i, j) + bw(i, j))).epsilon(1e-14));
    }
}

TEST_CASE("discrete laplacian") {
    SUBCASE("constant and Fourier mode") {
        GridSpec g(1.0, 1.0, 4, 4);
        CHECK(max_abs(laplacian_h(ScalarField(g, 2.0))) == 0.0);

        ScalarField f(g);
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) f.at(i, j) = std::cos(2.0 * kPi * i / 4.0);
        const ScalarField lf = laplacian_h(f);
        // eigenvalue -(4/hx^2) sin^2(pi/M) = -64 sin^2(pi/4) = -32
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i)
                CHECK(lf(i, j) == doctest::Approx(-32.0 * f(i, j)).epsilon(1e-13));
    }

    SUBCASE("telescoping and operator composition") {
        GridSpec g(1.0, 2.0, 8, 6);
        const ScalarField f = random_field(g, 7);
        CHECK(std::abs(integrate(laplacian_h(f))) < 1e-13);

        ScalarField comp = diff(diff(f, Axis::X, DiffKind::Forward), Axis::X, DiffKind::Backward);
        comp += diff(diff(f, Axis::Y, DiffKind::Forward), Axis::Y, DiffKind::Backward);
        const ScalarField lap = laplacian_h(f);
        for (int j = 0; j < 6; ++j)
            for (int i = 0; i < 8; ++i)
                CHECK(lap(i, j) == doctest::Approx(comp(i, j)).epsilon(1e-12));
    }
}

TEST_CASE("integration") {
    GridSpec g(1.0, 1.0, 4, 4);
    CHECK(integrate(ScalarField(g, 2.5)) == doctest::Approx(2.5).epsilon(1e-15));

    ScalarField ind(g);
    ind.at(2, 1) = 1.0;
    CHECK(integrate(ind) == doctest::Approx(1.0 / 16.0).epsilon(1e-15));

    const ScalarField f = random_field(g, 3);
    for (auto kind : {DiffKind::Forward, DiffKind::Backward, DiffKind::Central})
        CHECK(std::abs(integrate(diff(f, Axis::X, kind))) < 1e-13);
}

TEST_CASE("dG seminorm") {
    GridSpec g(1.0, 1.0, 4, 4);
    CHECK(dg_seminorm_sq(ScalarField(g, 1.0)) == 0.0);

    ScalarField ind(g);
    ind.at(0, 0) = 1.0;
    CHECK(dg_seminorm_sq(ind) == doctest::Approx(4.0).epsilon(1e-15));

    const ScalarField f = random_field(g, 9);
    CHECK(dg_seminorm_sq(3.0 * f) == doctest::Approx(9.0 * dg_seminorm_sq(f)).epsilon(1e-13));
}

TEST_CASE("summation by parts") {
    GridSpec g(1.0, 1.5, 16, 12);
    const ScalarField f = random_field(g, 21);
    const ScalarField gg = random_field(g, 22);
    const double tol = 1e-13 * max_abs(f) * max_abs(gg) * g.M * g.N;

    for (auto axis : {Axis::X, Axis::Y}) {
        double lhs = 0.0, rhs = 0.0;
        const ScalarField df = diff(f, axis, DiffKind::Forward);
        const ScalarField dg = diff(gg, axis, DiffKind::Backward);
        for (int j = 0; j < g.N; ++j)
            for (int i = 0; i < g.M; ++i) {
                lhs += df(i, j) * gg(i, j);
                rhs -= f(i, j) * dg(i, j);
            }
        CHECK(std::abs(lhs - rhs) < tol);
    }
}

TEST_CASE("operators are linear") {
    GridSpec g(1.0, 1.0, 8, 8);
    const ScalarField f = random_field(g, 31);
    const ScalarField h = random_field(g, 32);
    const double a = 1.3, b = -0.7;
    ScalarField combo = axpy(a * f, b, h);
    for (auto kind : {DiffKind::Forward, DiffKind::Backward, DiffKind::Central}) {
        const ScalarField lhs = diff(combo, Axis::X, kind);
        const ScalarField rhs = axpy(a * diff(f, Axis::X, kind), b, diff(h, Axis::X, kind));
        for (int j = 0; j < 8; ++j)
            for (int i = 0; i < 8; ++i)
                CHECK(lhs(i, j) == doctest::Approx(rhs(i, j)).epsilon(1e-12));
    }
}

TEST_CASE("lp norms") {
    GridSpec g(1.0, 1.0, 4, 4);
    CHECK(lp_norm(ScalarField(g, -2.0), 2.0) == doctest::Approx(2.0).epsilon(1e-14));
    VectorField v(g, 3.0, 4.0);
    CHECK(lp_norm(v, 2.0) == doctest::Approx(5.0).epsilon(1e-14));
}
