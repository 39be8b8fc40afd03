#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "nskfv/convergence.hpp"

using namespace nskfv;

namespace {

Trajectory constant_traj(const GridSpec& g, const ModelParams& p, double t_end) {
    FluidState s(g);
    s.rho = ScalarField(g, 1.0);
    StepControl c;
    c.t_end = t_end;
    c.dt_fixed = t_end / 4.0;
    return integrate_to(s, c, p);
}

}  // namespace

TEST_CASE("restrict_field") {
    SUBCASE("constant is preserved") {
        GridSpec g(1.0, 1.0, 8, 8);
        const ScalarField c = restrict_field(ScalarField(g, 3.5), 2);
        CHECK(c.grid().M == 4);
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) CHECK(c(i, j) == 3.5);
    }

    SUBCASE("block {0,0,2,2} averages to 1") {
        GridSpec g(1.0, 1.0, 8, 8);
        ScalarField f(g);
        f.at(0, 1) = 2.0;
        f.at(1, 1) = 2.0;
        const ScalarField c = restrict_field(f, 2);
        CHECK(c(0, 0) == doctest::Approx(1.0));
        CHECK(c(1, 0) == 0.0);
        CHECK(c(0, 1) == 0.0);
    }

    SUBCASE("integral and L2 norm behavior on random data") {
        GridSpec g(2.0, 1.0, 16, 8);
        ScalarField f(g);
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (int j = 0; j < g.N; ++j)
            for (int i = 0; i < g.M; ++i) f.at(i, j) = dist(rng);
        const ScalarField c = restrict_field(f, 2);
        CHECK(integrate(c) == doctest::Approx(integrate(f)).epsilon(1e-13));
        // block averaging is an L2 contraction
        CHECK(lp_norm(c, 2.0) <= lp_norm(f, 2.0) + 1e-14);
    }

    SUBCASE("non-divisor factor is rejected") {
        GridSpec g(1.0, 1.0, 6, 6);
        CHECK_THROWS_AS(restrict_field(ScalarField(g, 1.0), 4), ConfigError);
        CHECK_THROWS_AS(restrict_field(ScalarField(g, 1.0), 0), ConfigError);
    }
}

TEST_CASE("cauchy table") {
    ModelParams p;

    SUBCASE("needs at least three levels") {
        std::vector<StudyLevel> two;
        two.push_back({GridSpec(1, 1, 8, 8), constant_traj(GridSpec(1, 1, 8, 8), p, 0.01)});
        two.push_back({GridSpec(1, 1, 16, 16), constant_traj(GridSpec(1, 1, 16, 16), p, 0.01)});
        CHECK_THROWS_AS(cauchy_table(two, p, {0.01}), ConfigError);
    }

    SUBCASE("constant trajectories give vanishing differences") {
        std::vector<StudyLevel> levels;
        for (int m : {8, 16, 32})
            levels.push_back({GridSpec(1, 1, m, m), constant_traj(GridSpec(1, 1, m, m), p, 0.01)});
        const auto rows = cauchy_table(levels, p, {0.005, 0.01});
        REQUIRE(rows.size() == 2);
        for (const auto& r : rows) {
            CHECK(r.rho_l2 < 1e-13);
            CHECK(r.m_lp < 1e-13);
            CHECK(r.grad_rho_l2 < 1e-12);
            CHECK(r.energy_diff < 1e-12);
            CHECK_FALSE(r.has_u);  // default params are inviscid
        }
    }

    SUBCASE("missing comparison time is an error") {
        std::vector<StudyLevel> levels;
        for (int m : {8, 16, 32})
            levels.push_back({GridSpec(1, 1, m, m), constant_traj(GridSpec(1, 1, m, m), p, 0.01)});
        CHECK_THROWS_AS(cauchy_table(levels, p, {0.007}), ConfigError);
    }
}

TEST_CASE("lambda audit arithmetic") {
    ModelParams p;
    std::vector<StudyLevel> levels;
    for (int m : {8, 16})
        levels.push_back({GridSpec(1, 1, m, m), constant_traj(GridSpec(1, 1, m, m), p, 0.01)});
    const auto rows = lambda_audit(levels);
    REQUIRE(rows.size() == 2);
    // constant rho = 1: lambda = sqrt(p'(1))/2 on every level
    const double lam = 0.5 * std::sqrt(p.k * p.gamma);
    for (const auto& r : rows) {
        CHECK(r.lambda == doctest::Approx(lam).epsilon(1e-14));
        CHECK(r.lambda_h == doctest::Approx(lam * r.h).epsilon(1e-14));
        CHECK(r.h_over_lambda == doctest::Approx(r.h / lam).epsilon(1e-14));
    }
    CHECK(rows[1].lambda_h == doctest::Approx(0.5 * rows[0].lambda_h).epsilon(1e-13));
}

TEST_CASE("uniform bounds audit flags a blow-up level") {
    ModelParams p;
    std::vector<StudyLevel> levels;
    for (int m : {8, 16})
        levels.push_back({GridSpec(1, 1, m, m), constant_traj(GridSpec(1, 1, m, m), p, 0.01)});
    auto ok = uniform_bounds_audit(levels);
    CHECK_FALSE(ok[0].flagged);
    CHECK_FALSE(ok[1].flagged);

    // corrupt the fine ledger so sup_E exceeds twice the coarse level
    for (auto& row : levels[1].traj.ledger.rows) row.E_h *= 3.0;
    auto bad = uniform_bounds_audit(levels);
    CHECK_FALSE(bad[0].flagged);
    CHECK(bad[1].flagged);

    CHECK_THROWS_AS(uniform_bounds_audit({levels[0]}), ConfigError);
}

TEST_CASE("study report verdicts") {
    StudyReport rep;
    CHECK_FALSE(rep.cauchy_monotone());
    CHECK_FALSE(rep.lambda_h_decreasing());
    CHECK_FALSE(rep.bounds_ok());

    CauchyRow a;
    a.rho_l2 = 1.0;
    a.m_lp = 1.0;
    a.grad_rho_l2 = 1.0;
    a.energy_diff = 1.0;
    CauchyRow b = a;
    b.rho_l2 = b.m_lp = b.grad_rho_l2 = b.energy_diff = 0.5;
    rep.cauchy = {a, b};
    CHECK(rep.cauchy_monotone(1.2));
    CHECK_FALSE(rep.cauchy_monotone(2.5));

    rep.cauchy[1].m_lp = 0.9;  // one stalled column breaks the verdict
    CHECK_FALSE(rep.cauchy_monotone(1.2));

    LambdaAuditRow l1, l2;
    l1.lambda_h = 0.2;
    l2.lambda_h = 0.1;
    rep.lambda_audit = {l1, l2};
    CHECK(rep.lambda_h_decreasing());
    rep.lambda_audit[1].lambda_h = 0.2;
    CHECK_FALSE(rep.lambda_h_decreasing());

    BoundsRow bd;
    rep.bounds = {bd, bd};
    CHECK(rep.bounds_ok());
    rep.bounds[1].flagged = true;
    CHECK_FALSE(rep.bounds_ok());
}

TEST_CASE("refinement study end to end on a short inviscid run") {
    ModelParams p;
    p.kappa = 1e-3;
    InitExpr e;
    e.density = InitExpr::Density::PerturbedConstant;
    e.amp = 0.2;
    StepControl base;
    base.cfl = 0.4;
    base.t_end = 0.02;

    SUBCASE("grid validation") {
        CHECK_THROWS_AS(
            run_refinement_study(e, p, base, {GridSpec(1, 1, 8, 8), GridSpec(1, 1, 24, 24)}, 2),
            ConfigError);
        CHECK_THROWS_AS(
            run_refinement_study(e, p, base, {GridSpec(1, 1, 8, 8), GridSpec(2, 1, 16, 16)}, 2),
            ConfigError);
    }

    SUBCASE("report structure and serialized form") {
        std::vector<GridSpec> grids;
        for (int m : {16, 32, 64}) grids.emplace_back(1.0, 1.0, m, m);
        const StudyReport rep = run_refinement_study(e, p, base, grids, 3);
        CHECK(rep.ek_mode);
        REQUIRE(rep.cauchy.size() == 2);
        CHECK(rep.lambda_audit.size() == 3);
        CHECK(rep.bounds.size() == 3);
        CHECK(rep.cauchy[0].rho_l2 > 0.0);
        CHECK(rep.lambda_h_decreasing());
        CHECK(rep.bounds_ok());

        std::stringstream ss;
        write_study_report(rep, ss);
        const std::string text = ss.str();
        for (const char* key : {"[cauchy]", "rho_l2", "m_lp", "grad_rho_l2", "energy_diff",
                                "[lambda_audit]", "[bounds_audit]", "[verdict]",
                                "cauchy_monotone", "no convergence rate"})
            CHECK(text.find(key) != std::string::npos);
        // inviscid: no velocity column
        CHECK(text.find("u_l2") == std::string::npos);
    }
}
