#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nskfv/initial_data.hpp"
#include "nskfv/timeint.hpp"

namespace nskfv {

/// Cell-average coarsening: each coarse value is the arithmetic mean of the
/// factor x factor fine cells it covers. factor must divide M and N.
ScalarField restrict_field(const ScalarField& f, int factor);

/// One resolution level of a refinement study.
struct StudyLevel {
    GridSpec grid;
    Trajectory traj;
};

/// Successive-difference surrogates between one adjacent level pair,
/// maximized over the shared snapshot times (except the energy column,
/// taken at the final time).
struct CauchyRow {
    int coarse_M = 0, coarse_N = 0;
    int fine_M = 0, fine_N = 0;
    double rho_l2 = 0.0;       // || restrict(rho_f) - rho_c ||_L2
    double m_lp = 0.0;         // momentum difference in L^{2 gamma/(gamma+1)}
    double grad_rho_l2 = 0.0;  // forward-gradient difference on the coarse grid
    double energy_diff = 0.0;  // |E^h_f - E^h_c| at the final time
    double u_l2 = 0.0;         // velocity difference (viscous runs only)
    bool has_u = false;
};

struct LambdaAuditRow {
    int M = 0, N = 0;
    double h = 0.0;
    double lambda = 0.0;  // max over the run
    double lambda_h = 0.0;
    double h_over_lambda = 0.0;
};

struct BoundsRow {
    int M = 0, N = 0;
    double sup_E = 0.0;
    double dissipation_integral = 0.0;  // sum dt * (total dissipation rate)
    double bv_energy = 0.0;
    bool flagged = false;  // exceeds 2x the coarsest level
};

struct StudyReport {
    std::vector<CauchyRow> cauchy;
    std::vector<LambdaAuditRow> lambda_audit;
    std::vector<BoundsRow> bounds;
    bool ek_mode = false;

    /// Every Cauchy column shrinks by at least `factor` between adjacent rows.
    bool cauchy_monotone(double factor = 1.2) const;
    bool lambda_h_decreasing() const;
    bool bounds_ok() const;
};

/// Pairwise Cauchy table over >= 3 completed levels sharing domain, params,
/// and snapshot times. Throws ConfigError when comparison times are missing.
std::vector<CauchyRow> cauchy_table(const std::vector<StudyLevel>& levels,
                                    const ModelParams& p,
                                    const std::vector<double>& compare_times);

std::vector<LambdaAuditRow> lambda_audit(const std::vector<StudyLevel>& levels);

/// sup_t E^h, time-integrated dissipation and energy BV norm per level;
/// flags any level exceeding twice the coarsest level's values.
std::vector<BoundsRow> uniform_bounds_audit(const std::vector<StudyLevel>& levels);

/// Run the same analytic initial data on every grid (each projected onto its
/// own cells), with snapshots forced at shared comparison times, and build the
/// full report. Levels must double M and N at fixed aspect ratio.
StudyReport run_refinement_study(const InitExpr& expr, const ModelParams& p,
                                 const StepControl& base,
                                 const std::vector<GridSpec>& grids,
                                 int n_compare_times = 5);

/// Human-readable structured text; one `key value` line per number so it is
/// also machine-parsable. States explicitly that no convergence rate is
/// asserted, only monotone decrease.
void write_study_report(const StudyReport& report, std::ostream& os);

}  // namespace nskfv
