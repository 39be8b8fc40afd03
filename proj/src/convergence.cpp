#include "nskfv/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace nskfv {

ScalarField restrict_field(const ScalarField& f, int factor) {
    const GridSpec& g = f.grid();
    if (factor < 1) throw ConfigError("restrict: factor must be >= 1");
    if (g.M % factor != 0 || g.N % factor != 0)
        throw ConfigError("restrict: factor " + std::to_string(factor) +
                          " does not divide " + std::to_string(g.M) + "x" +
                          std::to_string(g.N));
    GridSpec gc(g.Lx, g.Ly, g.M / factor, g.N / factor);
    ScalarField out(gc);
    const double inv = 1.0 / (factor * factor);
    for (int J = 0; J < gc.N; ++J)
        for (int I = 0; I < gc.M; ++I) {
            double sum = 0.0;
            for (int b = 0; b < factor; ++b)
                for (int a = 0; a < factor; ++a) sum += f(I * factor + a, J * factor + b);
            out.at(I, J) = sum * inv;
        }
    return out;
}

namespace {

double lp_diff(const ScalarField& a, const ScalarField& b, double p) {
    return lp_norm(a - b, p);
}

double grad_diff_l2(const ScalarField& a, const ScalarField& b) {
    const ScalarField dx = diff(a, Axis::X, DiffKind::Forward) -
                           diff(b, Axis::X, DiffKind::Forward);
    const ScalarField dy = diff(a, Axis::Y, DiffKind::Forward) -
                           diff(b, Axis::Y, DiffKind::Forward);
    return std::sqrt(integrate(dx * dx) + integrate(dy * dy));
}

}  // namespace

std::vector<CauchyRow> cauchy_table(const std::vector<StudyLevel>& levels,
                                    const ModelParams& p,
                                    const std::vector<double>& compare_times) {
    if (levels.size() < 3) throw ConfigError("cauchy_table: need >= 3 levels");
    const double mom_p = 2.0 * p.gamma / (p.gamma + 1.0);

    std::vector<CauchyRow> rows;
    for (std::size_t l = 0; l + 1 < levels.size(); ++l) {
        const StudyLevel& coarse = levels[l];
        const StudyLevel& fine = levels[l + 1];
        if (fine.grid.M % coarse.grid.M != 0 || fine.grid.N % coarse.grid.N != 0)
            throw ConfigError("cauchy_table: fine level is not a refinement of the coarse one");
        const int fx = fine.grid.M / coarse.grid.M;
        if (fx != fine.grid.N / coarse.grid.N)
            throw ConfigError("cauchy_table: aspect ratio changes between levels");

        CauchyRow row;
        row.coarse_M = coarse.grid.M;
        row.coarse_N = coarse.grid.N;
        row.fine_M = fine.grid.M;
        row.fine_N = fine.grid.N;
        row.has_u = !p.ek_mode();

        for (double t : compare_times) {
            const FluidState& sc = coarse.traj.snapshot_at(t);
            const FluidState& sf = fine.traj.snapshot_at(t);
            const ScalarField rf = restrict_field(sf.rho, fx);
            const ScalarField mfx = restrict_field(sf.m.x, fx);
            const ScalarField mfy = restrict_field(sf.m.y, fx);

            row.rho_l2 = std::max(row.rho_l2, lp_diff(rf, sc.rho, 2.0));
            row.m_lp = std::max(row.m_lp,
                                lp_norm(VectorField(mfx - sc.m.x, mfy - sc.m.y), mom_p));
            row.grad_rho_l2 = std::max(row.grad_rho_l2, grad_diff_l2(rf, sc.rho));
            if (row.has_u) {
                const VectorField uc = velocity(sc, p);
                const VectorField uf = velocity(sf, p);
                row.u_l2 = std::max(
                    row.u_l2, lp_norm(VectorField(restrict_field(uf.x, fx) - uc.x,
                                                  restrict_field(uf.y, fx) - uc.y),
                                      2.0));
            }
        }
        const double tf = compare_times.back();
        row.energy_diff = std::abs(fine.traj.ledger.row_at(tf).E_h -
                                   coarse.traj.ledger.row_at(tf).E_h);
        rows.push_back(row);
    }
    return rows;
}

std::vector<LambdaAuditRow> lambda_audit(const std::vector<StudyLevel>& levels) {
    std::vector<LambdaAuditRow> rows;
    for (const auto& lev : levels) {
        LambdaAuditRow r;
        r.M = lev.grid.M;
        r.N = lev.grid.N;
        r.h = lev.grid.h();
        for (const auto& row : lev.traj.ledger.rows) r.lambda = std::max(r.lambda, row.lambda);
        r.lambda_h = r.lambda * r.h;
        r.h_over_lambda = r.lambda > 0.0 ? r.h / r.lambda : 0.0;
        rows.push_back(r);
    }
    return rows;
}

std::vector<BoundsRow> uniform_bounds_audit(const std::vector<StudyLevel>& levels) {
    if (levels.size() < 2) throw ConfigError("uniform_bounds_audit: need >= 2 levels");
    std::vector<BoundsRow> rows;
    for (const auto& lev : levels) {
        BoundsRow r;
        r.M = lev.grid.M;
        r.N = lev.grid.N;
        for (const auto& row : lev.traj.ledger.rows) {
            r.sup_E = std::max(r.sup_E, row.E_h);
            r.dissipation_integral +=
                row.dt * (row.D_visc_dev + row.D_visc_div + row.D_rusanov);
        }
        r.bv_energy = lev.traj.ledger.bv_norm();
        rows.push_back(r);
    }
    const BoundsRow& base = rows.front();
    const double eps = 1e-14 * (1.0 + base.sup_E);
    for (auto& r : rows)
        r.flagged = r.sup_E > 2.0 * base.sup_E + eps ||
                    r.dissipation_integral > 2.0 * base.dissipation_integral + eps ||
                    r.bv_energy > 2.0 * base.bv_energy + eps;
    return rows;
}

bool StudyReport::cauchy_monotone(double factor) const {
    for (std::size_t n = 1; n < cauchy.size(); ++n) {
        const CauchyRow& a = cauchy[n - 1];
        const CauchyRow& b = cauchy[n];
        if (!(a.rho_l2 >= factor * b.rho_l2)) return false;
        if (!(a.m_lp >= factor * b.m_lp)) return false;
        if (!(a.grad_rho_l2 >= factor * b.grad_rho_l2)) return false;
        if (!(a.energy_diff >= factor * b.energy_diff)) return false;
        if (a.has_u && b.has_u && !(a.u_l2 >= factor * b.u_l2)) return false;
    }
    return !cauchy.empty();
}

bool StudyReport::lambda_h_decreasing() const {
    for (std::size_t n = 1; n < lambda_audit.size(); ++n)
        if (!(lambda_audit[n].lambda_h < lambda_audit[n - 1].lambda_h)) return false;
    return lambda_audit.size() >= 2;
}

bool StudyReport::bounds_ok() const {
    for (const auto& r : bounds)
        if (r.flagged) return false;
    return !bounds.empty();
}

StudyReport run_refinement_study(const InitExpr& expr, const ModelParams& p,
                                 const StepControl& base,
                                 const std::vector<GridSpec>& grids,
                                 int n_compare_times) {
    if (grids.size() < 2) throw ConfigError("refinement study: need >= 2 grids");
    for (std::size_t n = 1; n < grids.size(); ++n) {
        if (grids[n].Lx != grids[0].Lx || grids[n].Ly != grids[0].Ly)
            throw ConfigError("refinement study: domain sizes differ between levels");
        if (grids[n].M != 2 * grids[n - 1].M || grids[n].N != 2 * grids[n - 1].N)
            throw ConfigError("refinement study: M, N must double between levels");
    }
    if (n_compare_times < 1) throw ConfigError("refinement study: n_compare_times >= 1");

    std::vector<double> compare_times;
    for (int n = 1; n <= n_compare_times; ++n)
        compare_times.push_back(base.t_end * n / n_compare_times);

    StepControl ctrl = base;
    ctrl.forced_times = compare_times;
    ctrl.snapshot_stride = 1 << 30;  // snapshots only at the forced times

    StudyReport report;
    report.ek_mode = p.ek_mode();
    std::vector<StudyLevel> levels;
    for (const auto& g : grids) {
        StudyLevel lev{g, {}};
        try {
            lev.traj = integrate_to(project(expr, g, p), ctrl, p);
        } catch (const std::exception& e) {
            throw ConfigError("refinement study: level " + std::to_string(g.M) + "x" +
                              std::to_string(g.N) + " failed: " + e.what());
        }
        levels.push_back(std::move(lev));
    }

    report.cauchy = cauchy_table(levels, p, compare_times);
    report.lambda_audit = lambda_audit(levels);
    report.bounds = uniform_bounds_audit(levels);
    return report;
}

void write_study_report(const StudyReport& report, std::ostream& os) {
    os << std::setprecision(17);
    os << "# Refinement study report.\n"
       << "# CAVEAT: no convergence rate is asserted; only monotone decrease of\n"
       << "# successive-difference (Cauchy) columns is checked.\n";
    if (report.ek_mode)
        os << "# Inviscid run: the velocity column is omitted (weak-surrogate columns only).\n";
    os << "[cauchy]\n";
    for (const auto& r : report.cauchy) {
        os << "pair " << r.coarse_M << "x" << r.coarse_N << " " << r.fine_M << "x" << r.fine_N
           << "\n";
        os << "rho_l2 " << r.rho_l2 << "\n";
        os << "m_lp " << r.m_lp << "\n";
        os << "grad_rho_l2 " << r.grad_rho_l2 << "\n";
        os << "energy_diff " << r.energy_diff << "\n";
        if (r.has_u) os << "u_l2 " << r.u_l2 << "\n";
    }
    os << "[lambda_audit]\n";
    for (const auto& r : report.lambda_audit)
        os << "level " << r.M << "x" << r.N << " lambda " << r.lambda << " lambda_h "
           << r.lambda_h << " h_over_lambda " << r.h_over_lambda << "\n";
    os << "[bounds_audit]\n";
    for (const auto& r : report.bounds)
        os << "level " << r.M << "x" << r.N << " sup_E " << r.sup_E << " dissipation "
           << r.dissipation_integral << " bv_energy " << r.bv_energy << " flagged "
           << (r.flagged ? 1 : 0) << "\n";
    os << "[verdict]\n";
    os << "cauchy_monotone " << (report.cauchy_monotone() ? 1 : 0) << "\n";
    os << "lambda_h_decreasing " << (report.lambda_h_decreasing() ? 1 : 0) << "\n";
    os << "bounds_ok " << (report.bounds_ok() ? 1 : 0) << "\n";
}

}  // namespace nskfv
