// Command-line front end: run the solver, audit the variational inequality,
// drive refinement studies, project initial data, or echo a resolved config.
//
// Exit codes: 0 ok, 2 config error, 3 vacuum breakdown, 4 stability failure,
// 5 audit failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "nskfv/config.hpp"
#include "nskfv/convergence.hpp"
#include "nskfv/envar.hpp"
#include "nskfv/snapshot.hpp"

namespace fs = std::filesystem;
using namespace nskfv;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitVacuum = 3;
constexpr int kExitStability = 4;
constexpr int kExitAudit = 5;

std::string resolve_output_dir(const std::string& configured) {
    if (const char* env = std::getenv("NSKFV_OUTPUT_DIR")) return env;
    return configured;
}

int cmd_run(const std::string& config_path) {
    const RunConfig cfg = load_config(config_path);
    const ModelParams p = cfg.resolved_params();
    const FluidState s0 = project(cfg.init, cfg.grid, p);
    const Trajectory traj = integrate_to(s0, cfg.control, p);

    const std::string dir = resolve_output_dir(cfg.output_dir);
    write_run(traj, dir, cfg.format);

    const LedgerRow& first = traj.ledger.rows.front();
    const LedgerRow& last = traj.ledger.rows.back();
    double max_E_increase = 0.0;
    for (std::size_t n = 1; n < traj.ledger.rows.size(); ++n)
        max_E_increase = std::max(max_E_increase,
                                  traj.ledger.rows[n].E_h - traj.ledger.rows[n - 1].E_h);

    std::ofstream summary(fs::path(dir) / "summary.txt");
    summary.precision(17);
    summary << "steps " << traj.ledger.rows.size() - 1 << "\n"
            << "t_final " << last.t << "\n"
            << "mass_drift " << last.mass - first.mass << "\n"
            << "momentum_x_drift " << last.momentum_x - first.momentum_x << "\n"
            << "momentum_y_drift " << last.momentum_y - first.momentum_y << "\n"
            << "E_initial " << first.E_h << "\n"
            << "E_final " << last.E_h << "\n"
            << "max_per_step_E_increase " << max_E_increase << "\n"
            << "# resolved configuration follows\n";
    cfg.echo(summary);

    std::cout << "run complete: " << traj.ledger.rows.size() - 1 << " steps to t="
              << last.t << ", output in " << dir << "\n";
    return kExitOk;
}

int cmd_check_envar(const std::string& config_path, const std::string& run_dir,
                    double min_gap) {
    const RunConfig cfg = load_config(config_path);
    const ModelParams p = cfg.resolved_params();
    const Trajectory traj = read_run(run_dir);
    const GridSpec& g = traj.grid();

    const auto catalog = test_function_catalog(g.Lx, g.Ly);
    const auto records = evaluate_envar_catalog(traj, catalog, min_gap, p);

    std::ofstream report(fs::path(run_dir) / "envar_report.txt");
    write_envar_report(records, report);

    std::size_t failed = 0;
    for (const auto& r : records)
        if (!r.pass) ++failed;
    std::cout << records.size() << " checks, " << failed << " failed; report in "
              << run_dir << "/envar_report.txt\n";
    return failed == 0 ? kExitOk : kExitAudit;
}

int cmd_converge(const std::string& config_path, int n_levels, double min_decrease) {
    const RunConfig cfg = load_config(config_path);
    const ModelParams p = cfg.resolved_params();
    if (n_levels < 3) throw ConfigError("converge: need >= 3 levels");

    std::vector<GridSpec> grids;
    for (int l = 0; l < n_levels; ++l)
        grids.emplace_back(cfg.grid.Lx, cfg.grid.Ly, cfg.grid.M << l, cfg.grid.N << l);

    const StudyReport report = run_refinement_study(cfg.init, p, cfg.control, grids);

    const std::string dir = resolve_output_dir(cfg.output_dir);
    fs::create_directories(dir);
    std::ofstream os(fs::path(dir) / "study_report.txt");
    write_study_report(report, os);
    write_study_report(report, std::cout);

    const bool ok = report.cauchy_monotone(min_decrease) && report.bounds_ok();
    return ok ? kExitOk : kExitAudit;
}

int cmd_project(const std::string& config_path, const std::string& out_path) {
    const RunConfig cfg = load_config(config_path);
    const ModelParams p = cfg.resolved_params();
    const FluidState s0 = project(cfg.init, cfg.grid, p);
    write_snapshot(s0, out_path);
    std::cout.precision(17);
    std::cout << "mass " << integrate(s0.rho) << "\n"
              << "analytic_mass " << cfg.init.total_mass() << "\n"
              << "E_h " << discrete_energy(s0, p) << "\n";
    return kExitOk;
}

int cmd_describe(const std::string& config_path) {
    load_config(config_path).echo(std::cout);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-volume solver for viscous and inviscid capillary fluids "
                 "on a periodic 2-D domain, with structure-preservation audits"};
    app.require_subcommand(1);

    std::string config_path, run_dir, out_path = "init.bin";
    double min_gap = 0.02, min_decrease = 1.2;
    int n_levels = 3;

    auto* run = app.add_subcommand("run", "integrate a configured problem to t_end");
    run->add_option("config", config_path, "config file")->required();

    auto* envar = app.add_subcommand(
        "check-envar", "evaluate the energy-variational inequality on a finished run");
    envar->add_option("config", config_path, "config file")->required();
    envar->add_option("run_dir", run_dir, "run output directory")->required();
    envar->add_option("--min-gap", min_gap, "smallest interval length t - s");

    auto* conv = app.add_subcommand("converge", "mesh-refinement study");
    conv->add_option("config", config_path, "base config file (coarsest grid)")->required();
    conv->add_option("--levels", n_levels, "number of doubling levels");
    conv->add_option("--min-decrease", min_decrease,
                     "required Cauchy shrink factor per level");

    auto* proj = app.add_subcommand("project", "project the initial data only");
    proj->add_option("config", config_path, "config file")->required();
    proj->add_option("--out", out_path, "snapshot output path");

    auto* desc = app.add_subcommand("describe", "print the resolved configuration");
    desc->add_option("config", config_path, "config file")->required();

    // NSKFV_THREADS is accepted for interface stability; execution is
    // currently single-threaded.
    if (const char* env = std::getenv("NSKFV_THREADS")) (void)env;

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(config_path);
        if (*envar) return cmd_check_envar(config_path, run_dir, min_gap);
        if (*conv) return cmd_converge(config_path, n_levels, min_decrease);
        if (*proj) return cmd_project(config_path, out_path);
        if (*desc) return cmd_describe(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const VacuumBreakdown& e) {
        std::cerr << "vacuum breakdown: " << e.what() << "\n";
        return kExitVacuum;
    } catch (const StabilityFailure& e) {
        std::cerr << "stability failure: " << e.what() << "\n";
        return kExitStability;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
