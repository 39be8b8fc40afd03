#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "nskfv/diagnostics.hpp"

namespace nskfv {

enum class RkMethod { Ssprk3, Rk4 };

struct StepControl {
    double cfl = 0.5;
    double dt_max = std::numeric_limits<double>::infinity();
    double dt_fixed = 0.0;  // > 0 overrides the stability estimate (study runs)
    RkMethod method = RkMethod::Ssprk3;
    double t_end = 0.0;
    int snapshot_stride = 1;
    double tol_E_rel = 1e-8;  // allowed per-step energy increase, relative to E(0)
    int max_retries = 16;
    double c_K = 4.0;  // Korteweg dt-bound constant
    std::vector<double> forced_times;  // snapshot exactly at these times

    void validate() const;
};

/// CFL-style step estimate:
///   dt = cfl * min( h_min/(2 lambda + v_max),
///                   h_min^2 / (4 (2 mu + eta)/rho_min + eps),
///                   h_min^2 / (c_K sqrt(kappa rho_max)) ),
/// capped by dt_max.
double stable_dt(const FluidState& s, double lambda, const ModelParams& p,
                 const StepControl& ctrl);

/// One explicit RK step of the semidiscrete system. Throws VacuumBreakdown if
/// a substep produces a cell at or below the floor.
FluidState step(const FluidState& s, double dt, const ModelParams& p, RkMethod method);

/// Stored snapshots plus the per-step ledger of one run.
struct Trajectory {
    std::vector<FluidState> snapshots;
    EnergyLedger ledger;

    const GridSpec& grid() const { return snapshots.front().grid(); }
    const FluidState& snapshot_at(double t, double tol = 1e-9) const;
};

using Observer = std::function<void(const FluidState&, const LedgerRow&)>;

/// Integrate to t_end with adaptive steps. Energy increases beyond
/// tol_E_rel*E(0) trigger dt halving and retry; the retry cap throws
/// StabilityFailure. Observers run after every accepted step.
Trajectory integrate_to(const FluidState& s0, const StepControl& ctrl, const ModelParams& p,
                        const std::vector<Observer>& observers = {});

}  // namespace nskfv
