#pragma once

#include <string>
#include <vector>

#include "nskfv/timeint.hpp"

namespace nskfv {

/// Temporal factor T(t) of a separable test function.
struct TimeFactor {
    enum class Kind { One, Linear, Cutoff } kind = Kind::One;
    double t_cut = 1.0;  // Cutoff: T = (1-(t/t_cut)^2)^2 for t < t_cut, else 0 (C^1)

    double value(double t) const;
    double deriv(double t) const;
};

/// a * cos(2 pi p x / Lx + alpha) * cos(2 pi q y / Ly + beta) * T(t).
/// Closed-form derivatives up to second order in space; periodic by construction.
struct TrigTestFn {
    double amp = 0.0;
    int p = 0;
    int q = 0;
    double alpha = 0.0;
    double beta = 0.0;
    TimeFactor T;
    double Lx = 1.0;
    double Ly = 1.0;

    double value(double t, double x, double y) const;
    double dt(double t, double x, double y) const;
    double dx(double t, double x, double y) const;
    double dy(double t, double x, double y) const;
    double dxx(double t, double x, double y) const;
    double dxy(double t, double x, double y) const;
    double dyy(double t, double x, double y) const;
};

/// Analytic (psi, phi) with every space-time derivative needed by the
/// variational inequality.
struct TestFunctionPair {
    std::string name;
    TrigTestFn psi;
    TrigTestFn phi_x;
    TrigTestFn phi_y;
};

/// Built-in catalog of trigonometric pairs on the given domain.
std::vector<TestFunctionPair> test_function_catalog(double Lx, double Ly);

/// Sample a scalar test function to a cell-centered field at time t.
ScalarField sample(const TrigTestFn& f, const GridSpec& g, double t);

/// Regularity weight K(phi) at time t:
/// 2 sup |negative part of sym grad phi|_2 + max{gamma-1,1} sup (div phi)_-,
/// sup over cell centers.
double regularity_weight(const TestFunctionPair& tf, double t, const GridSpec& g,
                         const ModelParams& p);

/// Decomposition of the variational-inequality left-hand side.
struct EnvarResidual {
    double total = 0.0;
    double bracket = 0.0;
    double transport = 0.0;
    double viscous = 0.0;
    double korteweg = 0.0;
    double defect = 0.0;
    double K_max = 0.0;  // max over evaluated times of K(phi(t))
    const char* dominant_group() const;
};

/// Left-hand side of the energy-variational inequality over [s,t], evaluated
/// with midpoint-rule spatial integrals, forward-difference density gradients,
/// the ledger energy for E, and trapezoid time quadrature over snapshots.
/// For solver output it is <= 0 up to discretization error.
EnvarResidual envar_residual(const Trajectory& traj, const TestFunctionPair& tf,
                             double s, double t, const ModelParams& p);

/// LHS - RHS of the discrete weak form of the continuity equation:
///   int int [-rho dpsi/dt - m . central_grad psi + lambda h grad+ rho . grad+ psi]
///     = int rho_0 psi(0).
/// psi must vanish at the final snapshot time. O(dt^2) for solver output.
double discrete_weak_residual_continuity(const Trajectory& traj, const TrigTestFn& psi,
                                         const ModelParams& p);

/// LHS - RHS of the reformulated discrete weak form of the momentum equation
/// (the identity ending in -int m_0 . phi(0) + int K(phi) E^h dt), with every
/// difference operator applied discretely to the sampled test function.
/// phi must vanish at the final snapshot time. O(dt^2) for solver output.
double discrete_weak_residual_momentum(const Trajectory& traj, const TestFunctionPair& tf,
                                       const ModelParams& p);

/// One record of the envar report.
struct EnvarRecord {
    std::string test_function;
    double s = 0.0;
    double t = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string dominant_group;
};

/// Evaluate the full catalog over all snapshot pairs (s,t) with t-s >= min_gap.
/// tol = tol_factor * (dt^2 + h) * E(0) * (1 + K(phi)). Also emits one
/// defect-consistency record per snapshot (discrete energy vs ledger energy,
/// 1e-12 relative), which a corrupted ledger fails.
std::vector<EnvarRecord> evaluate_envar_catalog(const Trajectory& traj,
                                                const std::vector<TestFunctionPair>& catalog,
                                                double min_gap, const ModelParams& p,
                                                double tol_factor = 10.0);

void write_envar_report(const std::vector<EnvarRecord>& records, std::ostream& os);

}  // namespace nskfv
