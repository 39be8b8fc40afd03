#pragma once

#include <utility>

#include "nskfv/state.hpp"

namespace nskfv {

/// Time derivatives of (rho, rho u, rho v).
struct Tendency {
    ScalarField d_rho;
    VectorField d_m;
    explicit Tendency(const GridSpec& g) : d_rho(g), d_m(g) {}
};

/// Rusanov dissipation parameter and where the wave-speed maximum sits.
struct LambdaReport {
    double lambda = 0.0;
    int argmax_i = 0;
    int argmax_j = 0;
    double max_speed = 0.0;  // |u| + sqrt(p'(rho)) at the argmax
};

/// lambda = (1/2) max_{i,j} { |u_{i,j}| + sqrt(p'(rho_{i,j})) }.
/// A fixed policy returns the configured constant but still reports the
/// formula's argmax for diagnostics.
LambdaReport compute_lambda(const FluidState& s, const ModelParams& p);

/// d/dt rho = -central_x(rho u) - central_y(rho v) + h*lambda*Lap_h(rho).
ScalarField rhs_continuity(const FluidState& s, double lambda, const ModelParams& p);

// The momentum tendency decomposes into three separately testable addends.
VectorField rhs_momentum_convective(const FluidState& s, double lambda, const ModelParams& p);
VectorField rhs_momentum_viscous(const FluidState& s, const ModelParams& p);
VectorField rhs_momentum_korteweg(const FluidState& s, const ModelParams& p);

/// Sum of the three addends.
VectorField rhs_momentum(const FluidState& s, double lambda, const ModelParams& p);

/// Full right-hand side with lambda computed per policy from the current state.
std::pair<Tendency, LambdaReport> assemble_rhs(const FluidState& s, const ModelParams& p);

/// Exact chain-rule rate of the discrete energy along a tendency:
///   hx*hy * sum [ (-|m|^2/(2 rho^2) + P'(rho)) d_rho + (m/rho).d_m ]
///   + kappa * hx*hy * sum grad+ rho . grad+ d_rho.
double energy_rate(const FluidState& s, const Tendency& dt, const ModelParams& p);

/// The three nonnegative dissipation integrals of the semidiscrete energy
/// inequality.
struct DissipationTerms {
    double visc_dev = 0.0;  // 2 mu * integral |dev D+(u)|^2
    double visc_div = 0.0;  // eta * integral |div+ u|^2
    double rusanov = 0.0;   // kappa * lambda * h * integral (Lap_h rho)^2
    double total() const { return visc_dev + visc_div + rusanov; }
};
DissipationTerms dissipation_terms(const FluidState& s, double lambda, const ModelParams& p);

}  // namespace nskfv
