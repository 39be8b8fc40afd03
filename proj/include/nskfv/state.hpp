#pragma once

#include <limits>

#include "nskfv/grid.hpp"

namespace nskfv {

enum class LambdaPolicy { RusanovAuto, Fixed };

/// Physical and numerical constants of the model.
struct ModelParams {
    double k = 1.0;       // pressure coefficient, p(rho) = k rho^gamma
    double gamma = 2.0;   // adiabatic exponent
    double kappa = 1e-3;  // capillarity
    double mu = 0.0;      // shear viscosity
    double eta = 0.0;     // bulk viscosity
    LambdaPolicy lambda_policy = LambdaPolicy::RusanovAuto;
    double lambda_fixed = 0.0;
    double cfl = 0.5;
    double rho_floor = 1e-10;

    void validate() const;

    bool ek_mode() const { return mu == 0.0 && eta == 0.0; }
    bool nsk_mode() const { return mu > 0.0 && eta > 0.0; }
};

/// p(rho) = k rho^gamma, rho >= 0.
double pressure(double rho, const ModelParams& p);

/// P(rho) = k rho^gamma / (gamma-1); satisfies rho P'(rho) = p(rho) + P(rho).
double pressure_potential(double rho, const ModelParams& p);

/// p'(rho) = k gamma rho^(gamma-1).
double pressure_derivative(double rho, const ModelParams& p);

/// Kinetic-plus-internal energy density |m|^2/(2 rho) + P(rho), extended by
/// 0 at the vacuum origin and +inf elsewhere. Infinity is a value here.
double eta_tilde(double rho, double mx, double my, const ModelParams& p);

/// Prognostic triple (rho, rho*u, rho*v) at one time instant.
struct FluidState {
    double t = 0.0;
    ScalarField rho;
    VectorField m;

    FluidState(const GridSpec& g) : rho(g, 0.0), m(g) {}
    FluidState(double t, ScalarField r, VectorField mom)
        : t(t), rho(std::move(r)), m(std::move(mom)) {
        if (!(rho.grid() == m.grid())) throw ConfigError("FluidState: grids differ");
    }
    const GridSpec& grid() const { return rho.grid(); }

    double min_rho() const;
};

/// Discrete total energy: hx*hy * sum [ eta_tilde + (kappa/2)|forward grad rho|^2 ].
/// Returns +inf if some cell is at vacuum with nonzero momentum.
double discrete_energy(const FluidState& s, const ModelParams& p);

/// u = m / rho componentwise; throws VacuumBreakdown on any cell at or below
/// the floor, carrying the offending cell and the state time.
VectorField velocity(const FluidState& s, const ModelParams& p);

/// Throws VacuumBreakdown if any cell density is at or below the floor.
void check_valid(const FluidState& s, const ModelParams& p);

}  // namespace nskfv
