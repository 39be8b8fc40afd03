#pragma once

#include <string>
#include <vector>

#include "nskfv/state.hpp"

namespace nskfv {

/// Analytic initial condition on the torus (0,Lx) x (0,Ly).
struct InitExpr {
    enum class Density { Constant, PerturbedConstant, Bubble };
    enum class Velocity { Zero, Shear, SolidMode };

    double Lx = 1.0;
    double Ly = 1.0;

    Density density = Density::Constant;
    double rho_bar = 1.0;
    double amp = 0.0;   // perturbed-constant amplitude a
    int px = 1;         // x mode count
    int qy = 1;         // y mode count
    double bubble_amp = 0.0;
    double bubble_w = 0.25;
    double bubble_x0 = 0.5;
    double bubble_y0 = 0.5;

    Velocity velocity = Velocity::Zero;
    double vel_A = 0.0;
    double vel_B = 0.0;
    double vel_phase = 0.0;

    double rho(double x, double y) const;
    /// Analytic gradient of the density (for the continuous-energy reference).
    void grad_rho(double x, double y, double& gx, double& gy) const;
    double ux(double x, double y) const;
    double uy(double x, double y) const;

    /// Analytic total mass (closed form per catalog entry).
    double total_mass() const;

    void validate() const;
};

/// Cell averages of (rho_0, rho_0 u_0) by tensor 3x3 Gauss-Legendre quadrature
/// per cell. Throws ConfigError naming the location if rho_0 <= 0 at a node.
FluidState project(const InitExpr& expr, const GridSpec& grid, const ModelParams& p);

/// Continuous energy E(rho_0, m_0) by composite 3x3 Gauss quadrature on a fine
/// subdivision (at least `min_cells` per axis).
double continuous_energy(const InitExpr& expr, const ModelParams& p, int min_cells = 256);

struct InitialEnergyReport {
    struct Level {
        int M, N;
        double E_h0;
        bool jensen_ok;  // E_h0 <= reference + tol
    };
    double reference = 0.0;  // fine-quadrature continuous energy
    std::vector<Level> levels;
    bool monotone_toward_reference = false;
    bool all_jensen_ok = false;
};

/// Jensen check: discrete initial energy never exceeds the continuous energy
/// (plus tol), and approaches it under refinement.
InitialEnergyReport initial_energy_check(const InitExpr& expr,
                                         const std::vector<GridSpec>& grids,
                                         const ModelParams& p, double tol_rel = 1e-8);

}  // namespace nskfv
