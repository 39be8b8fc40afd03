#include "nskfv/initial_data.hpp"

#include <cmath>

namespace nskfv {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 3-point Gauss-Legendre on [-1/2, 1/2].
constexpr double kGaussNode = 0.3872983346207417;  // sqrt(3/5)/2
constexpr double kNodes[3] = {-kGaussNode, 0.0, kGaussNode};
constexpr double kWeights[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

double bubble_profile_1d(double s, double w) {
    // exp(-sin^2(pi s)/w^2) for s in units of the period
    const double sn = std::sin(kPi * s);
    return std::exp(-sn * sn / (w * w));
}

}  // namespace

void InitExpr::validate() const {
    if (!(Lx > 0.0) || !(Ly > 0.0)) throw ConfigError("init: Lx, Ly must be > 0");
    if (!(rho_bar > 0.0)) throw ConfigError("init: rho_bar must be > 0");
    if (density == Density::PerturbedConstant && std::abs(amp) >= 1.0)
        throw ConfigError("init: |amp| must be < 1 to keep the density positive");
    if (density == Density::Bubble && !(bubble_w > 0.0))
        throw ConfigError("init: bubble_w must be > 0");
}

double InitExpr::rho(double x, double y) const {
    switch (density) {
        case Density::Constant:
            return rho_bar;
        case Density::PerturbedConstant:
            return rho_bar *
                   (1.0 + amp * std::cos(2.0 * kPi * px * x / Lx) *
                              std::cos(2.0 * kPi * qy * y / Ly));
        case Density::Bubble:
            return rho_bar + bubble_amp * bubble_profile_1d((x - bubble_x0) / Lx, bubble_w) *
                                 bubble_profile_1d((y - bubble_y0) / Ly, bubble_w);
    }
    return rho_bar;
}

void InitExpr::grad_rho(double x, double y, double& gx, double& gy) const {
    switch (density) {
        case Density::Constant:
            gx = gy = 0.0;
            return;
        case Density::PerturbedConstant: {
            const double ax = 2.0 * kPi * px / Lx;
            const double ay = 2.0 * kPi * qy / Ly;
            gx = -rho_bar * amp * ax * std::sin(ax * x) * std::cos(ay * y);
            gy = -rho_bar * amp * ay * std::cos(ax * x) * std::sin(ay * y);
            return;
        }
        case Density::Bubble: {
            const double sx = (x - bubble_x0) / Lx;
            const double sy = (y - bubble_y0) / Ly;
            const double fx = bubble_profile_1d(sx, bubble_w);
            const double fy = bubble_profile_1d(sy, bubble_w);
            const double w2 = bubble_w * bubble_w;
            gx = bubble_amp * fy * fx * (-kPi / (Lx * w2)) * std::sin(2.0 * kPi * sx);
            gy = bubble_amp * fx * fy * (-kPi / (Ly * w2)) * std::sin(2.0 * kPi * sy);
            return;
        }
    }
}

double InitExpr::ux(double x, double y) const {
    switch (velocity) {
        case Velocity::Zero:
            return 0.0;
        case Velocity::Shear:
            return vel_A * std::sin(2.0 * kPi * y / Ly);
        case Velocity::SolidMode:
            return vel_A * std::sin(2.0 * kPi * x / Lx + vel_phase);
    }
    return 0.0;
}

double InitExpr::uy(double x, double y) const {
    switch (velocity) {
        case Velocity::Zero:
        case Velocity::Shear:
            return 0.0;
        case Velocity::SolidMode:
            return vel_B * std::sin(2.0 * kPi * y / Ly);
    }
    return 0.0;
}

double InitExpr::total_mass() const {
    switch (density) {
        case Density::Constant:
        case Density::PerturbedConstant:
            // The trigonometric perturbation integrates to zero over full periods.
            return rho_bar * Lx * Ly;
        case Density::Bubble: {
            // int_0^1 exp(-sin^2(pi s)/w^2) ds = exp(-1/(2w^2)) I_0(1/(2w^2))
            const double a = 1.0 / (2.0 * bubble_w * bubble_w);
            const double f = std::exp(-a) * std::cyl_bessel_i(0.0, a);
            return rho_bar * Lx * Ly + bubble_amp * Lx * f * Ly * f;
        }
    }
    return rho_bar * Lx * Ly;
}

FluidState project(const InitExpr& expr, const GridSpec& grid, const ModelParams& p) {
    expr.validate();
    if (std::abs(expr.Lx - grid.Lx) > 1e-14 * grid.Lx ||
        std::abs(expr.Ly - grid.Ly) > 1e-14 * grid.Ly)
        throw ConfigError("project: expression and grid domain sizes differ");

    FluidState s(grid);
    const double hx = grid.hx();
    const double hy = grid.hy();
    for (int j = 0; j < grid.N; ++j)
        for (int i = 0; i < grid.M; ++i) {
            double r = 0.0, mx = 0.0, my = 0.0;
            for (int b = 0; b < 3; ++b)
                for (int a = 0; a < 3; ++a) {
                    const double x = grid.xc(i) + kNodes[a] * hx;
                    const double y = grid.yc(j) + kNodes[b] * hy;
                    const double w = kWeights[a] * kWeights[b];
                    const double rv = expr.rho(x, y);
                    if (!(rv > 0.0))
                        throw ConfigError("project: nonpositive density at quadrature node (x=" +
                                          std::to_string(x) + ", y=" + std::to_string(y) + ")");
                    r += w * rv;
                    mx += w * rv * expr.ux(x, y);
                    my += w * rv * expr.uy(x, y);
                }
            s.rho.at(i, j) = r;
            s.m.x.at(i, j) = mx;
            s.m.y.at(i, j) = my;
        }
    (void)p;
    return s;
}

double continuous_energy(const InitExpr& expr, const ModelParams& p, int min_cells) {
    expr.validate();
    const int M = min_cells;
    const int N = min_cells;
    const double hx = expr.Lx / M;
    const double hy = expr.Ly / N;
    double sum = 0.0;
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < M; ++i)
            for (int b = 0; b < 3; ++b)
                for (int a = 0; a < 3; ++a) {
                    const double x = (i + 0.5 + kNodes[a]) * hx;
                    const double y = (j + 0.5 + kNodes[b]) * hy;
                    const double w = kWeights[a] * kWeights[b];
                    const double rv = expr.rho(x, y);
                    const double mx = rv * expr.ux(x, y);
                    const double my = rv * expr.uy(x, y);
                    double gx = 0.0, gy = 0.0;
                    expr.grad_rho(x, y, gx, gy);
                    sum += w * (eta_tilde(rv, mx, my, p) +
                                0.5 * p.kappa * (gx * gx + gy * gy));
                }
    return hx * hy * sum;
}

InitialEnergyReport initial_energy_check(const InitExpr& expr,
                                         const std::vector<GridSpec>& grids,
                                         const ModelParams& p, double tol_rel) {
    if (grids.size() < 2) throw ConfigError("initial_energy_check: need >= 2 grids");
    InitialEnergyReport rep;
    rep.reference = continuous_energy(expr, p);
    const double tol = tol_rel * std::abs(rep.reference);
    rep.all_jensen_ok = true;
    rep.monotone_toward_reference = true;
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& g : grids) {
        FluidState s = project(expr, g, p);
        const double eh = discrete_energy(s, p);
        const bool jensen = eh <= rep.reference + tol;
        rep.levels.push_back({g.M, g.N, eh, jensen});
        rep.all_jensen_ok = rep.all_jensen_ok && jensen;
        if (eh < prev - tol) rep.monotone_toward_reference = false;
        prev = eh;
    }
    return rep;
}

}  // namespace nskfv
