#include "nskfv/state.hpp"

#include <cmath>

namespace nskfv {

void ModelParams::validate() const {
    if (!(k > 0.0)) throw ConfigError("params: k must be > 0");
    if (!(gamma > 1.0)) throw ConfigError("params: gamma must be > 1");
    if (!(kappa > 0.0)) throw ConfigError("params: kappa must be > 0");
    if (mu < 0.0 || eta < 0.0) throw ConfigError("params: mu, eta must be >= 0");
    if (!(cfl > 0.0) || cfl > 1.0) throw ConfigError("params: cfl must be in (0,1]");
    if (!(rho_floor > 0.0)) throw ConfigError("params: rho_floor must be > 0");
    if (lambda_policy == LambdaPolicy::Fixed && lambda_fixed < 0.0)
        throw ConfigError("params: fixed lambda must be >= 0");
}

double pressure(double rho, const ModelParams& p) {
    if (rho < 0.0) throw ConfigError("pressure: negative density");
    return p.k * std::pow(rho, p.gamma);
}

double pressure_potential(double rho, const ModelParams& p) {
    if (rho < 0.0) throw ConfigError("pressure_potential: negative density");
    return p.k * std::pow(rho, p.gamma) / (p.gamma - 1.0);
}

double pressure_derivative(double rho, const ModelParams& p) {
    if (rho < 0.0) throw ConfigError("pressure_derivative: negative density");
    return p.k * p.gamma * std::pow(rho, p.gamma - 1.0);
}

double eta_tilde(double rho, double mx, double my, const ModelParams& p) {
    if (rho > 0.0)
        return (mx * mx + my * my) / (2.0 * rho) + pressure_potential(rho, p);
    if (rho == 0.0 && mx == 0.0 && my == 0.0) return 0.0;
    return std::numeric_limits<double>::infinity();
}

double FluidState::min_rho() const {
    double mn = std::numeric_limits<double>::infinity();
    for (double v : rho.data()) mn = std::min(mn, v);
    return mn;
}

double discrete_energy(const FluidState& s, const ModelParams& p) {
    const GridSpec& g = s.grid();
    const double ihx = 1.0 / g.hx();
    const double ihy = 1.0 / g.hy();
    double sum = 0.0;
    for (int j = 0; j < g.N; ++j)
        for (int i = 0; i < g.M; ++i) {
            const double gx = (s.rho(i + 1, j) - s.rho(i, j)) * ihx;
            const double gy = (s.rho(i, j + 1) - s.rho(i, j)) * ihy;
            sum += eta_tilde(s.rho(i, j), s.m.x(i, j), s.m.y(i, j), p) +
                   0.5 * p.kappa * (gx * gx + gy * gy);
        }
    return g.cell_area() * sum;
}

VectorField velocity(const FluidState& s, const ModelParams& p) {
    check_valid(s, p);
    const GridSpec& g = s.grid();
    VectorField u(g);
    for (int j = 0; j < g.N; ++j)
        for (int i = 0; i < g.M; ++i) {
            u.x.at(i, j) = s.m.x(i, j) / s.rho(i, j);
            u.y.at(i, j) = s.m.y(i, j) / s.rho(i, j);
        }
    return u;
}

void check_valid(const FluidState& s, const ModelParams& p) {
    const GridSpec& g = s.grid();
    for (int j = 0; j < g.N; ++j)
        for (int i = 0; i < g.M; ++i)
            if (!(s.rho(i, j) > p.rho_floor))
                throw VacuumBreakdown(i, j, s.t, s.rho(i, j));
}

}  // namespace nskfv
