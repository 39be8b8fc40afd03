#include "nskfv/timeint.hpp"

#include <algorithm>
#include <cmath>

namespace nskfv {

namespace {

FluidState lincomb(double a, const FluidState& s, double b, const FluidState& r, double t) {
    FluidState out(s.grid());
    out.t = t;
    const auto& sr = s.rho.data();
    const auto& rr = r.rho.data();
    for (std::size_t n = 0; n < sr.size(); ++n) {
        out.rho.data()[n] = a * sr[n] + b * rr[n];
        out.m.x.data()[n] = a * s.m.x.data()[n] + b * r.m.x.data()[n];
        out.m.y.data()[n] = a * s.m.y.data()[n] + b * r.m.y.data()[n];
    }
    return out;
}

FluidState euler_substep(const FluidState& s, double dt, const ModelParams& p, double t) {
    const auto [tend, rep] = assemble_rhs(s, p);
    FluidState out(s.grid());
    out.t = t;
    for (std::size_t n = 0; n < s.rho.data().size(); ++n) {
        out.rho.data()[n] = s.rho.data()[n] + dt * tend.d_rho.data()[n];
        out.m.x.data()[n] = s.m.x.data()[n] + dt * tend.d_m.x.data()[n];
        out.m.y.data()[n] = s.m.y.data()[n] + dt * tend.d_m.y.data()[n];
    }
    return out;
}

}  // namespace

void StepControl::validate() const {
    if (!(cfl > 0.0) || cfl > 1.0) throw ConfigError("StepControl: cfl must be in (0,1]");
    if (!(dt_max > 0.0)) throw ConfigError("StepControl: dt_max must be > 0");
    if (dt_fixed < 0.0) throw ConfigError("StepControl: dt_fixed must be >= 0");
    if (t_end < 0.0) throw ConfigError("StepControl: t_end must be >= 0");
    if (snapshot_stride < 1) throw ConfigError("StepControl: snapshot_stride must be >= 1");
    if (!(c_K > 0.0)) throw ConfigError("StepControl: c_K must be > 0");
}

double stable_dt(const FluidState& s, double lambda, const ModelParams& p,
                 const StepControl& ctrl) {
    check_valid(s, p);
    const GridSpec& g = s.grid();
    const double h_min = std::min(g.hx(), g.hy());

    double v_max = 0.0;
    double rho_min = std::numeric_limits<double>::infinity();
    double rho_max = 0.0;
    for (std::size_t n = 0; n < s.rho.data().size(); ++n) {
        const double rho = s.rho.data()[n];
        const double speed = std::hypot(s.m.x.data()[n], s.m.y.data()[n]) / rho +
                             std::sqrt(pressure_derivative(rho, p));
        v_max = std::max(v_max, speed);
        rho_min = std::min(rho_min, rho);
        rho_max = std::max(rho_max, rho);
    }

    constexpr double eps = 1e-30;
    const double adv = h_min / (2.0 * lambda + v_max);
    const double visc = h_min * h_min / (4.0 * (2.0 * p.mu + p.eta) / rho_min + eps);
    const double kort = h_min * h_min / (ctrl.c_K * std::sqrt(p.kappa * rho_max));
    return std::min(ctrl.cfl * std::min({adv, visc, kort}), ctrl.dt_max);
}

FluidState step(const FluidState& s, double dt, const ModelParams& p, RkMethod method) {
    if (!(dt > 0.0)) throw ConfigError("step: dt must be > 0");
    const double t1 = s.t + dt;
    if (method == RkMethod::Ssprk3) {
        const FluidState u1 = euler_substep(s, dt, p, t1);
        const FluidState u2 =
            lincomb(0.75, s, 0.25, euler_substep(u1, dt, p, t1), s.t + 0.5 * dt);
        return lincomb(1.0 / 3.0, s, 2.0 / 3.0, euler_substep(u2, dt, p, t1), t1);
    }
    // Classic RK4.
    const auto [k1, rep1] = assemble_rhs(s, p);
    FluidState s2 = s;
    s2.t = s.t + 0.5 * dt;
    s2.rho = axpy(s.rho, 0.5 * dt, k1.d_rho);
    s2.m.x = axpy(s.m.x, 0.5 * dt, k1.d_m.x);
    s2.m.y = axpy(s.m.y, 0.5 * dt, k1.d_m.y);
    const auto [k2, rep2] = assemble_rhs(s2, p);
    FluidState s3 = s;
    s3.t = s.t + 0.5 * dt;
    s3.rho = axpy(s.rho, 0.5 * dt, k2.d_rho);
    s3.m.x = axpy(s.m.x, 0.5 * dt, k2.d_m.x);
    s3.m.y = axpy(s.m.y, 0.5 * dt, k2.d_m.y);
    const auto [k3, rep3] = assemble_rhs(s3, p);
    FluidState s4 = s;
    s4.t = t1;
    s4.rho = axpy(s.rho, dt, k3.d_rho);
    s4.m.x = axpy(s.m.x, dt, k3.d_m.x);
    s4.m.y = axpy(s.m.y, dt, k3.d_m.y);
    const auto [k4, rep4] = assemble_rhs(s4, p);
    FluidState out = s;
    out.t = t1;
    const double c = dt / 6.0;
    for (std::size_t n = 0; n < s.rho.data().size(); ++n) {
        out.rho.data()[n] += c * (k1.d_rho.data()[n] + 2.0 * k2.d_rho.data()[n] +
                                  2.0 * k3.d_rho.data()[n] + k4.d_rho.data()[n]);
        out.m.x.data()[n] += c * (k1.d_m.x.data()[n] + 2.0 * k2.d_m.x.data()[n] +
                                  2.0 * k3.d_m.x.data()[n] + k4.d_m.x.data()[n]);
        out.m.y.data()[n] += c * (k1.d_m.y.data()[n] + 2.0 * k2.d_m.y.data()[n] +
                                  2.0 * k3.d_m.y.data()[n] + k4.d_m.y.data()[n]);
    }
    check_valid(out, p);
    return out;
}

const FluidState& Trajectory::snapshot_at(double t, double tol) const {
    const FluidState* best = nullptr;
    double best_d = tol;
    for (const auto& s : snapshots) {
        const double d = std::abs(s.t - t);
        if (d <= best_d) {
            best_d = d;
            best = &s;
        }
    }
    if (!best) throw ConfigError("trajectory: no snapshot at t=" + std::to_string(t));
    return *best;
}

Trajectory integrate_to(const FluidState& s0, const StepControl& ctrl, const ModelParams& p,
                        const std::vector<Observer>& observers) {
    ctrl.validate();
    p.validate();
    check_valid(s0, p);

    std::vector<double> boundaries = ctrl.forced_times;
    boundaries.push_back(ctrl.t_end);
    std::sort(boundaries.begin(), boundaries.end());

    const double t_eps = 1e-12 * std::max(1.0, ctrl.t_end);

    Trajectory traj;
    FluidState s = s0;
    auto [tend, rep] = assemble_rhs(s, p);
    LedgerRow row = record(s, tend, rep, 0.0, p);
    const double E0 = row.E_h;
    const double tol_E = ctrl.tol_E_rel * std::abs(E0);
    traj.ledger.rows.push_back(row);
    traj.snapshots.push_back(s);
    for (const auto& obs : observers) obs(s, row);

    long steps = 0;
    while (s.t < ctrl.t_end - t_eps) {
        double dt = (ctrl.dt_fixed > 0.0)
                        ? std::min(ctrl.dt_fixed, ctrl.dt_max)
                        : stable_dt(s, rep.lambda, p, ctrl);
        // Clip to the next forced time or t_end.
        double tb = ctrl.t_end;
        for (double b : boundaries)
            if (b > s.t + t_eps) {
                tb = b;
                break;
            }
        bool clipped = false;
        if (s.t + dt >= tb - t_eps) {
            dt = tb - s.t;
            clipped = true;
        }

        FluidState s_new(s.grid());
        int retries = 0;
        for (;;) {
            s_new = step(s, dt, p, ctrl.method);
            check_valid(s_new, p);
            const double E_new = discrete_energy(s_new, p);
            if (E_new - row.E_h <= tol_E) break;
            if (++retries > ctrl.max_retries)
                throw StabilityFailure(s.t, dt, "energy-monotonicity retry cap exceeded");
            dt *= 0.5;
            clipped = false;
        }
        if (clipped) s_new.t = tb;
        s = std::move(s_new);
        ++steps;

        std::tie(tend, rep) = assemble_rhs(s, p);
        row = record(s, tend, rep, dt, p);
        traj.ledger.rows.push_back(row);

        bool at_boundary = false;
        for (double b : boundaries)
            if (std::abs(s.t - b) <= t_eps) at_boundary = true;
        if (steps % ctrl.snapshot_stride == 0 || at_boundary || s.t >= ctrl.t_end - t_eps)
            traj.snapshots.push_back(s);
        for (const auto& obs : observers) obs(s, row);
    }
    return traj;
}

}  // namespace nskfv
