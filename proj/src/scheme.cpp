#include "nskfv/scheme.hpp"

#include <cmath>

namespace nskfv {

namespace {

ScalarField pressure_field(const ScalarField& rho, const ModelParams& p) {
    ScalarField out(rho.grid());
    const auto& in = rho.data();
    for (std::size_t n = 0; n < in.size(); ++n) out.data()[n] = p.k * std::pow(in[n], p.gamma);
    return out;
}

// Second-difference helper: backward of forward along the given axes.
ScalarField d_mb_pf(const ScalarField& f, Axis minus_axis, Axis plus_axis) {
    return diff(diff(f, plus_axis, DiffKind::Forward), minus_axis, DiffKind::Backward);
}

}  // namespace

LambdaReport compute_lambda(const FluidState& s, const ModelParams& p) {
    check_valid(s, p);
    const GridSpec& g = s.grid();
    LambdaReport rep;
    for (int j = 0; j < g.N; ++j)
        for (int i = 0; i < g.M; ++i) {
            const double rho = s.rho(i, j);
            const double ux = s.m.x(i, j) / rho;
            const double uy = s.m.y(i, j) / rho;
            const double speed = std::hypot(ux, uy) + std::sqrt(pressure_derivative(rho, p));
            if (speed > rep.max_speed) {
                rep.max_speed = speed;
                rep.argmax_i = i;
                rep.argmax_j = j;
            }
        }
    rep.lambda = (p.lambda_policy == LambdaPolicy::Fixed) ? p.lambda_fixed : 0.5 * rep.max_speed;
    return rep;
}

ScalarField rhs_continuity(const FluidState& s, double lambda, const ModelParams& p) {
    check_valid(s, p);
    const GridSpec& g = s.grid();
    ScalarField out = laplacian_h(s.rho);
    const double hl = g.h() * lambda;
    for (double& v : out.data()) v *= hl;
    out -= diff(s.m.x, Axis::X, DiffKind::Central);
    out -= diff(s.m.y, Axis::Y, DiffKind::Central);
    return out;
}

VectorField rhs_momentum_convective(const FluidState& s, double lambda, const ModelParams& p) {
    const GridSpec& g = s.grid();
    const VectorField u = velocity(s, p);
    const ScalarField pr = pressure_field(s.rho, p);
    const double hl = g.h() * lambda;

    // x: -cx(rho u^2) - cy(rho u v) - cx p + h*lambda*Lap(rho u)
    ScalarField fx = hl * laplacian_h(s.m.x);
    fx -= diff(s.m.x * u.x, Axis::X, DiffKind::Central);
    fx -= diff(s.m.x * u.y, Axis::Y, DiffKind::Central);
    fx -= diff(pr, Axis::X, DiffKind::Central);

    // y: -cy(rho v^2) - cx(rho u v) - cy p + h*lambda*Lap(rho v)
    ScalarField fy = hl * laplacian_h(s.m.y);
    fy -= diff(s.m.y * u.y, Axis::Y, DiffKind::Central);
    fy -= diff(s.m.y * u.x, Axis::X, DiffKind::Central);
    fy -= diff(pr, Axis::Y, DiffKind::Central);

    return {std::move(fx), std::move(fy)};
}

VectorField rhs_momentum_viscous(const FluidState& s, const ModelParams& p) {
    const GridSpec& g = s.grid();
    if (p.ek_mode()) return VectorField(g);
    const VectorField u = velocity(s, p);

    // x: mu (bx fx u + by fy u + by fx v - bx fy v) + eta (bx fx u + bx fy v)
    ScalarField fx =
        p.mu * (d_mb_pf(u.x, Axis::X, Axis::X) + d_mb_pf(u.x, Axis::Y, Axis::Y) +
                d_mb_pf(u.y, Axis::Y, Axis::X) - d_mb_pf(u.y, Axis::X, Axis::Y));
    fx += p.eta * (d_mb_pf(u.x, Axis::X, Axis::X) + d_mb_pf(u.y, Axis::X, Axis::Y));

    // y: mu (bx fy u + by fy v + bx fx v - by fx u) + eta (by fx u + by fy v)
    ScalarField fy =
        p.mu * (d_mb_pf(u.x, Axis::X, Axis::Y) + d_mb_pf(u.y, Axis::Y, Axis::Y) +
                d_mb_pf(u.y, Axis::X, Axis::X) - d_mb_pf(u.x, Axis::Y, Axis::X));
    fy += p.eta * (d_mb_pf(u.x, Axis::Y, Axis::X) + d_mb_pf(u.y, Axis::Y, Axis::Y));

    return {std::move(fx), std::move(fy)};
}

VectorField rhs_momentum_korteweg(const FluidState& s, const ModelParams& p) {
    // Transcription table, x-component (y-component has x and y swapped):
    //   term1: bx[ (rho_{i,j} Lap rho_{i+1,j} + rho_{i+1,j} Lap rho_{i,j}) / 2 ]
    //   term2: (1/2) bx[ (fx rho)^2 ]
    //   term3: (1/2) bx[ by rho_{i+1,j} * by rho_{i,j} ]
    //   term4: by[ cx rho * fy rho ]
    // with the tendency contribution kappa*(term1 - term2 + term3 - term4).
    const ScalarField& rho = s.rho;
    const ScalarField lap = laplacian_h(rho);

    const ScalarField a_x = 0.5 * (rho * shift(lap, 1, 0) + shift(rho, 1, 0) * lap);
    const ScalarField gxp = diff(rho, Axis::X, DiffKind::Forward);
    const ScalarField gym = diff(rho, Axis::Y, DiffKind::Backward);
    const ScalarField gxc = diff(rho, Axis::X, DiffKind::Central);
    const ScalarField gyp = diff(rho, Axis::Y, DiffKind::Forward);

    ScalarField fx = diff(a_x, Axis::X, DiffKind::Backward);
    fx = axpy(fx, -0.5, diff(gxp * gxp, Axis::X, DiffKind::Backward));
    fx = axpy(fx, 0.5, diff(shift(gym, 1, 0) * gym, Axis::X, DiffKind::Backward));
    fx = axpy(fx, -1.0, diff(gxc * gyp, Axis::Y, DiffKind::Backward));

    const ScalarField a_y = 0.5 * (rho * shift(lap, 0, 1) + shift(rho, 0, 1) * lap);
    const ScalarField gxm = diff(rho, Axis::X, DiffKind::Backward);
    const ScalarField gyc = diff(rho, Axis::Y, DiffKind::Central);

    ScalarField fy = diff(a_y, Axis::Y, DiffKind::Backward);
    fy = axpy(fy, -0.5, diff(gyp * gyp, Axis::Y, DiffKind::Backward));
    fy = axpy(fy, 0.5, diff(shift(gxm, 0, 1) * gxm, Axis::Y, DiffKind::Backward));
    fy = axpy(fy, -1.0, diff(gyc * gxp, Axis::X, DiffKind::Backward));

    fx = p.kappa * fx;
    fy = p.kappa * fy;
    return {std::move(fx), std::move(fy)};
}

VectorField rhs_momentum(const FluidState& s, double lambda, const ModelParams& p) {
    VectorField out = rhs_momentum_convective(s, lambda, p);
    const VectorField visc = rhs_momentum_viscous(s, p);
    const VectorField kort = rhs_momentum_korteweg(s, p);
    out.x += visc.x;
    out.x += kort.x;
    out.y += visc.y;
    out.y += kort.y;
    return out;
}

std::pair<Tendency, LambdaReport> assemble_rhs(const FluidState& s, const ModelParams& p) {
    const LambdaReport rep = compute_lambda(s, p);
    Tendency t(s.grid());
    t.d_rho = rhs_continuity(s, rep.lambda, p);
    t.d_m = rhs_momentum(s, rep.lambda, p);
    return {std::move(t), rep};
}

double energy_rate(const FluidState& s, const Tendency& dt, const ModelParams& p) {
    const GridSpec& g = s.grid();
    const double ihx = 1.0 / g.hx();
    const double ihy = 1.0 / g.hy();
    const double pp = p.k * p.gamma / (p.gamma - 1.0);  // P'(rho) = pp * rho^(gamma-1)
    double sum = 0.0;
    for (int j = 0; j < g.N; ++j)
        for (int i = 0; i < g.M; ++i) {
            const double rho = s.rho(i, j);
            const double mx = s.m.x(i, j);
            const double my = s.m.y(i, j);
            const double detarho = -(mx * mx + my * my) / (2.0 * rho * rho) +
                                   pp * std::pow(rho, p.gamma - 1.0);
            sum += detarho * dt.d_rho(i, j) +
                   (mx * dt.d_m.x(i, j) + my * dt.d_m.y(i, j)) / rho;
            const double gx = (s.rho(i + 1, j) - rho) * ihx;
            const double gy = (s.rho(i, j + 1) - rho) * ihy;
            const double dgx = (dt.d_rho(i + 1, j) - dt.d_rho(i, j)) * ihx;
            const double dgy = (dt.d_rho(i, j + 1) - dt.d_rho(i, j)) * ihy;
            sum += p.kappa * (gx * dgx + gy * dgy);
        }
    return g.cell_area() * sum;
}

DissipationTerms dissipation_terms(const FluidState& s, double lambda, const ModelParams& p) {
    const GridSpec& g = s.grid();
    DissipationTerms d;

    if (!p.ek_mode()) {
        const VectorField u = velocity(s, p);
        const ScalarField a = diff(u.x, Axis::X, DiffKind::Forward);
        const ScalarField b = diff(u.x, Axis::Y, DiffKind::Forward);
        const ScalarField c = diff(u.y, Axis::X, DiffKind::Forward);
        const ScalarField e = diff(u.y, Axis::Y, DiffKind::Forward);
        double dev2 = 0.0, div2 = 0.0;
        for (std::size_t n = 0; n < a.data().size(); ++n) {
            const double ad = a.data()[n] - e.data()[n];
            const double bc = b.data()[n] + c.data()[n];
            dev2 += 0.5 * ad * ad + 0.5 * bc * bc;  // |dev D+(u)|^2
            const double dv = a.data()[n] + e.data()[n];
            div2 += dv * dv;
        }
        d.visc_dev = 2.0 * p.mu * g.cell_area() * dev2;
        d.visc_div = p.eta * g.cell_area() * div2;
    }

    const ScalarField lap = laplacian_h(s.rho);
    double lap2 = 0.0;
    for (double v : lap.data()) lap2 += v * v;
    d.rusanov = p.kappa * lambda * g.h() * g.cell_area() * lap2;
    return d;
}

}  // namespace nskfv
