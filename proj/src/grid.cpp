#include "nskfv/grid.hpp"

#include <cmath>

namespace nskfv {

namespace {

void require_same_grid(const ScalarField& a, const ScalarField& b) {
    if (!(a.grid() == b.grid())) throw ConfigError("field operation: grids differ");
}

}  // namespace

ScalarField shift(const ScalarField& f, int dx, int dy) {
    const GridSpec& g = f.grid();
    ScalarField out(g);
    for (int j = 0; j < g.N; ++j)
        for (int i = 0; i < g.M; ++i)
            out.at(i, j) = f(i + dx, j + dy);
    return out;
}

ScalarField diff(const ScalarField& f, Axis axis, DiffKind kind) {
    const GridSpec& g = f.grid();
    ScalarField out(g);
    const int di = (axis == Axis::X) ? 1 : 0;
    const int dj = (axis == Axis::Y) ? 1 : 0;
    const double hs = (axis == Axis::X) ? g.hx() : g.hy();
    switch (kind) {
        case DiffKind::Forward:
            for (int j = 0; j < g.N; ++j)
                for (int i = 0; i < g.M; ++i)
                    out.at(i, j) = (f(i + di, j + dj) - f(i, j)) / hs;
            break;
        case DiffKind::Backward:
            for (int j = 0; j < g.N; ++j)
                for (int i = 0; i < g.M; ++i)
                    out.at(i, j) = (f(i, j) - f(i - di, j - dj)) / hs;
            break;
        case DiffKind::Central:
            for (int j = 0; j < g.N; ++j)
                for (int i = 0; i < g.M; ++i)
                    out.at(i, j) = (f(i + di, j + dj) - f(i - di, j - dj)) / (2.0 * hs);
            break;
    }
    return out;
}

ScalarField laplacian_h(const ScalarField& f) {
    const GridSpec& g = f.grid();
    ScalarField out(g);
    const double ihx2 = 1.0 / (g.hx() * g.hx());
    const double ihy2 = 1.0 / (g.hy() * g.hy());
    for (int j = 0; j < g.N; ++j)
        for (int i = 0; i < g.M; ++i)
            out.at(i, j) = (f(i + 1, j) - 2.0 * f(i, j) + f(i - 1, j)) * ihx2 +
                           (f(i, j + 1) - 2.0 * f(i, j) + f(i, j - 1)) * ihy2;
    return out;
}

double integrate(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.data()) s += v;
    return f.grid().cell_area() * s;
}

double dg_seminorm_sq(const ScalarField& f) {
    const GridSpec& g = f.grid();
    double s = 0.0;
    for (int j = 0; j < g.N; ++j)
        for (int i = 0; i < g.M; ++i) {
            const double jx = f(i, j) - f(i - 1, j);
            const double jy = f(i, j) - f(i, j - 1);
            s += jx * jx + jy * jy;
        }
    return s;
}

double dg_seminorm_sq(const VectorField& f) {
    return dg_seminorm_sq(f.x) + dg_seminorm_sq(f.y);
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.data()) m = std::max(m, std::abs(v));
    return m;
}

double lp_norm(const ScalarField& f, double p) {
    double s = 0.0;
    for (double v : f.data()) s += std::pow(std::abs(v), p);
    return std::pow(f.grid().cell_area() * s, 1.0 / p);
}

double lp_norm(const VectorField& f, double p) {
    double s = 0.0;
    const auto& vx = f.x.data();
    const auto& vy = f.y.data();
    for (std::size_t n = 0; n < vx.size(); ++n)
        s += std::pow(std::hypot(vx[n], vy[n]), p);
    return std::pow(f.grid().cell_area() * s, 1.0 / p);
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a, b);
    ScalarField out = a;
    for (std::size_t n = 0; n < out.data().size(); ++n) out.data()[n] += b.data()[n];
    return out;
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a, b);
    ScalarField out = a;
    for (std::size_t n = 0; n < out.data().size(); ++n) out.data()[n] -= b.data()[n];
    return out;
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a, b);
    ScalarField out = a;
    for (std::size_t n = 0; n < out.data().size(); ++n) out.data()[n] *= b.data()[n];
    return out;
}

ScalarField operator*(double c, const ScalarField& a) {
    ScalarField out = a;
    for (double& v : out.data()) v *= c;
    return out;
}

ScalarField& operator+=(ScalarField& a, const ScalarField& b) {
    require_same_grid(a, b);
    for (std::size_t n = 0; n < a.data().size(); ++n) a.data()[n] += b.data()[n];
    return a;
}

ScalarField& operator-=(ScalarField& a, const ScalarField& b) {
    require_same_grid(a, b);
    for (std::size_t n = 0; n < a.data().size(); ++n) a.data()[n] -= b.data()[n];
    return a;
}

ScalarField axpy(const ScalarField& a, double c, const ScalarField& b) {
    require_same_grid(a, b);
    ScalarField out = a;
    for (std::size_t n = 0; n < out.data().size(); ++n) out.data()[n] += c * b.data()[n];
    return out;
}

bool all_finite(const ScalarField& f) {
    for (double v : f.data())
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace nskfv
