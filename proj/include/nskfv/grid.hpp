#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "nskfv/errors.hpp"

namespace nskfv {

/// Periodic Cartesian grid on the rectangle (0,Lx) x (0,Ly) with M x N cells.
/// M, N and the side lengths are ground truth; spacings are derived.
struct GridSpec {
    double Lx = 1.0;
    double Ly = 1.0;
    int M = 3;
    int N = 3;

    GridSpec() = default;
    GridSpec(double lx, double ly, int m, int n) : Lx(lx), Ly(ly), M(m), N(n) {
        if (!(Lx > 0.0) || !(Ly > 0.0)) throw ConfigError("GridSpec: Lx, Ly must be > 0");
        if (M < 3 || N < 3) throw ConfigError("GridSpec: M, N must be >= 3");
    }

    double hx() const { return Lx / M; }
    double hy() const { return Ly / N; }
    double h() const { return hx() > hy() ? hx() : hy(); }
    double theta_x() const { return hx() / h(); }
    double theta_y() const { return hy() / h(); }
    double cell_area() const { return hx() * hy(); }
    std::size_t cells() const { return static_cast<std::size_t>(M) * static_cast<std::size_t>(N); }

    // Cell centers, x_i = i*hx, y_j = j*hy.
    double xc(int i) const { return i * hx(); }
    double yc(int j) const { return j * hy(); }

    bool operator==(const GridSpec&) const = default;
};

/// Cell-centered scalar values with fully periodic indexing.
/// Storage is row-major: j outer, i inner.
class ScalarField {
public:
    explicit ScalarField(const GridSpec& g, double fill = 0.0)
        : grid_(g), v_(g.cells(), fill) {}

    const GridSpec& grid() const { return grid_; }

    int wrap_i(int i) const {
        int m = grid_.M;
        i %= m;
        return i < 0 ? i + m : i;
    }
    int wrap_j(int j) const {
        int n = grid_.N;
        j %= n;
        return j < 0 ? j + n : j;
    }
    std::size_t flat(int i, int j) const {
        return static_cast<std::size_t>(j) * grid_.M + static_cast<std::size_t>(i);
    }

    double operator()(int i, int j) const { return v_[flat(wrap_i(i), wrap_j(j))]; }
    double& at(int i, int j) { return v_[flat(wrap_i(i), wrap_j(j))]; }

    const std::vector<double>& data() const { return v_; }
    std::vector<double>& data() { return v_; }

private:
    GridSpec grid_;
    std::vector<double> v_;
};

/// Two scalar components on one grid.
struct VectorField {
    ScalarField x;
    ScalarField y;

    explicit VectorField(const GridSpec& g, double fx = 0.0, double fy = 0.0)
        : x(g, fx), y(g, fy) {}
    VectorField(ScalarField fx, ScalarField fy) : x(std::move(fx)), y(std::move(fy)) {
        if (!(x.grid() == y.grid())) throw ConfigError("VectorField: components on different grids");
    }
    const GridSpec& grid() const { return x.grid(); }
};

enum class Axis { X, Y };
enum class DiffKind { Forward, Backward, Central };

/// result(i,j) = f(i+dx, j+dy) with periodic wrap.
ScalarField shift(const ScalarField& f, int dx, int dy);

/// Forward/backward/central difference quotient along one axis.
ScalarField diff(const ScalarField& f, Axis axis, DiffKind kind);

/// Five-point discrete Laplacian (backward of forward in each axis).
ScalarField laplacian_h(const ScalarField& f);

/// hx*hy * sum of all cell values, straight row-major loop.
double integrate(const ScalarField& f);

/// Squared dG seminorm: sum of squared backward jumps in both axes.
double dg_seminorm_sq(const ScalarField& f);
double dg_seminorm_sq(const VectorField& f);

double max_abs(const ScalarField& f);

/// (hx*hy * sum |f|^p)^(1/p).
double lp_norm(const ScalarField& f, double p);
/// Lp norm of the pointwise magnitude of a vector field.
double lp_norm(const VectorField& f, double p);

// Pointwise arithmetic used by the integrator and the scheme assembly.
// All require matching grids.
ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double c, const ScalarField& a);
ScalarField& operator+=(ScalarField& a, const ScalarField& b);
ScalarField& operator-=(ScalarField& a, const ScalarField& b);

/// a + c*b in one pass.
ScalarField axpy(const ScalarField& a, double c, const ScalarField& b);

bool all_finite(const ScalarField& f);

}  // namespace nskfv
