#pragma once

#include <array>
#include <functional>
#include <vector>

#include "slab/grid.hpp"
#include "slab/rational.hpp"

namespace slab {

// Samples of a function on the uniform product grid over the cube
// center + [-half, half]^d (n points per axis, both endpoints included).
// The cube must lie in [-1,1]^d; the function is taken to vanish outside
// the unit ball.
struct BallSamples {
    int dim = 1;
    int n = 0;
    std::array<double, 2> center{0.0, 0.0};
    double half = 1.0;
    std::vector<cplx> values;

    BallSamples() = default;
    BallSamples(int dim, int n, std::vector<cplx> v, std::array<double, 2> center = {0.0, 0.0},
                double half = 1.0);
    static BallSamples from_function(int dim, int n, const std::function<cplx(const double*)>& f,
                                     std::array<double, 2> center = {0.0, 0.0}, double half = 1.0);

    double spacing() const { return 2.0 * half / (n - 1); }
    double coord(int axis, int i) const { return center[axis] - half + i * spacing(); }
    std::size_t size() const;
    void validate() const;
};

struct EvalPoint {
    std::array<double, 2> xi{0.0, 0.0};
    double s = 0.0;
};

// Points per axis so that the phase s|y|^2 - <xi,y> advances by less than
// pi/4 per cell on [-1,1]: 8 (4 max|s| + 2 max|xi|) / (2 pi), at least 16.
int quadrature_points(double max_s, double max_xi);

// Trapezoid evaluation of E f(xi, s) = int_{|y|<=1} f(y) e^{i s|y|^2 - i<xi,y>} dy.
std::vector<cplx> extend(const BallSamples& f, const std::vector<EvalPoint>& points,
                         Exec exec = Exec::parallel);

// Spatial window over A(rho) = {3 rho <= |xi| <= 12 rho} (or a sub-annulus)
// times s in [rho, 2 rho], with rho = lambda^2 or lambda. When scaled, points
// are pulled back through (xi, s) -> (s xi / rho, s).
struct ExtensionRegion {
    double lambda = 2.0;
    FrequencyWindow spatial;
    Interval s_range{4.0, 8.0};
    bool scaled = true;

    // A(lambda^2) x [lambda^2, 2 lambda^2].
    static ExtensionRegion squared(double lambda);
    // A(lambda) x [lambda, 2 lambda].
    static ExtensionRegion linear(double lambda);

    double rho() const { return s_range.lo; }
    EvalPoint map(const double* xi, double s, int dim) const;
    // |det| of the pullback at height s: (s / rho)^d, or 1 when not scaled.
    double jacobian(double s, int dim) const;
    void validate() const;
};

// Product evaluation grid: spatial points (with cell measures) times heights
// (with trapezoid weights).
struct RegionGrid {
    int dim = 1;
    std::vector<std::array<double, 2>> xi;
    std::vector<double> xi_measure;
    std::vector<double> s;
    std::vector<double> s_weight;
};

// Uniform subsample of the region: points_per_axis cells across [-12 rho, 12 rho]^d
// kept where the spatial window is positive, and s_points heights.
RegionGrid region_grid(const ExtensionRegion& region, int dim, int points_per_axis, int s_points);

struct ScaledSamples {
    RegionGrid grid;
    std::vector<cplx> values;      // values[m * xi.size() + i] at (xi_i, s_m)
    std::vector<double> jacobian;  // per height
};

// E f(s xi / rho, s) on the grid (E f(xi, s) when the region is not scaled).
// Throws when f has fewer points per axis than quadrature_points requires for
// the largest mapped frequency and height.
ScaledSamples scaled_extension(const BallSamples& f, const ExtensionRegion& region,
                               const RegionGrid& grid, Exec exec = Exec::parallel);

// (int (int |v|^r w ds)^{q/r} dxi)^{1/q} on the samples, window-weighted;
// with_jacobian multiplies each cell by the pullback Jacobian.
double region_mixed_norm(const ScaledSamples& u, const ExtensionRegion& region, const Exponent& q,
                         const Exponent& r, bool with_jacobian = false);

// f^w(y) = e^{i<w', y> - i w_{d+1} |y|^2} f(y); E f^w = E f(. - w).
// omega = (w_1, w_2, w_3) in d = 2 and (w_1, w_2, unused) in d = 1.
BallSamples galilean_modulate(const BallSamples& f, const std::array<double, 3>& omega);

}  // namespace slab
