#include "slab/extension.hpp"

#include <cmath>
#include <stdexcept>

namespace slab {

BallSamples::BallSamples(int d, int npts, std::vector<cplx> v, std::array<double, 2> c, double h)
    : dim(d), n(npts), center(c), half(h), values(std::move(v)) {
    validate();
}

BallSamples BallSamples::from_function(int d, int npts, const std::function<cplx(const double*)>& f,
                                       std::array<double, 2> c, double h) {
    BallSamples out;
    out.dim = d;
    out.n = npts;
    out.center = c;
    out.half = h;
    out.values.resize(out.size());
    double y[2] = {0.0, 0.0};
    if (d == 1) {
        for (int i = 0; i < npts; ++i) {
            y[0] = out.coord(0, i);
            out.values[i] = f(y);
        }
    } else {
        for (int i = 0; i < npts; ++i)
            for (int j = 0; j < npts; ++j) {
                y[0] = out.coord(0, i);
                y[1] = out.coord(1, j);
                out.values[static_cast<std::size_t>(i) * npts + j] = f(y);
            }
    }
    out.validate();
    return out;
}

std::size_t BallSamples::size() const {
    return dim == 1 ? static_cast<std::size_t>(n) : static_cast<std::size_t>(n) * n;
}

void BallSamples::validate() const {
    if (dim != 1 && dim != 2) throw std::invalid_argument("BallSamples: dim must be 1 or 2");
    if (n < 2) throw std::invalid_argument("BallSamples: need at least 2 points per axis");
    if (!(half > 0.0)) throw std::invalid_argument("BallSamples: half-width must be positive");
    for (int a = 0; a < dim; ++a)
        if (std::abs(center[a]) + half > 1.0 + 1e-12)
            throw std::invalid_argument("BallSamples: cube must lie in [-1,1]^d");
    if (values.size() != size()) throw std::invalid_argument("BallSamples: value count mismatch");
    for (const auto& z : values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("BallSamples: non-finite value");
}

int quadrature_points(double max_s, double max_xi) {
    const double need = 8.0 * (4.0 * std::abs(max_s) + 2.0 * std::abs(max_xi)) / (2.0 * pi);
    return std::max(16, static_cast<int>(std::ceil(need)));
}

namespace {

// Flattened nodes, |y|^2 and trapezoid weight of every node inside the unit ball.
struct Nodes {
    std::vector<double> y0, y1, r2, w;
    std::vector<cplx> f;
};

Nodes make_nodes(const BallSamples& f) {
    Nodes out;
    const double h = f.spacing();
    auto axis_w = [&](int i) { return (i == 0 || i == f.n - 1) ? 0.5 * h : h; };
    if (f.dim == 1) {
        for (int i = 0; i < f.n; ++i) {
            const double y = f.coord(0, i);
            if (std::abs(y) > 1.0 + 1e-14) continue;
            out.y0.push_back(y);
            out.y1.push_back(0.0);
            out.r2.push_back(y * y);
            out.w.push_back(axis_w(i));
            out.f.push_back(f.values[i]);
        }
    } else {
        for (int i = 0; i < f.n; ++i)
            for (int j = 0; j < f.n; ++j) {
                const double a = f.coord(0, i), b = f.coord(1, j);
                const double r2 = a * a + b * b;
                if (r2 > 1.0 + 1e-14) continue;
                out.y0.push_back(a);
                out.y1.push_back(b);
                out.r2.push_back(r2);
                out.w.push_back(axis_w(i) * axis_w(j));
                out.f.push_back(f.values[static_cast<std::size_t>(i) * f.n + j]);
            }
    }
    for (std::size_t k = 0; k < out.f.size(); ++k) out.f[k] *= out.w[k];
    return out;
}

cplx extend_one(const Nodes& nd, const EvalPoint& p) {
    cplx acc = 0.0;
    const std::size_t m = nd.f.size();
    for (std::size_t k = 0; k < m; ++k) {
        const double ph = p.s * nd.r2[k] - p.xi[0] * nd.y0[k] - p.xi[1] * nd.y1[k];
        acc += nd.f[k] * cplx(std::cos(ph), std::sin(ph));
    }
    return acc;
}

}  // namespace

std::vector<cplx> extend(const BallSamples& f, const std::vector<EvalPoint>& points, Exec exec) {
    f.validate();
    for (const auto& p : points)
        if (!std::isfinite(p.xi[0]) || !std::isfinite(p.xi[1]) || !std::isfinite(p.s))
            throw std::invalid_argument("extend: evaluation point has non-finite coordinates");
    const Nodes nd = make_nodes(f);
    std::vector<cplx> out(points.size());
    const long long np = static_cast<long long>(points.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < np; ++i) out[i] = extend_one(nd, points[i]);
    } else {
        for (long long i = 0; i < np; ++i) out[i] = extend_one(nd, points[i]);
    }
    return out;
}

ExtensionRegion ExtensionRegion::squared(double lambda) {
    ExtensionRegion r;
    r.lambda = lambda;
    const double rho = lambda * lambda;
    r.spatial = FrequencyWindow::sharp_annulus(3.0 * rho, 12.0 * rho);
    r.s_range = Interval{rho, 2.0 * rho};
    r.validate();
    return r;
}

ExtensionRegion ExtensionRegion::linear(double lambda) {
    ExtensionRegion r;
    r.lambda = lambda;
    r.spatial = FrequencyWindow::sharp_annulus(3.0 * lambda, 12.0 * lambda);
    r.s_range = Interval{lambda, 2.0 * lambda};
    r.validate();
    return r;
}

EvalPoint ExtensionRegion::map(const double* xi, double s, int dim) const {
    EvalPoint p;
    const double k = scaled ? s / rho() : 1.0;
    for (int a = 0; a < dim; ++a) p.xi[a] = k * xi[a];
    p.s = s;
    return p;
}

double ExtensionRegion::jacobian(double s, int dim) const {
    return scaled ? std::pow(s / rho(), dim) : 1.0;
}

void ExtensionRegion::validate() const {
    if (!(lambda > 1.0)) throw std::invalid_argument("ExtensionRegion: lambda must exceed 1");
    if (!(s_range.lo > 0.0) || !(s_range.hi > s_range.lo))
        throw std::invalid_argument("ExtensionRegion: s range must be positive and ordered");
    spatial.validate();
    if (!(spatial.inner > 0.0)) throw std::invalid_argument("ExtensionRegion: annulus must avoid 0");
}

RegionGrid region_grid(const ExtensionRegion& region, int dim, int points_per_axis, int s_points) {
    region.validate();
    if (dim != 1 && dim != 2) throw std::invalid_argument("region_grid: dim must be 1 or 2");
    if (points_per_axis < 2 || s_points < 2) throw std::invalid_argument("region_grid: too few points");
    RegionGrid g;
    g.dim = dim;
    const double R = region.spatial.outer;
    const double h = 2.0 * R / points_per_axis;
    const double cell = std::pow(h, dim);
    for (int i = 0; i < points_per_axis; ++i) {
        const double a = -R + (i + 0.5) * h;
        if (dim == 1) {
            if (region.spatial(std::abs(a)) > 0.0) {
                g.xi.push_back({a, 0.0});
                g.xi_measure.push_back(cell);
            }
            continue;
        }
        for (int j = 0; j < points_per_axis; ++j) {
            const double b = -R + (j + 0.5) * h;
            if (region.spatial(std::hypot(a, b)) > 0.0) {
                g.xi.push_back({a, b});
                g.xi_measure.push_back(cell);
            }
        }
    }
    for (int m = 0; m < s_points; ++m)
        g.s.push_back(region.s_range.lo + region.s_range.length() * m / (s_points - 1));
    g.s_weight = std::vector<double>(s_points, 0.0);
    for (int m = 0; m + 1 < s_points; ++m) {
        const double w = 0.5 * (g.s[m + 1] - g.s[m]);
        g.s_weight[m] += w;
        g.s_weight[m + 1] += w;
    }
    return g;
}

ScaledSamples scaled_extension(const BallSamples& f, const ExtensionRegion& region,
                               const RegionGrid& grid, Exec exec) {
    region.validate();
    if (grid.dim != f.dim) throw std::invalid_argument("scaled_extension: dimension mismatch");
    std::vector<EvalPoint> pts;
    pts.reserve(grid.s.size() * grid.xi.size());
    double max_s = 0.0, max_xi = 0.0;
    for (double s : grid.s)
        for (const auto& x : grid.xi) {
            EvalPoint p = region.map(x.data(), s, grid.dim);
            max_s = std::max(max_s, std::abs(p.s));
            max_xi = std::max(max_xi, std::hypot(p.xi[0], p.xi[1]));
            pts.push_back(p);
        }
    const int need = quadrature_points(max_s, max_xi);
    if (f.spacing() > 2.0 / (need - 1) * (1.0 + 1e-12))
        throw std::invalid_argument("scaled_extension: quadrature grid too coarse for the oscillation scale (need " +
                                    std::to_string(need) + " points per unit-cube axis)");
    ScaledSamples out;
    out.grid = grid;
    out.values = extend(f, pts, exec);
    for (double s : grid.s) out.jacobian.push_back(region.jacobian(s, grid.dim));
    return out;
}

double region_mixed_norm(const ScaledSamples& u, const ExtensionRegion& region, const Exponent& q,
                         const Exponent& r, bool with_jacobian) {
    const auto& g = u.grid;
    const std::size_t nx = g.xi.size(), ns = g.s.size();
    double outer = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
        const double win = region.spatial(std::hypot(g.xi[i][0], g.xi[i][1]));
        double inner = 0.0;
        for (std::size_t m = 0; m < ns; ++m) {
            const double a = std::abs(u.values[m * nx + i]);
            const double jac = with_jacobian ? u.jacobian[m] : 1.0;
            if (r.is_infinite())
                inner = std::max(inner, a);
            else
                inner += g.s_weight[m] * jac * std::pow(a, r.value());
        }
        if (!r.is_infinite()) inner = std::pow(inner, 1.0 / r.value());
        if (q.is_infinite())
            outer = std::max(outer, win > 0.0 ? inner : 0.0);
        else
            outer += win * g.xi_measure[i] * std::pow(inner, q.value());
    }
    return q.is_infinite() ? outer : std::pow(outer, 1.0 / q.value());
}

BallSamples galilean_modulate(const BallSamples& f, const std::array<double, 3>& omega) {
    f.validate();
    BallSamples out = f;
    const double wd = f.dim == 1 ? omega[1] : omega[2];
    for (std::size_t k = 0; k < f.size(); ++k) {
        double y[2] = {0.0, 0.0};
        if (f.dim == 1) {
            y[0] = f.coord(0, static_cast<int>(k));
        } else {
            y[0] = f.coord(0, static_cast<int>(k / f.n));
            y[1] = f.coord(1, static_cast<int>(k % f.n));
        }
        const double ph = omega[0] * y[0] + (f.dim == 2 ? omega[1] * y[1] : 0.0) - wd * (y[0] * y[0] + y[1] * y[1]);
        out.values[k] *= cplx(std::cos(ph), std::sin(ph));
    }
    return out;
}

}  // namespace slab
