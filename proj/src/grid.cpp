#include "slab/grid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace slab {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

GridSpec::GridSpec(int dim, int points_per_axis, double extent, double max_frequency)
    : dim_(dim), n_(points_per_axis), extent_(extent) {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("GridSpec: dim must be 1 or 2");
    if (points_per_axis < 8 || !is_pow2(points_per_axis))
        throw std::invalid_argument("GridSpec: points_per_axis must be a power of two >= 8");
    if (!(extent > 0.0) || !std::isfinite(extent))
        throw std::invalid_argument("GridSpec: extent must be positive");
    if (max_frequency > 0.0 && !(nyquist() > max_frequency)) {
        std::ostringstream os;
        os << "GridSpec: Nyquist " << nyquist() << " does not exceed max frequency "
           << max_frequency;
        throw std::invalid_argument(os.str());
    }
}

std::size_t GridSpec::size() const {
    std::size_t s = 1;
    for (int a = 0; a < dim_; ++a) s *= static_cast<std::size_t>(n_);
    return s;
}

double GridSpec::cell_volume() const { return std::pow(spacing(), dim_); }

double GridSpec::freq(int k) const { return 2.0 * pi / extent_ * signed_index(k); }

SampledField::SampledField(GridSpec g, std::vector<cplx> v, Side s)
    : grid(g), values(std::move(v)), side(s) {
    validate();
}

SampledField SampledField::zeros(const GridSpec& g, Side s) {
    SampledField f;
    f.grid = g;
    f.values.assign(g.size(), cplx(0.0, 0.0));
    f.side = s;
    return f;
}

void SampledField::validate() const {
    if (values.size() != grid.size())
        throw std::invalid_argument("SampledField: value count does not match grid");
    for (const auto& z : values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("SampledField: non-finite entry");
}

SpaceTimeField::SpaceTimeField(GridSpec g, std::vector<double> t, Interval I, std::vector<cplx> v)
    : grid(g), times(std::move(t)), interval(I), values(std::move(v)) {
    validate();
}

void SpaceTimeField::validate() const {
    if (times.empty()) throw std::invalid_argument("SpaceTimeField: empty time list");
    for (std::size_t m = 0; m < times.size(); ++m) {
        if (!interval.contains(times[m]))
            throw std::invalid_argument("SpaceTimeField: time outside interval");
        if (m > 0 && !(times[m] > times[m - 1]))
            throw std::invalid_argument("SpaceTimeField: times not strictly increasing");
    }
    if (values.size() != grid.size() * times.size())
        throw std::invalid_argument("SpaceTimeField: value count mismatch");
}

double bump(double s) {
    if (!(std::abs(s) < 1.0)) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double smooth_step(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / s);
    const double b = std::exp(-1.0 / (1.0 - s));
    return a / (a + b);
}

FrequencyWindow FrequencyWindow::sharp_annulus(double inner, double outer) {
    FrequencyWindow w{WindowKind::sharp_annulus, inner, outer, inner, outer};
    w.validate();
    return w;
}

FrequencyWindow FrequencyWindow::smooth_annulus(double inner, double plateau_inner,
                                                double plateau_outer, double outer) {
    FrequencyWindow w{WindowKind::smooth_annulus, inner, outer, plateau_inner, plateau_outer};
    w.validate();
    return w;
}

FrequencyWindow FrequencyWindow::smooth_ball(double plateau_radius, double outer) {
    FrequencyWindow w{WindowKind::smooth_ball, 0.0, outer, 0.0, plateau_radius};
    w.validate();
    return w;
}

FrequencyWindow FrequencyWindow::smooth_shell(double inner, double outer) {
    const double mid = 0.5 * (inner + outer);
    FrequencyWindow w{WindowKind::smooth_shell, inner, outer, mid, mid};
    w.validate();
    return w;
}

void FrequencyWindow::validate() const {
    if (!(inner >= 0.0 && inner < outer))
        throw std::invalid_argument("FrequencyWindow: need 0 <= inner < outer");
    if (kind == WindowKind::smooth_annulus || kind == WindowKind::smooth_ball) {
        if (!(plateau_inner >= inner && plateau_inner <= plateau_outer && plateau_outer <= outer))
            throw std::invalid_argument("FrequencyWindow: plateau must lie inside [inner, outer]");
        if (kind == WindowKind::smooth_annulus && inner > 0.0 && plateau_inner == inner)
            throw std::invalid_argument("FrequencyWindow: smooth annulus needs a transition band");
        if (plateau_outer == outer)
            throw std::invalid_argument("FrequencyWindow: smooth window needs an outer transition band");
    }
}

double FrequencyWindow::operator()(double r) const {
    r = std::abs(r);
    switch (kind) {
        case WindowKind::sharp_annulus:
            return (r >= inner && r <= outer) ? 1.0 : 0.0;
        case WindowKind::smooth_shell: {
            const double half = 0.5 * (outer - inner);
            return bump((r - 0.5 * (inner + outer)) / half);
        }
        case WindowKind::smooth_annulus:
        case WindowKind::smooth_ball: {
            if (r <= inner && inner > 0.0) return 0.0;
            if (r >= outer) return 0.0;
            double up = 1.0;
            if (plateau_inner > inner) up = smooth_step((r - inner) / (plateau_inner - inner));
            double down = smooth_step((outer - r) / (outer - plateau_outer));
            return up * down;
        }
    }
    return 0.0;
}

std::string FrequencyWindow::describe() const {
    std::ostringstream os;
    switch (kind) {
        case WindowKind::sharp_annulus: os << "sharp_annulus"; break;
        case WindowKind::smooth_annulus: os << "smooth_annulus"; break;
        case WindowKind::smooth_ball: os << "smooth_ball"; break;
        case WindowKind::smooth_shell: os << "smooth_shell"; break;
    }
    os << "[" << inner << "," << outer << "]";
    if (kind == WindowKind::smooth_annulus || kind == WindowKind::smooth_ball)
        os << " plateau[" << plateau_inner << "," << plateau_outer << "]";
    return os.str();
}

std::string profile_name() { return "exp(-1/(1-s^2)) bump, exp(-1/s) step"; }

}  // namespace slab
