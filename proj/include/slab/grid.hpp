#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace slab {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Execution policy for kernels that have both an OpenMP path and a serial
// reference path. Both paths produce identical results.
enum class Exec { serial, parallel };

struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    double length() const { return hi - lo; }
    bool contains(double t) const { return t >= lo && t <= hi; }
};

// Uniform periodic grid on [-L/2, L/2)^dim. Index layout is row-major with
// axis 0 slowest; sample i along an axis sits at -L/2 + i*h.
class GridSpec {
public:
    GridSpec() = default;
    // max_frequency = 0 skips the Nyquist check.
    GridSpec(int dim, int points_per_axis, double extent, double max_frequency = 0.0);

    int dim() const { return dim_; }
    int n() const { return n_; }
    double extent() const { return extent_; }
    double spacing() const { return extent_ / n_; }
    std::size_t size() const;
    double nyquist() const { return pi * n_ / extent_; }
    double cell_volume() const;

    double coord(int i) const { return -0.5 * extent_ + i * spacing(); }
    // Angular frequency of FFT index k (signed wavenumber times 2*pi/L).
    double freq(int k) const;
    int signed_index(int k) const { return k < n_ / 2 ? k : k - n_; }

    bool operator==(const GridSpec& o) const {
        return dim_ == o.dim_ && n_ == o.n_ && extent_ == o.extent_;
    }

private:
    int dim_ = 1;
    int n_ = 0;
    double extent_ = 0.0;
};

enum class Side { space, frequency };

struct SampledField {
    GridSpec grid;
    std::vector<cplx> values;
    Side side = Side::space;

    SampledField() = default;
    SampledField(GridSpec g, std::vector<cplx> v, Side s = Side::space);
    static SampledField zeros(const GridSpec& g, Side s = Side::space);

    void validate() const;
};

// Propagated field, stored time-major: values[m * grid.size() + j].
struct SpaceTimeField {
    GridSpec grid;
    std::vector<double> times;
    Interval interval;
    std::vector<cplx> values;

    SpaceTimeField() = default;
    SpaceTimeField(GridSpec g, std::vector<double> t, Interval I, std::vector<cplx> v);

    const cplx* slice(std::size_t m) const { return values.data() + m * grid.size(); }
    void validate() const;
};

// Smooth profiles. bump(s) = exp(-1/(1-s^2)) on (-1,1), rescaled so bump(0) = 1.
double bump(double s);
// Smooth monotone step: 0 for s <= 0, 1 for s >= 1.
double smooth_step(double s);

enum class WindowKind { sharp_annulus, smooth_annulus, smooth_ball, smooth_shell };

// Radial frequency cutoff. Smooth kinds are 1 on [plateau_inner, plateau_outer]
// and vanish outside [inner, outer]; smooth_shell is a bump centred between
// inner and outer with no plateau.
struct FrequencyWindow {
    WindowKind kind = WindowKind::sharp_annulus;
    double inner = 0.0;
    double outer = 1.0;
    double plateau_inner = 0.0;
    double plateau_outer = 1.0;

    static FrequencyWindow sharp_annulus(double inner, double outer);
    static FrequencyWindow smooth_annulus(double inner, double plateau_inner,
                                          double plateau_outer, double outer);
    static FrequencyWindow smooth_ball(double plateau_radius, double outer);
    static FrequencyWindow smooth_shell(double inner, double outer);

    double operator()(double radius) const;
    void validate() const;
    std::string describe() const;
};

std::string profile_name();

}  // namespace slab
