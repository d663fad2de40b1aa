#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "slab/extension.hpp"
#include "slab/grid.hpp"
#include "slab/norms.hpp"
#include "slab/rational.hpp"

namespace slab {

enum class ExtremizerKind { focusing, knapp_traveling, plate, besicovitch_family, bochner_riesz };

ExtremizerKind parse_extremizer_kind(const std::string& name);
std::string extremizer_kind_name(ExtremizerKind k);

struct ExtremizerSpec {
    ExtremizerKind kind = ExtremizerKind::focusing;
    double scale = 8.0;  // lambda, or delta for bochner_riesz
    int dim = 1;
    std::map<std::string, double> aux;

    double aux_or(const std::string& key, double fallback) const;
    void validate() const;
};

// Radial profile of the focusing datum: a bump on 1 < r < 2.
double focusing_profile(double r);

// Grids sized for the propagated datum over t in [0, 1].
GridSpec focusing_grid(double lambda, int dim);
GridSpec knapp_grid(double lambda, double eps);
GridSpec plate_grid(double lambda);

// f^(xi) = e^{i|xi|^2/2} eta(xi / lambda); refocuses at x = 0, t = 1/2.
SampledField focusing(double lambda, const GridSpec& g);
// g^(xi) = chi(|xi - lambda e_1|), chi a bump of radius eps.
SampledField knapp_traveling(double lambda, double eps, const GridSpec& g);
// h^(eta) = phi(|eta'|) lambda phi(lambda (eta_1 - lambda)) (no eta' factor in d = 1).
SampledField plate(double lambda, const GridSpec& g);

// Observables of the three families on their default grids.
// |U f(0, 1/2)| for the focusing datum, d = 1 or 2.
double focusing_peak(double lambda, int dim);
// min |U g(x, t)| over 0 <= x <= lambda, |t - x / (2 lambda)| <= c / lambda,
// with t on 17 uniform samples of [0, 1/2].
double knapp_tube_floor(double lambda, double eps, double c = 0.1);
// ||U g||_{L^q_x L^r_t[0, 1/2]} / ||g||_2 for the Knapp datum.
double knapp_mixed_ratio(double lambda, double eps, const Exponent& q, const Exponent& r);
// min |U h(x, t)| over |x| <= lambda / 10, t in {-1/10, 0, 1/10}.
double plate_floor(double lambda);

// Parallelogram with vertices center +- e1 +- e2 in a coordinate plane.
struct Parallelogram {
    std::array<double, 2> center{0.0, 0.0};
    std::array<double, 2> e1{1.0, 0.0};
    std::array<double, 2> e2{0.0, 1.0};

    double area() const;
    std::array<std::array<double, 2>, 4> vertices(const std::array<double, 2>& shift) const;
};

// Exact vertex data kept alongside the floating-point shapes.
struct ExactParallelogram {
    std::array<Rational, 2> center, e1, e2, shift;
};

// Shapes R_j with translations v_j, drawn in a coordinate plane; in d = 2 the
// family is the product with [-extra_half_width, extra_half_width] in the
// remaining coordinate.
struct RectanglePacking {
    double lambda = 0.0;
    int dim = 1;
    double extra_half_width = 0.0;
    std::vector<Parallelogram> shapes;
    std::vector<std::array<double, 2>> translations;
    std::vector<ExactParallelogram> exact;

    std::size_t size() const { return shapes.size(); }
    void validate() const;
};

// Largest integer strictly below lambda / 10.
int packing_count(long long lambda);

// R_j = {|xi_1 - 2 j s / lambda| <= lambda/10, |s| <= lambda^2/100}, j = 1..N,
// translated by the binary-digit Perron-tree scheme inside lambda^2 <= s <= 2 lambda^2.
RectanglePacking keich_translations(long long lambda, int dim);
// The same shapes, all centred at (0, 3 lambda^2 / 2).
RectanglePacking untranslated_packing(long long lambda, int dim);

// Exact check that every v_j + R_j lies in s_lo <= s <= s_hi (second coordinate).
bool check_containment_exact(const RectanglePacking& p, const Rational& s_lo, const Rational& s_hi);
// Floating check with relative tolerance, for packings read back from text.
bool check_containment(const RectanglePacking& p, double s_lo, double s_hi, double rel_tol = 1e-12);

// Measure of the union of the translated shapes (times the product factor in
// d = 2). Scanline along the second coordinate: each row is cut exactly, rows
// are spaced (shortest shape altitude) / resolution. resolution >= 64.
double union_measure(const RectanglePacking& p, int resolution, long long max_rows = 20000000);
// Largest number of translated shapes covering one row-centre point.
int max_overlap(const RectanglePacking& p, int resolution, long long max_rows = 20000000);

// Plain text: header lines "lambda", "dim", "extra_half_width", then one shape
// per line: cx cy angle1 half1 angle2 half2 tx ty.
std::string serialize_packing(const RectanglePacking& p);
RectanglePacking parse_packing(const std::string& text);

struct BesicovitchFamily {
    double lambda = 0.0;
    int dim = 1;
    double radius = 0.0;                   // (100 d lambda)^{-1}
    std::vector<std::array<double, 2>> centers;  // z^j = (j / lambda, 0)
    std::vector<BallSamples> bumps;        // g_j on the cube around I_j
    RectanglePacking packing;
};

// g_j(y) = chi_{I_j}(y) e^{i a_j y_1 - i b_j |y|^2} with (a_j, b_j) the Keich
// translations; samples_per_axis nodes on each cube around I_j.
BesicovitchFamily besicovitch_family(long long lambda, int dim, int samples_per_axis = 65);
// Exact pairwise disjointness of the I_j and containment in the unit ball.
bool check_besicovitch_balls(long long lambda, int dim);
// ||(sum_j |g_j|^2)^{1/2}||_p from the samples (the I_j are disjoint).
double besicovitch_square_function(const BesicovitchFamily& fam, const Exponent& p);

// d = 2 Bochner-Riesz family at width delta.
struct BochnerRieszFamily {
    double delta = 0.0;
    double nu_fraction = 1e-2;  // |nu| <= nu_fraction * delta^{-1/2}
    std::vector<int> nus;
    std::vector<std::array<double, 2>> theta;
    double long_half = 0.0;   // 10^{-2} delta^{-1}, along theta
    double short_half = 0.0;  // 10^{-1} delta^{-1/2}, across theta
    RectanglePacking packing;  // R_nu with translations a_nu
    std::vector<std::array<double, 2>> keich_offsets;  // positions whose union E is compressed

    // h_delta(xi) = phi(delta^{-1}(1 - |xi|^2)).
    double multiplier(const double* xi) const;
    // h_delta(xi) phi(delta^{-1/2} xi_1 - nu) chi_+(xi).
    double sector_multiplier(int nu, const double* xi) const;
};

// Keich arrangement for the rectangles (a digit scheme on the directions);
// a_nu moves each rectangle two long half-widths along theta_nu from it.
BochnerRieszFamily bochner_riesz_family(double delta, double nu_fraction = 1e-2);

// T_nu f_nu(x) for f_nu = chi_{R_nu} e^{i<theta_nu, .>} (untranslated), by
// quadrature over the support of the sector multiplier with the exact
// Fourier transform of f_nu. nodes per support axis.
std::vector<cplx> bochner_riesz_apply(const BochnerRieszFamily& fam, std::size_t index,
                                      const std::vector<std::array<double, 2>>& x, int nodes = 96);

}  // namespace slab
