#include "slab/extremizers.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "slab/fourier.hpp"
#include "slab/propagator.hpp"

namespace slab {

ExtremizerKind parse_extremizer_kind(const std::string& name) {
    if (name == "focusing") return ExtremizerKind::focusing;
    if (name == "knapp_traveling" || name == "knapp") return ExtremizerKind::knapp_traveling;
    if (name == "plate") return ExtremizerKind::plate;
    if (name == "besicovitch_family" || name == "besicovitch") return ExtremizerKind::besicovitch_family;
    if (name == "bochner_riesz") return ExtremizerKind::bochner_riesz;
    throw std::invalid_argument("unknown extremizer kind: " + name);
}

std::string extremizer_kind_name(ExtremizerKind k) {
    switch (k) {
        case ExtremizerKind::focusing: return "focusing";
        case ExtremizerKind::knapp_traveling: return "knapp_traveling";
        case ExtremizerKind::plate: return "plate";
        case ExtremizerKind::besicovitch_family: return "besicovitch_family";
        case ExtremizerKind::bochner_riesz: return "bochner_riesz";
    }
    return "?";
}

double ExtremizerSpec::aux_or(const std::string& key, double fallback) const {
    auto it = aux.find(key);
    return it == aux.end() ? fallback : it->second;
}

void ExtremizerSpec::validate() const {
    if (dim != 1 && dim != 2) throw std::invalid_argument("ExtremizerSpec: dim must be 1 or 2");
    if (kind == ExtremizerKind::bochner_riesz) {
        if (dim != 2) throw std::invalid_argument("ExtremizerSpec: bochner_riesz needs d = 2");
        if (!(scale > 0.0 && scale <= 1.0 / 16.0))
            throw std::invalid_argument("ExtremizerSpec: delta must lie in (0, 1/16]");
    } else if (!(scale > 1.0)) {
        throw std::invalid_argument("ExtremizerSpec: lambda must exceed 1");
    }
}

double focusing_profile(double r) { return bump(2.0 * r - 3.0); }

namespace {

int next_pow2(double x) {
    int n = 8;
    while (n < x) n *= 2;
    return n;
}

SampledField from_spectrum(const GridSpec& g, const std::function<cplx(const double*)>& spec) {
    auto fh = SampledField::zeros(g, Side::frequency);
    const auto xi = frequency_vectors(g);
    for (std::size_t i = 0; i < g.size(); ++i) fh.values[i] = spec(&xi[i * g.dim()]);
    return inverse_transform(fh);
}

double norm2(const double* xi, int d) {
    double s = 0.0;
    for (int a = 0; a < d; ++a) s += xi[a] * xi[a];
    return s;
}

}  // namespace

GridSpec focusing_grid(double lambda, int dim) {
    const double L = 8.0 * lambda;
    return GridSpec(dim, next_pow2(1.25 * 2.0 * lambda * L / pi), L, 2.0 * lambda);
}

GridSpec knapp_grid(double lambda, double eps) {
    const double L = 2.0 * lambda + 400.0 / eps;
    return GridSpec(1, next_pow2(1.25 * (lambda + eps) * L / pi), L, lambda + eps);
}

GridSpec plate_grid(double lambda) {
    const double L = 200.0 * lambda;
    return GridSpec(1, next_pow2(1.25 * (lambda + 1.0 / lambda) * L / pi), L, lambda + 1.0 / lambda);
}

SampledField focusing(double lambda, const GridSpec& g) {
    if (!(lambda > 1.0)) throw std::invalid_argument("focusing: lambda must exceed 1");
    if (!(g.nyquist() > 2.0 * lambda)) throw std::invalid_argument("focusing: grid Nyquist must exceed 2 lambda");
    const int d = g.dim();
    return from_spectrum(g, [&](const double* xi) {
        const double r2 = norm2(xi, d);
        return std::polar(focusing_profile(std::sqrt(r2) / lambda), 0.5 * r2);
    });
}

SampledField knapp_traveling(double lambda, double eps, const GridSpec& g) {
    if (!(lambda > 1.0) || !(eps > 0.0)) throw std::invalid_argument("knapp_traveling: need lambda > 1, eps > 0");
    if (!(g.nyquist() > lambda + eps)) throw std::invalid_argument("knapp_traveling: grid does not resolve the cap");
    const int d = g.dim();
    return from_spectrum(g, [&](const double* xi) {
        double r2 = (xi[0] - lambda) * (xi[0] - lambda);
        for (int a = 1; a < d; ++a) r2 += xi[a] * xi[a];
        return cplx(bump(std::sqrt(r2) / eps), 0.0);
    });
}

SampledField plate(double lambda, const GridSpec& g) {
    if (!(lambda > 1.0)) throw std::invalid_argument("plate: lambda must exceed 1");
    if (!(g.nyquist() > lambda + 1.0 / lambda)) throw std::invalid_argument("plate: grid does not resolve the slab");
    if (!(2.0 * pi / g.extent() < 0.25 / lambda))
        throw std::invalid_argument("plate: frequency spacing does not resolve the 1/lambda slab");
    const int d = g.dim();
    return from_spectrum(g, [&](const double* xi) {
        double v = lambda * bump(lambda * (xi[0] - lambda));
        if (d == 2) v *= bump(std::abs(xi[1]));
        return cplx(v, 0.0);
    });
}

double Parallelogram::area() const { return 4.0 * std::abs(e1[0] * e2[1] - e1[1] * e2[0]); }

std::array<std::array<double, 2>, 4> Parallelogram::vertices(const std::array<double, 2>& t) const {
    const double cx = center[0] + t[0], cy = center[1] + t[1];
    return {{{cx + e1[0] + e2[0], cy + e1[1] + e2[1]},
             {cx - e1[0] + e2[0], cy - e1[1] + e2[1]},
             {cx - e1[0] - e2[0], cy - e1[1] - e2[1]},
             {cx + e1[0] - e2[0], cy + e1[1] - e2[1]}}};
}

void RectanglePacking::validate() const {
    if (dim != 1 && dim != 2) throw std::invalid_argument("RectanglePacking: dim must be 1 or 2");
    if (translations.size() != shapes.size())
        throw std::invalid_argument("RectanglePacking: one translation per shape");
    if (!exact.empty() && exact.size() != shapes.size())
        throw std::invalid_argument("RectanglePacking: exact data count mismatch");
    for (const auto& s : shapes)
        if (!(s.area() > 0.0)) throw std::invalid_argument("RectanglePacking: degenerate shape");
}

int packing_count(long long lambda) {
    if (lambda < 1) throw std::invalid_argument("packing_count: lambda must be positive");
    return static_cast<int>((lambda - 1) / 10);
}

namespace {

double to_d(const Rational& q) { return to_double(q); }

// Offsets of the binary-digit scheme: for index k < 2^n with digits
// eps_1..eps_n (k / 2^n = sum eps_i 2^{-i}), a_k = D sum eps_i 2^{-i} (b - s_i)
// with s_i = b - H/2 + H (i - 1/2) / n. A shape of slope sigma_0 + D k / 2^n
// through (a_k, b) then runs through sigma_0 (s - b) + D sum eps_i 2^{-i} (s - s_i):
// shapes that differ only from digit i on meet at height s_i.
Rational digit_offset(long long k, int n, const Rational& D, const Rational& H) {
    Rational acc(0);
    for (int i = 1; i <= n; ++i) {
        const long long bit = (k >> (n - i)) & 1;
        if (!bit) continue;
        const Rational gap = H / Rational(2) - H * Rational(2 * i - 1, 2 * n);
        acc += Rational(1, 1LL << i) * gap;
    }
    return D * acc;
}

int digits_for(long long count) {
    int n = 1;
    while ((1LL << n) < count) ++n;
    return n;
}

RectanglePacking build_packing(long long lambda, int dim, bool keich) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("keich_translations: dim must be 1 or 2");
    if (lambda < 8) throw std::invalid_argument("keich_translations: lambda must be at least 8");
    const Rational L(lambda);
    const int N = packing_count(lambda);
    const Rational w = L / Rational(10);
    const Rational hh = L * L / Rational(100);  // vertical half-height
    const Rational H = Rational(2) * hh;
    const Rational b = Rational(3) * L * L / Rational(2);
    const int n = digits_for(N);
    const Rational D = Rational(2LL << n) / L;  // slope gain per unit of k / 2^n

    RectanglePacking p;
    p.lambda = static_cast<double>(lambda);
    p.dim = dim;
    p.extra_half_width = dim == 2 ? to_d(w) : 0.0;
    for (int j = 1; j <= N; ++j) {
        const Rational sigma = Rational(2 * j) / L;
        ExactParallelogram ex;
        ex.center = {Rational(0), Rational(0)};
        ex.e1 = {w, Rational(0)};
        ex.e2 = {sigma * hh, hh};
        const Rational a = keich ? digit_offset(j - 1, n, D, H) : Rational(0);
        ex.shift = {a, b};
        Parallelogram s;
        s.center = {0.0, 0.0};
        s.e1 = {to_d(ex.e1[0]), to_d(ex.e1[1])};
        s.e2 = {to_d(ex.e2[0]), to_d(ex.e2[1])};
        p.shapes.push_back(s);
        p.translations.push_back({to_d(a), to_d(b)});
        p.exact.push_back(ex);
    }
    p.validate();
    return p;
}

}  // namespace

RectanglePacking keich_translations(long long lambda, int dim) { return build_packing(lambda, dim, true); }

RectanglePacking untranslated_packing(long long lambda, int dim) { return build_packing(lambda, dim, false); }

bool check_containment_exact(const RectanglePacking& p, const Rational& s_lo, const Rational& s_hi) {
    if (p.exact.size() != p.shapes.size()) throw std::invalid_argument("check_containment_exact: no exact data");
    for (const auto& e : p.exact)
        for (int a : {-1, 1})
            for (int c : {-1, 1}) {
                const Rational s = e.center[1] + e.shift[1] + Rational(a) * e.e1[1] + Rational(c) * e.e2[1];
                if (s < s_lo || s > s_hi) return false;
            }
    return true;
}

bool check_containment(const RectanglePacking& p, double s_lo, double s_hi, double rel_tol) {
    const double tol = rel_tol * std::max(std::abs(s_lo), std::abs(s_hi));
    for (std::size_t j = 0; j < p.size(); ++j)
        for (const auto& v : p.shapes[j].vertices(p.translations[j]))
            if (v[1] < s_lo - tol || v[1] > s_hi + tol) return false;
    return true;
}

namespace {

struct RowPlan {
    double y0 = 0.0;
    double dy = 0.0;
    long long rows = 0;
    std::vector<std::array<std::array<double, 2>, 4>> verts;
};

RowPlan plan_rows(const RectanglePacking& p, int resolution, long long max_rows) {
    p.validate();
    if (resolution < 64) throw std::invalid_argument("union_measure: resolution must be at least 64");
    if (p.size() == 0) throw std::invalid_argument("union_measure: empty packing");
    RowPlan plan;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, alt = lo;
    for (std::size_t j = 0; j < p.size(); ++j) {
        const auto& s = p.shapes[j];
        const double cross = std::abs(s.e1[0] * s.e2[1] - s.e1[1] * s.e2[0]);
        const double longest = std::max(std::hypot(s.e1[0], s.e1[1]), std::hypot(s.e2[0], s.e2[1]));
        alt = std::min(alt, 2.0 * cross / longest);
        plan.verts.push_back(s.vertices(p.translations[j]));
        for (const auto& v : plan.verts.back()) {
            lo = std::min(lo, v[1]);
            hi = std::max(hi, v[1]);
        }
    }
    plan.dy = alt / resolution;
    const double rows = std::ceil((hi - lo) / plan.dy);
    if (rows > static_cast<double>(max_rows))
        throw std::runtime_error("union_measure: resolution budget exceeded (" + std::to_string(rows) + " rows)");
    plan.rows = static_cast<long long>(rows);
    plan.dy = (hi - lo) / plan.rows;
    plan.y0 = lo;
    return plan;
}

// Cut of a convex quadrilateral by the horizontal line at height y.
bool cut(const std::array<std::array<double, 2>, 4>& v, double y, double& a, double& b) {
    a = std::numeric_limits<double>::infinity();
    b = -a;
    for (int k = 0; k < 4; ++k) {
        const auto& p = v[k];
        const auto& q = v[(k + 1) % 4];
        if ((p[1] - y) * (q[1] - y) > 0.0 || p[1] == q[1]) continue;
        const double x = p[0] + (y - p[1]) * (q[0] - p[0]) / (q[1] - p[1]);
        a = std::min(a, x);
        b = std::max(b, x);
    }
    return a <= b;
}

std::vector<std::pair<double, double>> row_intervals(const RowPlan& plan, long long r) {
    const double y = plan.y0 + (r + 0.5) * plan.dy;
    std::vector<std::pair<double, double>> iv;
    for (const auto& v : plan.verts) {
        double a, b;
        if (cut(v, y, a, b)) iv.emplace_back(a, b);
    }
    std::sort(iv.begin(), iv.end());
    return iv;
}

}  // namespace

double union_measure(const RectanglePacking& p, int resolution, long long max_rows) {
    const RowPlan plan = plan_rows(p, resolution, max_rows);
    std::vector<double> row(plan.rows, 0.0);
#pragma omp parallel for schedule(static)
    for (long long r = 0; r < plan.rows; ++r) {
        const auto iv = row_intervals(plan, r);
        double len = 0.0, cur_a = 0.0, cur_b = 0.0;
        bool open = false;
        for (const auto& [a, b] : iv) {
            if (!open) {
                cur_a = a;
                cur_b = b;
                open = true;
            } else if (a <= cur_b) {
                cur_b = std::max(cur_b, b);
            } else {
                len += cur_b - cur_a;
                cur_a = a;
                cur_b = b;
            }
        }
        if (open) len += cur_b - cur_a;
        row[r] = len;
    }
    double area = 0.0;
    for (double x : row) area += x;
    area *= plan.dy;
    if (p.dim == 2 && p.extra_half_width > 0.0) area *= 2.0 * p.extra_half_width;
    return area;
}

int max_overlap(const RectanglePacking& p, int resolution, long long max_rows) {
    const RowPlan plan = plan_rows(p, resolution, max_rows);
    std::vector<int> row(plan.rows, 0);
#pragma omp parallel for schedule(static)
    for (long long r = 0; r < plan.rows; ++r) {
        const auto iv = row_intervals(plan, r);
        std::vector<std::pair<double, int>> ev;
        for (const auto& [a, b] : iv) {
            ev.emplace_back(a, -1);  // opens sort before closes at equal x
            ev.emplace_back(b, 1);
        }
        std::sort(ev.begin(), ev.end());
        int depth = 0, best = 0;
        for (const auto& e : ev) {
            depth -= e.second;
            best = std::max(best, depth);
        }
        row[r] = best;
    }
    return row.empty() ? 0 : *std::max_element(row.begin(), row.end());
}

std::string serialize_packing(const RectanglePacking& p) {
    p.validate();
    std::ostringstream os;
    os << std::setprecision(17);
    os << "lambda " << p.lambda << "\n";
    os << "dim " << p.dim << "\n";
    os << "extra_half_width " << p.extra_half_width << "\n";
    os << "# cx cy angle1 half1 angle2 half2 tx ty\n";
    for (std::size_t j = 0; j < p.size(); ++j) {
        const auto& s = p.shapes[j];
        os << s.center[0] << " " << s.center[1] << " " << std::atan2(s.e1[1], s.e1[0]) << " "
           << std::hypot(s.e1[0], s.e1[1]) << " " << std::atan2(s.e2[1], s.e2[0]) << " "
           << std::hypot(s.e2[0], s.e2[1]) << " " << p.translations[j][0] << " " << p.translations[j][1] << "\n";
    }
    return os.str();
}

RectanglePacking parse_packing(const std::string& text) {
    RectanglePacking p;
    std::istringstream in(text);
    std::string line;
    bool have_lambda = false, have_dim = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "lambda") {
            ls >> p.lambda;
            have_lambda = true;
        } else if (key == "dim") {
            ls >> p.dim;
            have_dim = true;
        } else if (key == "extra_half_width") {
            ls >> p.extra_half_width;
        } else {
            std::istringstream row(line);
            double v[8];
            for (double& x : v)
                if (!(row >> x)) throw std::invalid_argument("parse_packing: bad shape line: " + line);
            Parallelogram s;
            s.center = {v[0], v[1]};
            s.e1 = {v[3] * std::cos(v[2]), v[3] * std::sin(v[2])};
            s.e2 = {v[5] * std::cos(v[4]), v[5] * std::sin(v[4])};
            p.shapes.push_back(s);
            p.translations.push_back({v[6], v[7]});
        }
        if (ls.fail()) throw std::invalid_argument("parse_packing: bad header line: " + line);
    }
    if (!have_lambda || !have_dim) throw std::invalid_argument("parse_packing: missing lambda or dim header");
    p.validate();
    return p;
}

BesicovitchFamily besicovitch_family(long long lambda, int dim, int samples_per_axis) {
    if (!check_besicovitch_balls(lambda, dim))
        throw std::invalid_argument("besicovitch_family: balls I_j are not disjoint inside the unit ball");
    BesicovitchFamily fam;
    fam.lambda = static_cast<double>(lambda);
    fam.dim = dim;
    fam.radius = 1.0 / (100.0 * dim * fam.lambda);
    fam.packing = keich_translations(lambda, dim);
    const int N = packing_count(lambda);
    for (int j = 1; j <= N; ++j) {
        const std::array<double, 2> z{j / fam.lambda, 0.0};
        fam.centers.push_back(z);
        const double a = fam.packing.translations[j - 1][0];
        const double b = fam.packing.translations[j - 1][1];
        const double r = fam.radius;
        fam.bumps.push_back(BallSamples::from_function(
            dim, samples_per_axis,
            [&](const double* y) {
                const double dy0 = y[0] - z[0], dy1 = dim == 2 ? y[1] : 0.0;
                if (dy0 * dy0 + dy1 * dy1 > r * r * (1.0 + 1e-12)) return cplx(0.0, 0.0);
                return std::polar(1.0, a * y[0] - b * (y[0] * y[0] + dy1 * dy1));
            },
            z, r));
    }
    return fam;
}

bool check_besicovitch_balls(long long lambda, int dim) {
    if (lambda < 8) return false;
    const Rational L(lambda);
    const Rational r(1, 100 * dim * lambda);
    const int N = packing_count(lambda);
    // Centres j / lambda on the first axis: consecutive gap 1/lambda against 2r,
    // and the farthest ball inside |y| <= 1.
    if (!(Rational(1) / L > Rational(2) * r)) return false;
    return Rational(N) / L + r <= Rational(1);
}

double besicovitch_square_function(const BesicovitchFamily& fam, const Exponent& p) {
    if (p.is_infinite()) {
        double m = 0.0;
        for (const auto& g : fam.bumps)
            for (auto z : g.values) m = std::max(m, std::abs(z));
        return m;
    }
    const double pv = p.value();
    double acc = 0.0;
    for (const auto& g : fam.bumps) {
        const double h = g.spacing();
        for (std::size_t k = 0; k < g.size(); ++k) {
            double w = 1.0;
            if (g.dim == 1) {
                const int i = static_cast<int>(k);
                w = (i == 0 || i == g.n - 1) ? 0.5 * h : h;
            } else {
                const int i = static_cast<int>(k / g.n), j = static_cast<int>(k % g.n);
                w = ((i == 0 || i == g.n - 1) ? 0.5 * h : h) * ((j == 0 || j == g.n - 1) ? 0.5 * h : h);
            }
            acc += w * std::pow(std::abs(g.values[k]), pv);
        }
    }
    return std::pow(acc, 1.0 / pv);
}

double BochnerRieszFamily::multiplier(const double* xi) const {
    return bump((1.0 - xi[0] * xi[0] - xi[1] * xi[1]) / delta);
}

double BochnerRieszFamily::sector_multiplier(int nu, const double* xi) const {
    if (!(xi[1] > 0.0)) return 0.0;
    return multiplier(xi) * bump(xi[0] / std::sqrt(delta) - nu);
}

BochnerRieszFamily bochner_riesz_family(double delta, double nu_fraction) {
    if (!(delta > 0.0 && delta <= 1.0 / 16.0))
        throw std::invalid_argument("bochner_riesz_family: delta must lie in (0, 1/16]");
    if (!(nu_fraction > 0.0)) throw std::invalid_argument("bochner_riesz_family: nu_fraction must be positive");
    BochnerRieszFamily fam;
    fam.delta = delta;
    fam.nu_fraction = nu_fraction;
    const double sd = std::sqrt(delta);
    const int K = static_cast<int>(std::floor(nu_fraction / sd));
    if (K * sd >= 1.0) throw std::invalid_argument("bochner_riesz_family: directions leave the unit circle");
    fam.long_half = 1e-2 / delta;
    fam.short_half = 1e-1 / sd;
    for (int nu = -K; nu <= K; ++nu) {
        fam.nus.push_back(nu);
        fam.theta.push_back({sd * nu, std::sqrt(1.0 - delta * nu * nu)});
    }
    // Digit scheme along the long axis: direction index k = nu + K, slope step sqrt(delta).
    const long long count = 2 * K + 1;
    const int n = digits_for(count);
    const double H = 2.0 * fam.long_half;
    fam.packing.lambda = 1.0 / delta;
    fam.packing.dim = 2;
    for (std::size_t i = 0; i < fam.nus.size(); ++i) {
        const auto& th = fam.theta[i];
        double off = 0.0;
        for (int b = 1; b <= n; ++b)
            if ((static_cast<long long>(i) >> (n - b)) & 1)
                off += std::ldexp(1.0, -b) * (H / 2.0 - H * (2.0 * b - 1.0) / (2.0 * n));
        off *= sd * std::ldexp(1.0, n);
        fam.keich_offsets.push_back({off, 0.0});
        Parallelogram s;
        s.e1 = {fam.long_half * th[0], fam.long_half * th[1]};
        s.e2 = {-fam.short_half * th[1], fam.short_half * th[0]};
        fam.packing.shapes.push_back(s);
        fam.packing.translations.push_back({off + 2.0 * fam.long_half * th[0], 2.0 * fam.long_half * th[1]});
    }
    fam.packing.validate();
    return fam;
}

std::vector<cplx> bochner_riesz_apply(const BochnerRieszFamily& fam, std::size_t index,
                                      const std::vector<std::array<double, 2>>& x, int nodes) {
    if (index >= fam.nus.size()) throw std::out_of_range("bochner_riesz_apply: bad index");
    if (nodes < 8) throw std::invalid_argument("bochner_riesz_apply: too few nodes");
    const int nu = fam.nus[index];
    const auto th = fam.theta[index];
    const std::array<double, 2> tp{-th[1], th[0]};
    const double sd = std::sqrt(fam.delta), dl = fam.delta;
    const double A = fam.long_half, B = fam.short_half;
    auto sinc = [](double u) { return std::abs(u) < 1e-8 ? 1.0 - u * u / 6.0 : std::sin(u) / u; };

    // Midpoint nodes in (u, w) in (-1,1)^2: xi_1 = sqrt(delta)(nu + u),
    // |xi|^2 = 1 - delta w, xi_2 > 0; d xi = sqrt(delta) delta / (2 xi_2) du dw.
    struct Node {
        double x1, x2, weight;
    };
    std::vector<Node> nd;
    const double h = 2.0 / nodes;
    for (int i = 0; i < nodes; ++i)
        for (int k = 0; k < nodes; ++k) {
            const double u = -1.0 + (i + 0.5) * h, w = -1.0 + (k + 0.5) * h;
            const double x1 = sd * (nu + u);
            const double rem = 1.0 - dl * w - x1 * x1;
            if (!(rem > 0.0)) continue;
            const double x2 = std::sqrt(rem);
            const double xi[2] = {x1, x2};
            const double m = fam.sector_multiplier(nu, xi);
            if (m == 0.0) continue;
            const double d0 = th[0] - x1, d1 = th[1] - x2;
            const double fhat = 4.0 * A * B * sinc(A * (d0 * th[0] + d1 * th[1])) * sinc(B * (d0 * tp[0] + d1 * tp[1]));
            nd.push_back({x1, x2, m * fhat * sd * dl / (2.0 * x2) * h * h / (4.0 * pi * pi)});
        }
    std::vector<cplx> out(x.size());
    const long long nx = static_cast<long long>(x.size());
#pragma omp parallel for schedule(static)
    for (long long j = 0; j < nx; ++j) {
        cplx acc = 0.0;
        for (const auto& q : nd) acc += q.weight * std::polar(1.0, x[j][0] * q.x1 + x[j][1] * q.x2);
        out[j] = acc;
    }
    return out;
}

double focusing_peak(double lambda, int dim) {
    const auto g = focusing_grid(lambda, dim);
    const auto u = evolve_spectral_at(focusing(lambda, g), 0.5);
    std::size_t centre = static_cast<std::size_t>(g.n() / 2);
    if (dim == 2) centre = centre * g.n() + g.n() / 2;
    return std::abs(u.values[centre]);
}

double knapp_tube_floor(double lambda, double eps, double c) {
    const auto g = knapp_grid(lambda, eps);
    const auto f = knapp_traveling(lambda, eps, g);
    double lo = std::numeric_limits<double>::infinity();
    for (int m = 0; m <= 16; ++m) {
        const double t = 0.5 * m / 16.0;
        const auto u = evolve_spectral_at(f, t);
        for (int j = 0; j < g.n(); ++j) {
            const double x = g.coord(j);
            if (x < 0.0 || x > lambda) continue;
            if (std::abs(t - x / (2.0 * lambda)) <= c / lambda) lo = std::min(lo, std::abs(u.values[j]));
        }
    }
    return lo;
}

double knapp_mixed_ratio(double lambda, double eps, const Exponent& q, const Exponent& r) {
    const auto g = knapp_grid(lambda, eps);
    const auto f = knapp_traveling(lambda, eps, g);
    const Interval I{0.0, 0.5};
    const auto u = evolve_spectral(f, uniform_times(I, time_samples_for_band(lambda + eps, I)), I);
    MixedNormSpec spec;
    spec.q = q;
    spec.r = r;
    spec.interval = I;
    return mixed_norm(u, spec) / lebesgue_norm(f, Exponent(2));
}

double plate_floor(double lambda) {
    const auto g = plate_grid(lambda);
    const auto h = plate(lambda, g);
    double lo = std::numeric_limits<double>::infinity();
    for (double t : {-0.1, 0.0, 0.1}) {
        const auto u = evolve_spectral_at(h, t);
        for (int j = 0; j < g.n(); ++j)
            if (std::abs(g.coord(j)) <= 0.1 * lambda) lo = std::min(lo, std::abs(u.values[j]));
    }
    return lo;
}

}  // namespace slab
