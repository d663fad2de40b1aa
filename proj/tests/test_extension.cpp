#include "doctest.h"
#include "oracles.hpp"
#include "slab/extension.hpp"
#include "slab/fourier.hpp"

#include <cmath>
#include <random>

using namespace slab;

namespace {

cplx one(const double*) { return cplx(1.0, 0.0); }

// Composite Simpson rule for int_{-1}^{1} e^{i s y^2} dy with m (even) panels.
cplx simpson_chirp(double s, int m) {
    const double h = 2.0 / m;
    cplx acc = 0.0;
    for (int i = 0; i <= m; ++i) {
        const double y = -1.0 + i * h;
        const double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * std::exp(cplx(0.0, s * y * y));
    }
    return acc * h / 3.0;
}

std::vector<EvalPoint> random_points(int n, unsigned seed, double xi_max, double s_max) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<EvalPoint> pts(n);
    for (auto& p : pts) {
        p.xi = {xi_max * u(rng), xi_max * u(rng)};
        p.s = s_max * u(rng);
    }
    return pts;
}

}  // namespace

TEST_CASE("extension of the constant and of zero") {
    auto f = BallSamples::from_function(1, 33, one);
    auto v = extend(f, {EvalPoint{}});
    CHECK(std::abs(v[0] - cplx(2.0, 0.0)) < 1e-13);

    auto z = BallSamples(1, 33, std::vector<cplx>(33, 0.0));
    for (auto w : extend(z, random_points(10, 1, 20.0, 20.0))) CHECK(w == cplx(0.0, 0.0));

    CHECK_THROWS(extend(f, {EvalPoint{{NAN, 0.0}, 0.0}}));
    CHECK_THROWS(BallSamples(1, 5, std::vector<cplx>(4)));
    CHECK_THROWS(BallSamples::from_function(1, 9, one, {0.5, 0.0}, 0.6));
}

TEST_CASE("chirp integral against a high-resolution oracle") {
    const double s = 1.0;
    const int n = 8 * quadrature_points(s, 0.0) + 1;
    auto f = BallSamples::from_function(1, n, one);
    const cplx got = extend(f, {EvalPoint{{0.0, 0.0}, s}})[0];
    const cplx ref = simpson_chirp(s, 10 * (n - 1));
    CHECK(std::abs(got - ref) < 1e-4);
    // The oracle is converged: halving its panel count moves it by far less.
    CHECK(std::abs(ref - simpson_chirp(s, 5 * (n - 1))) < 1e-9);
}

TEST_CASE("s = 0 reduces to the Fourier transform on a matched grid") {
    // Grid spacing 1/64 on [-2, 2) puts nodes on the ball samples exactly.
    GridSpec g(1, 256, 4.0);
    auto fb = BallSamples::from_function(1, 129, [](const double* y) { return cplx(bump(y[0]), 0.3 * y[0] * bump(y[0])); });
    auto fg = SampledField::zeros(g);
    for (int j = 0; j < 256; ++j) {
        const double y = g.coord(j);
        if (std::abs(y) <= 1.0) fg.values[j] = cplx(bump(y), 0.3 * y * bump(y));
    }
    auto fh = forward_transform(fg);
    std::vector<EvalPoint> pts;
    for (int k = 0; k < 256; ++k) pts.push_back(EvalPoint{{g.freq(k), 0.0}, 0.0});
    auto ext = extend(fb, pts);
    CHECK(oracle::rel_l2(ext, fh.values) < 1e-8);

    GridSpec g2(2, 64, 4.0);
    auto radial = [](double a, double b) { return bump(std::hypot(a, b)); };
    auto fb2 = BallSamples::from_function(2, 33, [&](const double* y) { return cplx(radial(y[0], y[1]), 0.0); });
    auto fg2 = SampledField::zeros(g2);
    for (int a = 0; a < 64; ++a)
        for (int b = 0; b < 64; ++b) fg2.values[a * 64 + b] = radial(g2.coord(a), g2.coord(b));
    auto fh2 = forward_transform(fg2);
    std::vector<EvalPoint> pts2;
    for (int a = 0; a < 64; ++a)
        for (int b = 0; b < 64; ++b) pts2.push_back(EvalPoint{{g2.freq(a), g2.freq(b)}, 0.0});
    CHECK(oracle::rel_l2(extend(fb2, pts2), fh2.values) < 1e-8);
}

TEST_CASE("linearity, triangle bound, parallel equals serial") {
    auto a = BallSamples(1, 201, oracle::random_values(201, 1));
    auto b = BallSamples(1, 201, oracle::random_values(201, 2));
    auto c = a;
    const cplx alpha(0.7, -1.2), beta(-0.4, 2.0);
    for (std::size_t k = 0; k < c.values.size(); ++k) c.values[k] = alpha * a.values[k] + beta * b.values[k];
    auto pts = random_points(50, 3, 30.0, 10.0);
    auto ea = extend(a, pts), eb = extend(b, pts), ec = extend(c, pts);
    double l1 = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k)
        l1 += std::abs(a.values[k]) * a.spacing() * ((k == 0 || k == a.values.size() - 1) ? 0.5 : 1.0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(std::abs(ec[i] - alpha * ea[i] - beta * eb[i]) < 1e-12 * (1.0 + std::abs(ec[i])));
        CHECK(std::abs(ea[i]) <= l1 * (1.0 + 1e-12));
    }
    CHECK(extend(a, pts, Exec::serial) == extend(a, pts, Exec::parallel));
}

TEST_CASE("Galilean modulation translates the extension") {
    for (int d : {1, 2}) {
        const int n = d == 1 ? 301 : 61;
        BallSamples f(d, n, oracle::random_values(d == 1 ? n : n * n, 5));
        auto same = galilean_modulate(f, {0.0, 0.0, 0.0});
        CHECK(same.values == f.values);
        const std::array<double, 3> w{3.5, -2.25, 1.75};
        auto fw = galilean_modulate(f, w);
        for (std::size_t k = 0; k < f.values.size(); ++k)
            CHECK(std::abs(std::abs(fw.values[k]) - std::abs(f.values[k])) < 1e-13);
        auto pts = random_points(20, 7 + d, 10.0, 5.0);
        std::vector<EvalPoint> shifted = pts;
        for (auto& p : shifted) {
            p.xi[0] -= w[0];
            if (d == 2) p.xi[1] -= w[1];
            p.s -= d == 1 ? w[1] : w[2];
        }
        auto lhs = extend(fw, pts);
        auto rhs = extend(f, shifted);
        for (std::size_t i = 0; i < pts.size(); ++i) CHECK(std::abs(lhs[i] - rhs[i]) <= 1e-8 * std::abs(rhs[i]));
    }
}

TEST_CASE("scaled extension is extend composed with the pullback") {
    auto region = ExtensionRegion::squared(2.0);
    CHECK(region.rho() == 4.0);
    auto grid = region_grid(region, 1, 48, 5);
    CHECK(!grid.xi.empty());
    for (const auto& x : grid.xi) CHECK((std::abs(x[0]) >= 12.0 && std::abs(x[0]) <= 48.0));
    const int n = quadrature_points(8.0, 2.0 * 48.0) + 1;
    auto f = BallSamples::from_function(1, n, one);
    auto sc = scaled_extension(f, region, grid);
    std::vector<EvalPoint> direct;
    for (double s : grid.s)
        for (const auto& x : grid.xi) direct.push_back(EvalPoint{{s / 4.0 * x[0], 0.0}, s});
    CHECK(sc.values == extend(f, direct));
    CHECK(sc.jacobian.front() == 1.0);
    CHECK(sc.jacobian.back() == 2.0);

    auto coarse = BallSamples::from_function(1, 17, one);
    CHECK_THROWS(scaled_extension(coarse, region, grid));

    ExtensionRegion bad = region;
    bad.s_range = Interval{0.0, 1.0};
    CHECK_THROWS(bad.validate());

    // Jacobian-weighted norm equals the norm of E f over the image region
    // when q = r (change of variables on the samples).
    const double plain = region_mixed_norm(sc, region, Exponent(2), Exponent(2));
    const double jac = region_mixed_norm(sc, region, Exponent(2), Exponent(2), true);
    CHECK(jac > plain);
    CHECK(jac < plain * std::sqrt(2.0));
}

TEST_CASE("modulated bump lower bound on the translated slab is stable in lambda") {
    // Re[e^{i<xi-a, z_j> - i(s-b)|z_j|^2} E g_j(xi, s)] * lambda^d on sampled
    // points of R_j + (a, b), d = 1.
    auto minimum = [](double lambda) {
        const double r0 = 1.0 / (100.0 * lambda);
        const double a = 37.25, b = 1.5 * lambda * lambda;
        double lo = 1e300;
        for (int j : {-3, 0, 2, static_cast<int>(lambda / 10.0)}) {
            const double z = j / lambda;
            auto g = BallSamples::from_function(
                1, 129, [&](const double* y) { return std::exp(cplx(0.0, a * y[0] - b * y[0] * y[0])); },
                {z, 0.0}, r0);
            std::vector<EvalPoint> pts;
            for (int u = 0; u <= 8; ++u)
                for (int v = 0; v <= 8; ++v) {
                    const double s = -lambda * lambda / 100.0 + u * lambda * lambda / 400.0;
                    const double xi = 2.0 * j / lambda * s - lambda / 10.0 + v * lambda / 40.0;
                    pts.push_back(EvalPoint{{xi + a, 0.0}, s + b});
                }
            auto e = extend(g, pts);
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const double xs = pts[i].xi[0] - a, ss = pts[i].s - b;
                const cplx ph = std::exp(cplx(0.0, xs * z - ss * z * z));
                lo = std::min(lo, (ph * e[i]).real() * lambda);
            }
        }
        return lo;
    };
    const double c8 = minimum(8.0);
    const double c16 = minimum(16.0);
    CHECK(c8 > 0.0);
    CHECK(c16 >= 0.8 * c8);
    CHECK(c16 <= 1.2 * c8);
}
