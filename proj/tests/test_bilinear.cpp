#include "doctest.h"
#include "slab/bilinear.hpp"

#include <cmath>
#include <random>

using namespace slab;

namespace {

ExponentTriple triple2(const char* p, const char* q, const char* r) {
    ExponentTriple t;
    t.p = Exponent::parse(p);
    t.q = Exponent::parse(q);
    t.r = Exponent::parse(r);
    t.d = 2;
    return t;
}

std::vector<cplx> random_coeffs(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::vector<cplx> c(n);
    for (auto& z : c) {
        const double a = nd(rng);
        const double b = nd(rng);
        z = cplx(a, b);
    }
    return c;
}

// Lab-frame frequency of grid mode idx: comoving frequency plus N e_1.
std::array<double, 2> lab_freq(const BilinearOperator& op, int idx) {
    const int n = op.n();
    const double L = n * op.spacing();
    const int a = idx / n, b = idx % n;
    return {2.0 * pi * (a < n / 2 ? a : a - n) / L + op.frequency(), 2.0 * pi * (b < n / 2 ? b : b - n) / L};
}

// Product norm from the lab-frame plane-wave sums: lab row i at time step m
// sits at x_1 = i h with the comoving cell i - m, which runs x_1 - 2 N t.
double direct_product_norm(const BilinearOperator& op, const Disc& d1, const std::vector<cplx>& c1, const Disc& d2,
                           const std::vector<cplx>& c2, double q, double r) {
    const int n = op.n(), M = op.samples();
    const double h = op.spacing();
    const auto i1 = op.modes(d1), i2 = op.modes(d2);
    auto field = [&](const std::vector<int>& idx, const std::vector<cplx>& c, double x1, double x2, double t) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            const auto xi = lab_freq(op, idx[k]);
            acc += c[k] * std::polar(1.0, xi[0] * x1 + xi[1] * x2 - t * (xi[0] * xi[0] + xi[1] * xi[1]));
        }
        return acc;
    };
    double total = 0.0;
    for (int i = 0; i < n + M - 1; ++i)
        for (int b = 0; b < n; ++b) {
            double inner = 0.0;
            for (int m = 0; m < M; ++m) {
                if (i - m < 0 || i - m >= n) continue;
                const double t = op.rho() * m / (M - 1);
                const double w = (m == 0 || m == M - 1 ? 0.5 : 1.0) * op.rho() / (M - 1);
                const double x1 = i * h, x2 = b * h;
                const double u = std::abs(field(i1, c1, x1, x2, t) * field(i2, c2, x1, x2, t));
                inner += w * std::pow(u, 0.5 * r);
            }
            total += std::pow(inner, q / r);
        }
    return std::pow(total * h * h, 2.0 / q);
}

}  // namespace

TEST_CASE("bilinear pair admissibility") {
    const double N = 16.0;
    CHECK_NOTHROW(check_bilinear_pair(N, Disc{{N - 2.5, 0.0}, 1.5}, Disc{{N + 2.5, 0.0}, 1.5}));
    CHECK_THROWS_AS(check_bilinear_pair(N, Disc{{N - 3.0, 0.0}, 1.5}, Disc{{N + 2.5, 0.0}, 1.5}), std::invalid_argument);
    CHECK_THROWS_AS(check_bilinear_pair(N, Disc{{N - 1.0, 0.0}, 1.0}, Disc{{N + 0.5, 0.0}, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(check_bilinear_pair(N, Disc{{N, 0.0}, 0.0}, Disc{{N + 3.0, 0.0}, 0.5}), std::invalid_argument);
    BilinearOptions bad;
    bad.spacing = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_THROWS_AS(BilinearOperator(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BilinearOperator(4.0, 0.0), std::invalid_argument);
}

TEST_CASE("bilinear layout and modes") {
    const BilinearOperator op(8.0, 0.5);
    CHECK(op.spacing() <= 0.25 + 1e-12);
    CHECK(2.0 * op.frequency() * op.rho() / (op.samples() - 1) == doctest::Approx(op.spacing()));
    CHECK(op.n() * op.spacing() >= 16.0 * op.rho() + 8.0);
    const Disc d{{9.0, 1.0}, 1.5};
    const auto idx = op.modes(d);
    CHECK(!idx.empty());
    for (int k : idx) {
        const auto xi = lab_freq(op, k);
        CHECK(std::hypot(xi[0] - 9.0, xi[1] - 1.0) <= 1.5 + 1e-12);
    }
    const auto c = random_coeffs(idx.size(), 3);
    const auto back = op.analyze(d, op.synthesize(d, c));
    for (std::size_t k = 0; k < c.size(); ++k) CHECK(std::abs(back[k] - c[k]) < 1e-12);
    CHECK_THROWS_AS(op.modes(Disc{{8.3, 0.2}, 1e-6}), std::invalid_argument);
}

TEST_CASE("bilinear product norm matches lab-frame plane-wave sums") {
    BilinearOptions opt;
    opt.margin = 2.0;
    const BilinearOperator op(3.0, 0.25, opt);
    const Disc d1{{1.5, 0.0}, 1.2}, d2{{4.5, 0.5}, 1.2};
    const auto c1 = random_coeffs(op.modes(d1).size(), 11);
    const auto c2 = random_coeffs(op.modes(d2).size(), 12);
    for (auto qr : {std::pair<const char*, const char*>{"4", "4"}, {"6", "3"}, {"3", "5"}}) {
        const auto q = Exponent::parse(qr.first), r = Exponent::parse(qr.second);
        const double fast = op.product_norm(d1, c1, d2, c2, q, r);
        const double ref = direct_product_norm(op, d1, c1, d2, c2, q.value(), r.value());
        CHECK(fast == doctest::Approx(ref).epsilon(1e-9));
    }
    CHECK_THROWS_AS(op.product_norm(d1, c1, d2, c2, Exponent::parse("inf"), Exponent::parse("4")),
                    std::invalid_argument);
}

TEST_CASE("bilinear estimate with q = r is invariant under the frequency shift") {
    // h = 0.25 exactly for both N, so the comoving problems coincide up to the
    // time quadrature.
    SearchBudget b;
    b.random_trials = 0;
    b.ascent_iters = 0;
    const auto t = triple2("2", "4", "4");
    const auto lo = lambda_bilinear(4.0, 0.5, t, b);
    const auto hi = lambda_bilinear(16.0, 0.5, t, b);
    CHECK(hi.value == doctest::Approx(lo.value).epsilon(1e-2));
}

TEST_CASE("bilinear bump pair grows with the time interval") {
    SearchBudget b;
    b.random_trials = 0;
    b.ascent_iters = 0;
    const auto t = triple2("2", "4", "4");
    const double v1 = lambda_bilinear(8.0, 0.5, t, b).value;
    const double v2 = lambda_bilinear(8.0, 1.0, t, b).value;
    CHECK(v2 > v1);
}

TEST_CASE("bilinear ascent and witness") {
    SearchBudget b;
    b.random_trials = 2;
    b.ascent_iters = 3;
    const auto t = triple2("2", "4", "4");
    const auto est = lambda_bilinear(6.0, 0.5, t, b);
    double mx = 0.0;
    for (const auto& [k, v] : est.strategy_breakdown) mx = std::max(mx, v);
    CHECK(est.value == doctest::Approx(mx).epsilon(1e-14));
    CHECK(est.strategy_breakdown.at("ascent") >= est.strategy_breakdown.at("bump_pair"));
    CHECK(est.strategy_breakdown.count("random") == 1);
    CHECK(evaluate_bilinear_witness(est.pair, 6.0, 0.5, t) == doctest::Approx(est.value).epsilon(1e-12));
    const auto again = lambda_bilinear(6.0, 0.5, t, b);
    CHECK(again.value == est.value);
    CHECK_THROWS_AS(lambda_bilinear(6.0, 0.5, ExponentTriple{}, b), std::invalid_argument);
    CHECK_THROWS_AS(lambda_bilinear(6.0, 0.5, triple2("2", "inf", "4"), b), std::invalid_argument);
}
