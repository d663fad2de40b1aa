#include "doctest.h"
#include "oracles.hpp"
#include "slab/fourier.hpp"

#include <cmath>

using namespace slab;

TEST_CASE("grid invariants") {
    CHECK_THROWS(GridSpec(1, 6, 1.0));
    CHECK_THROWS(GridSpec(1, 4, 1.0));
    CHECK_THROWS(GridSpec(3, 8, 1.0));
    CHECK_THROWS(GridSpec(1, 8, -1.0));
    // Nyquist of 16 points on L = 2*pi is 16/2 = 8.
    CHECK_NOTHROW(GridSpec(1, 16, 2 * pi, 7.9));
    CHECK_THROWS(GridSpec(1, 16, 2 * pi, 8.0));
    GridSpec g(2, 8, 4.0);
    CHECK(g.size() == 64);
    CHECK(g.coord(0) == doctest::Approx(-2.0));
    CHECK(g.coord(4) == doctest::Approx(0.0));
    CHECK(g.freq(7) == doctest::Approx(-2 * pi / 4.0));
}

TEST_CASE("field invariants") {
    GridSpec g(1, 8, 1.0);
    CHECK_THROWS(SampledField(g, std::vector<cplx>(7)));
    std::vector<cplx> v(8);
    v[3] = cplx(NAN, 0.0);
    CHECK_THROWS(SampledField(g, v));
    CHECK_THROWS(SpaceTimeField(g, {0.5, 0.2}, Interval{0, 1}, std::vector<cplx>(16)));
    CHECK_THROWS(SpaceTimeField(g, {0.5, 1.5}, Interval{0, 1}, std::vector<cplx>(16)));
    CHECK_THROWS(SpaceTimeField(g, {}, Interval{0, 1}, {}));
}

TEST_CASE("point mass transforms to the constant 1") {
    for (int d : {1, 2}) {
        GridSpec g(d, 16, 8.0);
        auto f = SampledField::zeros(g);
        const std::size_t origin = d == 1 ? 8 : 8 * 16 + 8;
        f.values[origin] = 1.0 / g.cell_volume();
        auto fh = forward_transform(f);
        for (const auto& z : fh.values) CHECK(std::abs(z - cplx(1.0, 0.0)) < 1e-12);
    }
}

TEST_CASE("grid plane wave transforms to a single mode") {
    GridSpec g(1, 32, 10.0);
    const int k0 = 5;
    auto f = SampledField::zeros(g);
    for (int j = 0; j < 32; ++j) f.values[j] = std::exp(cplx(0.0, g.coord(j) * g.freq(k0)));
    auto fh = forward_transform(f);
    for (int k = 0; k < 32; ++k) {
        const double expect = k == k0 ? g.extent() : 0.0;
        CHECK(std::abs(fh.values[k] - expect) < 1e-11);
    }
}

TEST_CASE("forward transform matches the nested-sum oracle; round trip is the identity") {
    for (int d : {1, 2}) {
        GridSpec g(d, 8, 3.0);
        SampledField f(g, oracle::random_values(g.size(), 11 + d));
        auto fh = forward_transform(f);
        CHECK(oracle::rel_l2(fh.values, oracle::forward_dft(g, f.values)) < 1e-12);
        auto back = inverse_transform(fh);
        CHECK(oracle::rel_l2(back.values, f.values) < 1e-12);
        CHECK(oracle::rel_l2(back.values, oracle::inverse_dft(g, fh.values)) < 1e-12);
    }
}

TEST_CASE("Plancherel under the stated convention") {
    for (int d : {1, 2}) {
        GridSpec g(d, 32, 5.0);
        SampledField f(g, oracle::random_values(g.size(), 3));
        auto fh = forward_transform(f);
        double space = 0.0, freq = 0.0;
        for (auto z : f.values) space += std::norm(z);
        space *= g.cell_volume();
        for (auto z : fh.values) freq += std::norm(z);
        freq *= std::pow(2 * pi / g.extent(), d) / std::pow(2 * pi, d);
        CHECK(std::abs(space - freq) / space < 1e-10);
    }
}

TEST_CASE("apply_multiplier") {
    GridSpec g(1, 16, 6.0);
    SampledField f(g, oracle::random_values(16, 5));
    auto id = apply_multiplier(f, [](const double*) { return cplx(1.0, 0.0); });
    CHECK(oracle::max_abs_diff(id.values, f.values) < 1e-13);

    // Two-mode field, half-space indicator keeps the positive mode.
    auto two = SampledField::zeros(g);
    for (int j = 0; j < 16; ++j)
        two.values[j] = std::exp(cplx(0.0, g.coord(j) * g.freq(3))) + std::exp(cplx(0.0, g.coord(j) * g.freq(13)));
    auto kept = apply_multiplier(two, [](const double* xi) { return cplx(xi[0] > 0 ? 1.0 : 0.0, 0.0); });
    for (int j = 0; j < 16; ++j)
        CHECK(std::abs(kept.values[j] - std::exp(cplx(0.0, g.coord(j) * g.freq(3)))) < 1e-12);

    // Gaussian multiplier against DFT-multiply-inverse nested sums.
    auto gm = apply_multiplier(f, [](const double* xi) { return cplx(std::exp(-xi[0] * xi[0]), 0.0); });
    auto F = oracle::forward_dft(g, f.values);
    for (int k = 0; k < 16; ++k) F[k] *= std::exp(-g.freq(k) * g.freq(k));
    CHECK(oracle::rel_l2(gm.values, oracle::inverse_dft(g, F)) < 1e-12);

    CHECK_THROWS(apply_multiplier(f, [](const double*) { return cplx(INFINITY, 0.0); }));
}

TEST_CASE("Littlewood-Paley partition of unity and block structure") {
    GridSpec g(1, 256, 16.0);
    const int K = lp_max_index(g);
    CHECK(K >= 3);
    CHECK_THROWS(lp_window(g, K + 1));
    SampledField f(g, oracle::random_values(256, 9));
    std::vector<cplx> sum(256, 0.0);
    for (int k = 0; k <= K; ++k) {
        auto pk = littlewood_paley_project(f, k);
        for (int j = 0; j < 256; ++j) sum[j] += pk.values[j];
    }
    CHECK(oracle::max_abs_diff(sum, f.values) < 1e-10);

    std::vector<double> total(256, 0.0);
    for (int k = 0; k <= K; ++k) {
        auto w = lp_window(g, k);
        for (int i = 0; i < 256; ++i) total[i] += w[i];
    }
    for (double t : total) CHECK(t == doctest::Approx(1.0).epsilon(1e-15));

    // P_j P_k = 0 for |j - k| >= 2, for data inside the resolved range
    // |xi| <= 4*2^K/3 (above it P_0 absorbs the remainder of the grid).
    auto fh = forward_transform(f);
    const auto r = frequency_norms(g);
    for (int i = 0; i < 256; ++i)
        if (r[i] > std::ldexp(4.0 / 3.0, K)) fh.values[i] = 0.0;
    auto fb = inverse_transform(fh);
    for (int j = 0; j <= K; ++j)
        for (int k = 0; k <= K; ++k) {
            if (std::abs(j - k) < 2) continue;
            auto pjk = littlewood_paley_project(littlewood_paley_project(fb, k), j);
            double m = 0.0;
            for (auto z : pjk.values) m = std::max(m, std::abs(z));
            CHECK(m < 1e-12);
        }
}

TEST_CASE("Littlewood-Paley plateau: P_k f = f for spectrum in [2^k, 4*2^k/3]") {
    GridSpec g(1, 512, 64.0);
    const int k = 3;  // plateau [8, 10.67]
    auto f = SampledField::zeros(g);
    const auto r = frequency_norms(g);
    auto fh = forward_transform(f);
    auto noise = oracle::random_values(512, 21);
    for (int i = 0; i < 512; ++i)
        if (r[i] >= 8.0 && r[i] <= 32.0 / 3.0) fh.values[i] = noise[i];
    f = inverse_transform(fh);
    auto pk = littlewood_paley_project(f, k);
    CHECK(oracle::rel_l2(pk.values, f.values) < 1e-12);
}

TEST_CASE("windows and profiles") {
    CHECK(bump(0.0) == doctest::Approx(1.0));
    CHECK(bump(1.0) == 0.0);
    CHECK(bump(-1.2) == 0.0);
    CHECK(smooth_step(0.0) == 0.0);
    CHECK(smooth_step(1.0) == 1.0);
    CHECK(smooth_step(0.5) == doctest::Approx(0.5));
    auto a = FrequencyWindow::smooth_annulus(0.2, 0.25, 12.0, 15.0);
    CHECK(a(0.1) == 0.0);
    CHECK(a(0.25) == 1.0);
    CHECK(a(7.0) == 1.0);
    CHECK(a(12.0) == 1.0);
    CHECK(a(15.0) == 0.0);
    CHECK(a(13.5) > 0.0);
    CHECK(a(13.5) < 1.0);
    auto s = FrequencyWindow::sharp_annulus(1.0, 2.0);
    CHECK(s(1.0) == 1.0);
    CHECK(s(2.0) == 1.0);
    CHECK(s(2.0001) == 0.0);
    auto b = FrequencyWindow::smooth_ball(1.0, 2.0);
    CHECK(b(0.0) == 1.0);
    CHECK(b(1.0) == 1.0);
    CHECK(b(2.0) == 0.0);
    auto sh = FrequencyWindow::smooth_shell(1.0, 3.0);
    CHECK(sh(2.0) == doctest::Approx(1.0));
    CHECK(sh(1.0) == 0.0);
    CHECK_THROWS(FrequencyWindow::sharp_annulus(2.0, 1.0));
    CHECK_THROWS(FrequencyWindow::smooth_annulus(1.0, 1.0, 2.0, 3.0));
}

TEST_CASE("transforms are pure") {
    GridSpec g(2, 16, 4.0);
    SampledField f(g, oracle::random_values(g.size(), 1));
    auto a = forward_transform(f);
    auto b = forward_transform(f);
    CHECK(a.values == b.values);
    auto c = littlewood_paley_project(f, 1);
    auto e = littlewood_paley_project(f, 1);
    CHECK(c.values == e.values);
}
