// Serial reference paths against their OpenMP counterparts.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <cmath>

#include "slab/extension.hpp"
#include "slab/extremizers.hpp"
#include "slab/normlab.hpp"
#include "slab/norms.hpp"
#include "slab/propagator.hpp"

using namespace slab;

namespace {

Exec mode(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

SampledField gaussian(const GridSpec& g) {
    auto f = SampledField::zeros(g);
    for (int j = 0; j < g.n(); ++j) f.values[j] = std::exp(-0.5 * g.coord(j) * g.coord(j));
    return f;
}

void BM_evolve_kernel(benchmark::State& state) {
    GridSpec g(1, static_cast<int>(state.range(1)), 40.0);
    const auto f = gaussian(g);
    for (auto _ : state) benchmark::DoNotOptimize(evolve_kernel(f, 0.5, mode(state)));
    label(state);
}

void BM_evolve_spectral(benchmark::State& state) {
    GridSpec g(1, static_cast<int>(state.range(1)), 40.0);
    const auto f = gaussian(g);
    const auto times = uniform_times(Interval{0, 1}, 64);
    for (auto _ : state) benchmark::DoNotOptimize(evolve_spectral(f, times, Interval{0, 1}, mode(state)));
    label(state);
}

void BM_mixed_norm(benchmark::State& state) {
    GridSpec g(1, 4096, 40.0);
    const auto times = uniform_times(Interval{0, 1}, 128);
    const auto u = evolve_spectral(gaussian(g), times, Interval{0, 1});
    const MixedNormSpec spec{Exponent(4), Exponent(Rational(7, 2)), Interval{0, 1}};
    for (auto _ : state) benchmark::DoNotOptimize(mixed_norm(u, spec, mode(state)));
    label(state);
}

void BM_extend(benchmark::State& state) {
    const auto f = BallSamples::from_function(2, 65, [](const double* y) { return cplx(bump(std::hypot(y[0], y[1])), 0.0); });
    std::vector<EvalPoint> pts;
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j) pts.push_back({{0.25 * i, 0.25 * j}, 1.0 + 0.05 * i});
    for (auto _ : state) benchmark::DoNotOptimize(extend(f, pts, mode(state)));
    label(state);
}

void BM_union_measure(benchmark::State& state) {
    const auto p = keich_translations(128, 1);
    const int threads = omp_get_max_threads();
    omp_set_num_threads(state.range(0) ? threads : 1);
    for (auto _ : state) benchmark::DoNotOptimize(union_measure(p, 256));
    omp_set_num_threads(threads);
    label(state);
}

void BM_sweep_cells(benchmark::State& state) {
    SearchBudget b;
    b.random_trials = 0;
    b.ascent_iters = 2;
    ExponentTriple t;
    t.p = Exponent(2);
    t.q = Exponent::infinity();
    t.r = Exponent(2);
    for (auto _ : state) benchmark::DoNotOptimize(sweep_band_norms(t, {4, 8, 16}, Interval{0, 1}, b, 0.5, mode(state)));
    label(state);
}

}  // namespace

BENCHMARK(BM_evolve_kernel)->ArgsProduct({{0, 1}, {512, 2048}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_evolve_spectral)->ArgsProduct({{0, 1}, {1024, 8192}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mixed_norm)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_extend)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_union_measure)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_cells)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
