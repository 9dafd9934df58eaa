#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "eqdense/bivariate.hpp"
#include "eqdense/density.hpp"
#include "eqdense/expectation.hpp"
#include "eqdense/moments.hpp"
#include "eqdense/montecarlo.hpp"
#include "eqdense/realroots.hpp"

using namespace eqdense;

static void BM_DensityG(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  double t = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f2d_via_G(d, t));
    t = t < 5 ? t * 1.01 : 0.37;
  }
}
BENCHMARK(BM_DensityG)->Arg(5)->Arg(50)->Arg(500)->Arg(5000);

static void BM_DensityLegendrePair(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  double t = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f2d_via_legendre_pair(d, t));
    t = t < 0.9 ? t * 1.01 : 0.37;
  }
}
BENCHMARK(BM_DensityLegendrePair)->Arg(5)->Arg(50)->Arg(500)->Arg(5000);

static void BM_GeneralDensity(benchmark::State& state) {
  const GameDims dims(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const GeneralDensityKernel kernel(dims);
  std::vector<double> t(static_cast<std::size_t>(dims.n - 1), 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(kernel(t).value);
}
BENCHMARK(BM_GeneralDensity)->Args({3, 5})->Args({3, 50})->Args({4, 10})->Args({4, 20});

static void BM_ExpectedCount2(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(expected_count_2d(d).value);
}
BENCHMARK(BM_ExpectedCount2)->Arg(10)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_ExpectedCount3(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(expected_count_nd(GameDims(3, d)).value);
}
BENCHMARK(BM_ExpectedCount3)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_MPolyRoots(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_m_factorization(d, {0.5}).max_residual);
}
BENCHMARK(BM_MPolyRoots)->Arg(10)->Arg(30)->Unit(benchmark::kMicrosecond);

static void BM_CountSample2(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  const auto mode = SamplingMode::independent_beta();
  for (auto _ : state) {
    state.PauseTiming();
    const auto g = sample_game(GameDims(2, d), mode, rng);
    state.ResumeTiming();
    benchmark::DoNotOptimize(count_sample_2(g[0], d).count);
  }
}
BENCHMARK(BM_CountSample2)->Arg(3)->Arg(8)->Arg(20)->Unit(benchmark::kMicrosecond);

static void BM_CountSample3(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  const auto mode = SamplingMode::payoff_alpha(0.5);
  for (auto _ : state) {
    state.PauseTiming();
    const auto g = sample_game(GameDims(3, d), mode, rng);
    state.ResumeTiming();
    benchmark::DoNotOptimize(count_sample_3(g[0], g[1], d).count);
  }
}
BENCHMARK(BM_CountSample3)->Arg(2)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
