#include <benchmark/benchmark.h>

#include "terndio/nearpoints.hpp"

using namespace terndio;

static void BM_SurfaceCount(benchmark::State& state) {
  const SupportParams s = solve_support(0.75, 3);
  MongeSurface m = MongeSurface::from_support(3, 0.75, s);
  BumpFamily w(s);
  const int Q = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_near_surface(m, w, Q, 0.25).count);
  state.SetComplexityN(Q);
}
BENCHMARK(BM_SurfaceCount)->RangeMultiplier(2)->Range(32, 256)->Complexity(benchmark::oNCubed);

static void BM_I4(benchmark::State& state) {
  const double P = static_cast<double>(state.range(0));
  ExpSumContext ctx(P, FormParams{3, 1.0, 1.0}, solve_support(1.0, 3));
  for (auto _ : state) benchmark::DoNotOptimize(i4_count(ctx, P).value);
}
BENCHMARK(BM_I4)->RangeMultiplier(2)->Range(16, 64);

static void BM_RCount(benchmark::State& state) {
  const int P = static_cast<int>(state.range(0));
  const RMode mode = state.range(1) == 0 ? RMode::quartic : RMode::product_pair;
  for (auto _ : state) benchmark::DoNotOptimize(r_count(P, 3, 1.0 * P * P, mode));
}
BENCHMARK(BM_RCount)->Args({32, 0})->Args({32, 1})->Args({128, 1})->Args({512, 1});

BENCHMARK_MAIN();
