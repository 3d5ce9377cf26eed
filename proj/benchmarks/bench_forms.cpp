#include <benchmark/benchmark.h>

#include "terndio/forms.hpp"
#include "terndio/weights.hpp"

using namespace terndio;

static void BM_MinSearchBrute(benchmark::State& state) {
  const auto n = state.range(0);
  FormParams p{3, 0.8, 0.7};
  for (auto _ : state) benchmark::DoNotOptimize(min_search_brute(p, BoxRegion::cube(1, n)).min_abs);
  state.SetComplexityN(n);
}
BENCHMARK(BM_MinSearchBrute)->RangeMultiplier(2)->Range(8, 64)->Complexity(benchmark::oNCubed);

static void BM_MinSearchFast(benchmark::State& state) {
  const double P = static_cast<double>(state.range(0));
  FormParams p{3, 0.8, 0.7};
  BoxRegion box = BoxRegion::from_support(solve_support(0.8, 3), P);
  for (auto _ : state) benchmark::DoNotOptimize(min_search_fast(p, box).min_abs);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MinSearchFast)->RangeMultiplier(2)->Range(32, 512)->Complexity(benchmark::oNSquared);

static void BM_MinSearchFastWorkers(benchmark::State& state) {
  FormParams p{3, 0.8, 0.7};
  BoxRegion box = BoxRegion::from_support(solve_support(0.8, 3), 1024);
  SearchOptions o;
  o.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(min_search_fast(p, box, o).min_abs);
}
BENCHMARK(BM_MinSearchFastWorkers)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

BENCHMARK_MAIN();
