#include <benchmark/benchmark.h>

#include "terndio/expsums.hpp"
#include "terndio/weights.hpp"
#include "terndio/zeta.hpp"

using namespace terndio;

namespace {
ExpSumContext context(double P) { return ExpSumContext(P, FormParams{3, 1.0, 1.0}, solve_support(1.0, 3)); }
}  // namespace

static void BM_F1Point(benchmark::State& state) {
  ExpSumContext ctx = context(static_cast<double>(state.range(0)));
  double t = 1234.5;
  for (auto _ : state) benchmark::DoNotOptimize(f1(ctx, t += 0.01));
  state.counters["terms"] = static_cast<double>(ctx.f1_weights().size());
}
BENCHMARK(BM_F1Point)->RangeMultiplier(2)->Range(16, 256);

static void BM_F1Grid(benchmark::State& state) {
  ExpSumContext ctx = context(64);
  for (auto _ : state) {
    auto v = f1_grid(ctx, 0.0, ctx.max_spacing(), 4096, static_cast<unsigned>(state.range(0)));
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(BM_F1Grid)->Arg(1)->Arg(4)->UseRealTime();

static void BM_KernelI(benchmark::State& state) {
  double y = 1e-3;
  for (auto _ : state) benchmark::DoNotOptimize(kernel_I(1e4, y *= 1.0001));
}
BENCHMARK(BM_KernelI);

static void BM_Zeta(benchmark::State& state) {
  double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(zeta_half_line(t += 1e-3).magnitude);
}
BENCHMARK(BM_Zeta)->Arg(10)->Arg(1000)->Arg(100000);

static void BM_IntegralI3(benchmark::State& state) {
  ExpSumContext ctx = context(16);
  const double T = ctx.T_for(16.0);
  const auto method = state.range(0) == 0 ? I3Method::quadrature : I3Method::pairwise;
  for (auto _ : state) benchmark::DoNotOptimize(integral_I3(ctx, T, {}, method).value);
  state.SetLabel(to_string(method));
}
BENCHMARK(BM_IntegralI3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
