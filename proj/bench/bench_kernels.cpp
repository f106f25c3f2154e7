// Serial reference vs OpenMP for the parallel kernels. Arg 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include "symratio/cube222.hpp"
#include "symratio/harness.hpp"
#include "symratio/parallel.hpp"
#include "symratio/spectral.hpp"

using namespace symratio;

namespace {

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_CircleGrid(benchmark::State& state) {
  const SymTensor a = make_w(12);
  for (auto _ : state) benchmark::DoNotOptimize(circle_grid_max(a, 1000000, exec_of(state)));
}
BENCHMARK(BM_CircleGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PowerMultistart(benchmark::State& state) {
  auto rng = stream_rng(1, 0);
  std::vector<double> c(MonomialBasis(4, 6).size());
  for (double& x : c) x = std::normal_distribution<double>()(rng);
  const SymTensor a(4, 6, c);
  IterConfig cfg;
  cfg.starts = 64;
  cfg.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_norm_power(a, cfg).value);
}
BENCHMARK(BM_PowerMultistart)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_AlsMultistart(benchmark::State& state) {
  auto rng = stream_rng(2, 0);
  const DenseTensor t = random_rank_two(rng, 4, 3);
  IterConfig cfg = als_defaults();
  cfg.starts = 128;
  cfg.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_norm_3(t, cfg).value);
}
BENCHMARK(BM_AlsMultistart)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FeasibleScan(benchmark::State& state) {
  FeasibleScanConfig cfg;
  cfg.samples = 200000;
  cfg.polish = 20;
  cfg.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(feasible_max_scan(cfg).max_objective);
}
BENCHMARK(BM_FeasibleScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_VerifySuite(benchmark::State& state) {
  VerifyConfig cfg;
  cfg.budget = 2000;
  cfg.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(cmd_verify("thm1-bound", cfg).cases);
}
BENCHMARK(BM_VerifySuite)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
