#include <benchmark/benchmark.h>

#include "normforge/hunter.hpp"

using namespace normforge;

static void BM_Perturb(benchmark::State& state) {
  const Instance inst = catalog::sample_instance("conj_1", state.range(0), 1, 0);
  std::uint64_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(perturb_in_class(inst, 0.1, ++k));
}
BENCHMARK(BM_Perturb)->Arg(2)->Arg(4)->Arg(8);

static void BM_HuntRestart(benchmark::State& state) {
  HuntConfig cfg;
  cfg.statement = "conj_3";
  cfg.restarts = 1;
  cfg.steps = 50;
  cfg.dim_lo = cfg.dim_hi = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(hunt(cfg));
}
BENCHMARK(BM_HuntRestart)->Arg(2)->Arg(4);

BENCHMARK_MAIN();
