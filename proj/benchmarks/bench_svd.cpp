#include <benchmark/benchmark.h>

#include "normforge/gen.hpp"
#include "normforge/linalg.hpp"

using namespace normforge;

static void BM_SvdPrimary(benchmark::State& state) {
  const ComplexMatrix m = gen::random_ginibre(state.range(0), state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::svd_spectrum(m, linalg::Path::Primary));
}
BENCHMARK(BM_SvdPrimary)->RangeMultiplier(2)->Range(2, 32);

static void BM_SvdAlternate(benchmark::State& state) {
  const ComplexMatrix m = gen::random_ginibre(state.range(0), state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::svd_spectrum(m, linalg::Path::Alternate));
}
BENCHMARK(BM_SvdAlternate)->RangeMultiplier(2)->Range(2, 32);

static void BM_PsdFunction(benchmark::State& state) {
  const ComplexMatrix a =
      gen::random_in_class({state.range(0), 0, MatrixTag::PositiveSemidefinite, 1.0, 2, Variant::Standard});
  for (auto _ : state) {
    benchmark::DoNotOptimize(linalg::apply_psd_function(a, [](double x) { return std::sqrt(x); }));
  }
}
BENCHMARK(BM_PsdFunction)->RangeMultiplier(2)->Range(2, 32);

BENCHMARK_MAIN();
