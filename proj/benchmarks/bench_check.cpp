#include <benchmark/benchmark.h>

#include "normforge/catalog.hpp"

using namespace normforge;

namespace {

const char* const kIds[] = {"thm_1_1b", "conj_1", "thm_2_5", "thm_2_7", "q3_c", "lemma_3"};

}  // namespace

static void BM_Check(benchmark::State& state) {
  const char* id = kIds[state.range(0)];
  const Instance inst = catalog::sample_instance(id, state.range(1), 3, 0);
  for (auto _ : state) benchmark::DoNotOptimize(catalog::check(id, inst));
  state.SetLabel(id);
}
BENCHMARK(BM_Check)->ArgsProduct({{0, 1, 2, 3, 4, 5}, {2, 8}});

static void BM_SampleAndCheckAll(benchmark::State& state) {
  std::uint64_t t = 0;
  for (auto _ : state) {
    for (const auto& st : catalog::registry()) {
      benchmark::DoNotOptimize(catalog::check(st, catalog::sample_instance(st.id, 4, 5, t)));
    }
    ++t;
  }
}
BENCHMARK(BM_SampleAndCheckAll);

BENCHMARK_MAIN();
