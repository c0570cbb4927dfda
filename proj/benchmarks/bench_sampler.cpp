#include <benchmark/benchmark.h>

#include <besovlab/sampler.hpp>

using namespace besovlab;

static void BM_SampleTree(benchmark::State& state) {
  PriorSpec spec;
  spec.tau = {1.0, 1.5, 0.0};
  spec.pi = {1.0, 0.5, 0.0};
  spec.mode = InfiniteMode{static_cast<int>(state.range(0))};
  std::uint64_t rep = 0;
  std::size_t n = 0;
  for (auto _ : state) {
    const auto t = sample_tree(spec, 4, {}, 1, rep++);
    n += total_nonzero(t);
    benchmark::DoNotOptimize(t.levels.data());
  }
  state.counters["coefs/s"] = benchmark::Counter(static_cast<double>(n), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_SampleTree)->Arg(12)->Arg(16)->Arg(20);

static void BM_SampleLevelDense(benchmark::State& state) {
  PriorSpec spec;
  spec.pi = {1.0, 0.0, 0.0};
  spec.slab = Laplace{1.0};
  const int j = static_cast<int>(state.range(0));
  Rng rng(7);
  for (auto _ : state) {
    const auto lv = sample_level(spec, j, rng);
    benchmark::DoNotOptimize(lv.entries.data());
  }
  state.SetItemsProcessed(state.iterations() * (int64_t{1} << j));
}
BENCHMARK(BM_SampleLevelDense)->Arg(14)->Arg(18);
