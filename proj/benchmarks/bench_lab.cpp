#include <benchmark/benchmark.h>

#include <besovlab/lab.hpp>

using namespace besovlab;

static void BM_Lln(benchmark::State& state) {
  const int j = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto r = lln_experiment(Gaussian{1.0}, {1.0, 0.5, 0.0}, 2.0, {j, j}, 50, 1);
    benchmark::DoNotOptimize(r.levels.data());
  }
}
BENCHMARK(BM_Lln)->Arg(18)->Arg(22)->Unit(benchmark::kMillisecond);

static void BM_Evt(benchmark::State& state) {
  for (auto _ : state) {
    const auto r = evt_experiment(Laplace{1.0}, {1.0, 0.0, 0.0}, {16, 16}, 20, 2);
    benchmark::DoNotOptimize(r.levels.data());
  }
}
BENCHMARK(BM_Evt)->Unit(benchmark::kMillisecond);

static void BM_Regression(benchmark::State& state) {
  PriorSpec spec;
  spec.tau = {1.0, 1.5, 0.0};
  spec.pi = {1.0, 0.5, 0.0};
  for (auto _ : state) {
    const auto r = exponent_regression(spec, {1.0, ExtendedIndex::finite(2), ExtendedIndex::finite(2)}, {8, 18}, 100, 3);
    benchmark::DoNotOptimize(r.slope);
  }
}
BENCHMARK(BM_Regression)->Unit(benchmark::kMillisecond);
