#include <benchmark/benchmark.h>

#include <besovlab/cwt.hpp>

using namespace besovlab;

static void BM_KernelBuild(benchmark::State& state) {
  const auto f = daubechies(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    KernelEvaluator k(f);
    benchmark::DoNotOptimize(k.k0(1.0, 0.0));
  }
}
BENCHMARK(BM_KernelBuild)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_KernelDyadic(benchmark::State& state) {
  const KernelEvaluator k(daubechies(4));
  const int a = static_cast<int>(state.range(0));
  double v = -0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(k.k0_dyadic(a, v));
    v = v > 2.5 ? -0.3 : v + 0.01;
  }
}
BENCHMARK(BM_KernelDyadic)->Arg(1)->Arg(6)->Arg(-6);

static void BM_KernelQuadrature(benchmark::State& state) {
  const KernelEvaluator k(daubechies(4));
  double v = -0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(k.k0_quadrature(1.37, v));
    v = v > 2.5 ? -0.3 : v + 0.01;
  }
}
BENCHMARK(BM_KernelQuadrature);

static void BM_Projection(benchmark::State& state) {
  const KernelEvaluator k(daubechies(4));
  CwtSpec spec;
  spec.a0 = 8.0;
  spec.a_max = 4096.0;
  const auto atoms = sample_atoms(spec, 5);
  for (auto _ : state) {
    const auto t = project_to_orthogonal(atoms, k, 3, 10);
    benchmark::DoNotOptimize(t.scaling.data());
  }
  state.counters["atoms"] = static_cast<double>(atoms.size());
}
BENCHMARK(BM_Projection)->Unit(benchmark::kMillisecond);
