#include <benchmark/benchmark.h>

#include <besovlab/besov.hpp>
#include <besovlab/sampler.hpp>

using namespace besovlab;

namespace {

CoefficientTree draw(int J, double beta) {
  PriorSpec spec;
  spec.tau = {1.0, 1.0, 0.0};
  spec.pi = {1.0, beta, 0.0};
  spec.mode = InfiniteMode{J};
  return sample_tree(spec, 2, {}, 3);
}

}  // namespace

static void BM_SeqNorm(benchmark::State& state) {
  const auto t = draw(static_cast<int>(state.range(0)), 0.3);
  const BesovParams bp{0.7, ExtendedIndex::finite(2.5), ExtendedIndex::finite(1.5)};
  for (auto _ : state) benchmark::DoNotOptimize(besov_seq_norm(t, bp));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(total_nonzero(t)));
}
BENCHMARK(BM_SeqNorm)->Arg(12)->Arg(18);

static void BM_SeqNormSup(benchmark::State& state) {
  const auto t = draw(static_cast<int>(state.range(0)), 0.3);
  const BesovParams bp{0.7, ExtendedIndex::infinity(), ExtendedIndex::infinity()};
  for (auto _ : state) benchmark::DoNotOptimize(besov_seq_norm(t, bp));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(total_nonzero(t)));
}
BENCHMARK(BM_SeqNormSup)->Arg(12)->Arg(18);
