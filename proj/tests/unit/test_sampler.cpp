#include <gtest/gtest.h>

#include <cmath>

#include <besovlab/error.hpp>
#include <besovlab/sampler.hpp>

using namespace besovlab;

namespace {

PriorSpec spec_of(LevelSchedule tau, LevelSchedule pi, int J) {
  PriorSpec s;
  s.tau = tau;
  s.pi = pi;
  s.slab = Gaussian{1.0};
  s.mode = InfiniteMode{J};
  return s;
}

}  // namespace

TEST(Sampler, AllSpike) {
  const PriorSpec s = spec_of({1, 0, 0}, {1e-300, 1000.0, 0.0}, 12);
  const CoefficientTree t = sample_tree(s, 2, {1, 2, 3, 4}, 3);
  EXPECT_EQ(total_nonzero(t), 0u);
  EXPECT_EQ(t.scaling, (std::vector<double>{1, 2, 3, 4}));
  EXPECT_EQ(t.top_level(), 12);
}

TEST(Sampler, NoSpikeFillsLevel) {
  const PriorSpec s = spec_of({1, 0, 0}, {1, 0, 0}, 10);
  const CoefficientTree t = sample_tree(s, 0, {0.0}, 1);
  const auto counts = nonzero_counts(t);
  for (std::size_t i = 0; i < counts.size(); ++i) EXPECT_EQ(counts[i], std::size_t{1} << i);
  t.validate();
}

TEST(Sampler, BinomialCountAtLevel16) {
  const PriorSpec s = spec_of({1, 0, 0}, {1, 0.5, 0}, 16);
  const int R = 200;
  double sum = 0.0, sum2 = 0.0;
  for (int r = 0; r < R; ++r) {
    Rng rng = make_rng(8, Stream::tree, 16, static_cast<std::uint64_t>(r));
    const double n = static_cast<double>(sample_level(s, 16, rng).entries.size());
    sum += n;
    sum2 += n * n;
  }
  const double mean = sum / R;
  EXPECT_LT(std::abs(mean - 256.0), 3.0 * std::sqrt(256.0) / std::sqrt(R));
  // binomial variance 2^16 p (1 - p)
  const double var = (sum2 - R * mean * mean) / (R - 1);
  const double expect_var = 65536.0 * (1.0 / 256.0) * (1.0 - 1.0 / 256.0);
  EXPECT_NEAR(var / expect_var, 1.0, 4.0 * std::sqrt(2.0 / (R - 1)));
}

TEST(Sampler, SummableRegimeTailCount) {
  const PriorSpec s = spec_of({1, 0, 0}, {1, 2.0, 0}, 20);
  const int R = 500;
  double sum = 0.0, sum2 = 0.0;
  for (int r = 0; r < R; ++r) {
    const CoefficientTree t = sample_tree(s, 0, {0.0}, 21, static_cast<std::uint64_t>(r));
    const auto counts = nonzero_counts(t);
    double beyond = 0.0;
    for (std::size_t i = 5; i < counts.size(); ++i) beyond += static_cast<double>(counts[i]);
    sum += beyond;
    sum2 += beyond * beyond;
  }
  const double mean = sum / R;
  const double se = std::sqrt((sum2 / R - mean * mean) / R);
  double expect = 0.0;
  for (int j = 5; j <= 20; ++j) expect += std::exp2(-j);
  EXPECT_LT(std::abs(mean - expect), 3.0 * se + 1e-12);
}

TEST(Sampler, ValuesAreScaledSlabDraws) {
  PriorSpec s = spec_of({1.0, 1.0, 0}, {1, 0, 0}, 8);
  const CoefficientTree t = sample_tree(s, 8, std::vector<double>(256, 0.0), 4);
  double m2 = 0.0;
  for (const Entry& e : t.levels[0].entries) m2 += e.w * e.w;
  m2 /= 256.0;
  // tau_8 = 2^-8, unit variance slab
  EXPECT_NEAR(m2 / std::exp2(-16), 1.0, 0.3);
}

TEST(Sampler, DeterministicAcrossThreadCounts) {
  const PriorSpec s = spec_of({1, 1.5, 0}, {1, 0.3, 0}, 16);
  const CoefficientTree a = sample_tree(s, 3, std::vector<double>(8, 0.5), 77, 2, 1);
  for (unsigned threads : {2u, 4u, 8u}) {
    const CoefficientTree b = sample_tree(s, 3, std::vector<double>(8, 0.5), 77, 2, threads);
    ASSERT_EQ(a.levels.size(), b.levels.size());
    for (std::size_t i = 0; i < a.levels.size(); ++i) {
      ASSERT_EQ(a.levels[i].entries.size(), b.levels[i].entries.size());
      for (std::size_t k = 0; k < a.levels[i].entries.size(); ++k) {
        EXPECT_EQ(a.levels[i].entries[k].k, b.levels[i].entries[k].k);
        EXPECT_EQ(a.levels[i].entries[k].w, b.levels[i].entries[k].w);
      }
    }
  }
  // a different j0 leaves the shared levels unchanged
  const CoefficientTree c = sample_tree(s, 10, std::vector<double>(1024, 0.0), 77, 2, 1);
  EXPECT_EQ(c.levels.back().entries.size(), a.levels.back().entries.size());
}

TEST(Sampler, RegressionModeTopLevelAndScaling) {
  PriorSpec s = spec_of({1, 0, 0}, {1, 0, 0}, 0);
  s.mode = RegressionMode{1024};
  EXPECT_EQ(s.top_level(), 9);
  EXPECT_DOUBLE_EQ(s.coefficient_factor(), 1.0 / 32.0);
  const CoefficientTree t = sample_tree(s, 0, {0.0}, 5);
  EXPECT_EQ(t.top_level(), 9);
  s.mode = RegressionMode{4};
  EXPECT_THROW(sample_tree(s, 2, {0, 0, 0, 0}, 5), DomainError);
}

TEST(Sampler, RejectsBadLevels) {
  const PriorSpec s = spec_of({1, 0, 0}, {1, 0, 0}, 3);
  EXPECT_THROW(sample_tree(s, 5, std::vector<double>(32, 0.0), 1), DomainError);
  EXPECT_THROW(sample_tree(s, -1, {}, 1), DomainError);
}
