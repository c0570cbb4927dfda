#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <besovlab/error.hpp>
#include <besovlab/lab.hpp>

using namespace besovlab;

namespace {

ExtendedIndex f(double v) { return ExtendedIndex::finite(v); }
const ExtendedIndex inf = ExtendedIndex::infinity();

PriorSpec prior(SlabDistribution slab, LevelSchedule tau, LevelSchedule pi) {
  PriorSpec p;
  p.slab = slab;
  p.tau = tau;
  p.pi = pi;
  return p;
}

double median_of(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace

TEST(Lab, LevelRangeValidation) {
  EXPECT_THROW((LevelRange{5, 4}.validate()), DomainError);
  EXPECT_THROW((LevelRange{-1, 4}.validate()), DomainError);
  EXPECT_THROW((LevelRange{0, 31}.validate()), DomainError);
  EXPECT_NO_THROW((LevelRange{}.validate()));
}

TEST(Lab, LlnSecondMoment) {
  const auto r = lln_experiment(Gaussian{1.0}, {1, 0.5, 0}, 2.0, {18, 18}, 50, 1);
  ASSERT_EQ(r.levels.size(), 1u);
  EXPECT_NEAR(r.levels[0].mean, 1.0, 0.05);
  EXPECT_DOUBLE_EQ(*r.levels[0].reference, 1.0);
  EXPECT_DOUBLE_EQ(r.levels[0].expected_count, 512.0);
}

TEST(Lab, LlnFirstMoment) {
  const auto r = lln_experiment(Gaussian{1.0}, {1, 0.5, 0}, 1.0, {14, 18}, 50, 2);
  EXPECT_NEAR(r.levels.back().mean, std::sqrt(2.0 / M_PI), 0.02);
  EXPECT_NEAR(*r.levels.back().reference, 0.7978845608028654, 1e-12);
}

TEST(Lab, LlnFullLevel) {
  const auto r = lln_experiment(Gaussian{1.0}, {1, 0, 0}, 2.0, {20, 20}, 4, 3);
  EXPECT_NEAR(r.levels[0].mean, 1.0, 0.01);
}

TEST(Lab, LlnErrorBarsScale) {
  const std::size_t reps = 200;
  const auto r = lln_experiment(Gaussian{1.0}, {1, 0.5, 0}, 2.0, {8, 16}, reps, 4);
  // Var(S_j / n_j) is close to E xi^4 / n_j = 3 / n_j
  for (const auto& st : r.levels) {
    const double scaled = st.stderr_of_mean * std::sqrt(st.expected_count * reps);
    EXPECT_GT(scaled, std::sqrt(3.0) / 2.0) << st.j;
    EXPECT_LT(scaled, std::sqrt(3.0) * 2.0) << st.j;
  }
}

TEST(Lab, LlnPreconditions) {
  EXPECT_THROW(lln_experiment(Cauchy{}, {1, 0.5, 0}, 2.0, {8, 9}, 4, 1), PreconditionError);
  EXPECT_THROW(lln_experiment(Gaussian{}, {1, 1.0, 0}, 2.0, {8, 9}, 4, 1), PreconditionError);
  EXPECT_THROW(lln_experiment(Gaussian{}, {1, 0.5, 0}, 2.0, {8, 9}, 1, 1), PreconditionError);
}

TEST(Lab, EvtGumbelMatchesDirectSimulation) {
  const int j = 12;
  const std::size_t reps = 200;
  const auto r = evt_experiment(Gaussian{1.0}, {1, 0, 0}, {j, j}, reps, 5);
  // independent draw of the same statistic with the standard library
  std::mt19937_64 rng(123);
  std::normal_distribution<double> z;
  const double n = std::ldexp(1.0, j);
  std::vector<double> maxima;
  for (std::size_t rep = 0; rep < reps; ++rep) {
    double best = 0.0;
    for (int i = 0; i < static_cast<int>(n); ++i) best = std::max(best, std::abs(z(rng)));
    maxima.push_back(best);
  }
  // b = quantile of |N(0,1)| at 1 - 1/n
  double lo = 0.0, hi = 10.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (std::erfc(mid / std::sqrt(2.0)) > 1.0 / n ? lo : hi) = mid;
  }
  const double b = 0.5 * (lo + hi);
  const double direct = median_of(maxima) / b;
  EXPECT_NEAR(r.levels[0].median, direct, 0.03);
  EXPECT_NEAR(r.levels[0].median, 1.0, 0.08);
}

TEST(Lab, EvtGumbelConcentrates) {
  const auto r = evt_experiment(Gaussian{1.0}, {1, 0, 0}, {12, 20}, 40, 6);
  const double first = std::abs(r.levels.front().median - 1.0);
  const double last = std::abs(r.levels.back().median - 1.0);
  EXPECT_LE(last, first + 0.02);
  EXPECT_GE(r.levels.back().median, 0.95);
  EXPECT_LE(r.levels.back().median, 1.05);
}

TEST(Lab, EvtFrechetDoesNotConcentrate) {
  const auto r = evt_experiment(Cauchy{}, {1, 0, 0}, {10, 16}, 60, 7);
  for (const auto& st : r.levels) {
    EXPECT_GT(st.iqr, 0.5) << st.j;
    EXPECT_NEAR(*st.reference, 1.0 / std::log(2.0), 1e-12);
  }
}

TEST(Lab, EvtRejectsSmallCounts) {
  EXPECT_THROW(evt_experiment(Gaussian{}, {1, 0.5, 0}, {0, 4}, 4, 1), DomainError);
  EXPECT_THROW(evt_experiment(Gaussian{}, {1, 1.0, 0}, {4, 6}, 4, 1), PreconditionError);
}

TEST(Lab, ExponentRegressionSlope) {
  const auto spec = prior(Gaussian{1.0}, {1, 1.5, 0}, {1, 0.5, 0});
  const auto r = exponent_regression(spec, {1.0, f(2), f(2)}, {8, 18}, 40, 8);
  ASSERT_TRUE(r.slope);
  EXPECT_NEAR(r.slope->mean, -0.5, 0.08);
  EXPECT_DOUBLE_EQ(*r.predicted_slope, -0.5);
  EXPECT_FALSE(r.degenerate);
  EXPECT_EQ(r.levels.size(), 11u);
}

TEST(Lab, ExponentRegressionFlatTerms) {
  const double s = 0.7;
  const auto spec = prior(Gaussian{1.0}, {1, s + 0.5, 0}, {1, 0, 0});
  const auto r = exponent_regression(spec, {s, f(2), f(2)}, {6, 14}, 20, 9);
  EXPECT_NEAR(r.slope->mean, 0.0, 0.05);
  EXPECT_NEAR(*r.predicted_slope, 0.0, 1e-12);
}

TEST(Lab, ExponentRegressionFlagsEmptyLevels) {
  const auto spec = prior(Gaussian{1.0}, {1, 0, 0}, {1, 2, 0});
  const auto r = exponent_regression(spec, {1.0, f(2), f(2)}, {8, 18}, 20, 10);
  EXPECT_TRUE(r.degenerate);
  EXPECT_GT(r.dropped_fraction, 0.9);
  EXPECT_FALSE(r.notes.empty());
}

TEST(Lab, ExponentRegressionPreconditions) {
  const auto spec = prior(Gaussian{1.0}, {1, 1.5, 0}, {1, 0.5, 0});
  EXPECT_THROW(exponent_regression(spec, {1.0, f(2), inf}, {8, 10}, 4, 1), PreconditionError);
  EXPECT_THROW(exponent_regression(prior(Cauchy{}, {1, 1, 0}, {1, 0.5, 0}), {1.0, f(2), f(2)}, {8, 10}, 4, 1),
               PreconditionError);
  auto reg = spec;
  reg.mode = RegressionMode{4096};
  EXPECT_THROW(exponent_regression(reg, {1.0, f(2), f(2)}, {8, 10}, 4, 1), PreconditionError);
}

TEST(Lab, MembershipExamples) {
  const auto spec = prior(Gaussian{1.0}, {1, 1.5, 0}, {1, 0.5, 0});
  const auto in = empirical_membership(spec, {1.0, f(2), f(2)}, {8, 18}, 40, 11);
  EXPECT_EQ(*in.empirical, EmpiricalVerdict::Converges);
  EXPECT_TRUE(*in.agrees);
  const auto out = empirical_membership(spec, {1.5, f(2), f(2)}, {8, 18}, 40, 12);
  EXPECT_EQ(*out.empirical, EmpiricalVerdict::Diverges);
  EXPECT_TRUE(*out.agrees);
  const auto edge = empirical_membership(spec, {1.25, f(2), f(2)}, {8, 18}, 40, 13);
  EXPECT_EQ(*edge.empirical, EmpiricalVerdict::Inconclusive);
  EXPECT_TRUE(*edge.agrees);
}

TEST(Lab, MembershipAgreesOffBoundary) {
  struct Config {
    SlabDistribution slab;
    LevelSchedule tau, pi;
    BesovParams bp;
  };
  const std::vector<Config> configs = {
      // 2^j pi_j increasing
      {Gaussian{}, {1, 1.5, 0}, {1, 0.5, 0}, {1.0, f(2), f(2)}},
      {Gaussian{}, {1, 1.5, 0}, {1, 0.5, 0}, {1.5, f(2), f(2)}},
      {Gaussian{}, {1, 1.0, 0}, {1, 0.3, 0}, {0.5, f(1), f(1)}},
      {Gaussian{}, {1, 1.0, 0}, {1, 0.3, 0}, {1.1, f(1), f(1)}},
      {Laplace{}, {1, 1.5, 0}, {1, 0.5, 0}, {0.95, f(2), inf}},
      {Laplace{}, {1, 1.5, 0}, {1, 0.5, 0}, {1.55, f(2), inf}},
      // 2^j pi_j -> const, q < inf
      {Gaussian{}, {1, 1.5, 0}, {1, 1, 0}, {1.2, f(2), f(2)}},
      {Gaussian{}, {1, 1.5, 0}, {1, 1, 0}, {1.8, f(2), f(2)}},
      {Laplace{}, {1, 1.0, 0}, {1, 1, 0}, {1.2, f(1), f(1)}},
      {Laplace{}, {1, 1.0, 0}, {1, 1, 0}, {1.8, f(1), f(1)}},
      // summable
      {Gaussian{}, {1, 0, 0}, {1, 2, 0}, {2.0, f(2), f(2)}},
      {Laplace{}, {1, 0.5, 0}, {1, 1.5, 0}, {1.0, f(1), inf}},
  };
  std::uint64_t seed = 100;
  for (const auto& c : configs) {
    const auto r = empirical_membership(prior(c.slab, c.tau, c.pi), c.bp, {8, 18}, 60, ++seed);
    ASSERT_TRUE(r.agrees.has_value()) << seed;
    EXPECT_TRUE(*r.agrees) << "config " << seed - 100 << " " << empirical_name(*r.empirical) << " vs "
                           << decision_name(r.theory->decision);
  }
}

TEST(Lab, ExperimentsIgnoreThreadCount) {
  const auto spec = prior(Laplace{1.0}, {1, 1.0, 0}, {1, 0.4, 0});
  const auto a = exponent_regression(spec, {0.5, f(2), f(1)}, {6, 12}, 12, 77, 1);
  const auto b = exponent_regression(spec, {0.5, f(2), f(1)}, {6, 12}, 12, 77, 5);
  EXPECT_EQ(a.slope->mean, b.slope->mean);
  EXPECT_EQ(a.slope->stderr_of_mean, b.slope->stderr_of_mean);
  const auto la = lln_experiment(Laplace{}, {1, 0.2, 0}, 1.5, {6, 12}, 7, 3, 1);
  const auto lb = lln_experiment(Laplace{}, {1, 0.2, 0}, 1.5, {6, 12}, 7, 3, 4);
  for (std::size_t i = 0; i < la.levels.size(); ++i) EXPECT_EQ(la.levels[i].mean, lb.levels[i].mean);
}
