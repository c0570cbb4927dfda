#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include <besovlab/besov.hpp>
#include <besovlab/error.hpp>

#include "../fixtures/dense_norm.hpp"

using namespace besovlab;
using fixtures::dense_norm;
using fixtures::dense_p_norm;
using fixtures::random_tree;

namespace {

const ExtendedIndex inf = ExtendedIndex::infinity();
ExtendedIndex fin(double v) { return ExtendedIndex::finite(v); }

}  // namespace

TEST(Besov, LevelNormExamples) {
  std::vector<Entry> e = {{0, 3.0}, {5, -4.0}};
  EXPECT_DOUBLE_EQ(level_p_norm(e, fin(2)), 5.0);
  EXPECT_DOUBLE_EQ(level_p_norm({}, fin(2)), 0.0);
  EXPECT_DOUBLE_EQ(level_p_norm({}, inf), 0.0);
  std::vector<Entry> ones = {{0, 1.0}, {1, 1.0}, {2, 1.0}};
  EXPECT_DOUBLE_EQ(level_p_norm(ones, inf), 1.0);
}

TEST(Besov, LevelTermExamples) {
  CoefficientTree t = make_empty_tree(0, 3);
  t.levels[2].entries.push_back({0, 1.0});
  const auto a = level_terms(t, {0.5, fin(2), fin(1)});
  EXPECT_DOUBLE_EQ(a[2], 2.0);
  EXPECT_DOUBLE_EQ(a[0], 0.0);

  CoefficientTree u = make_empty_tree(0, 6);
  for (Level& lv : u.levels) lv.entries.push_back({0, std::exp2(-lv.j)});
  // s' = s + 1/2 - 1 = 1 with p = 1
  for (double v : level_terms(u, {1.5, fin(1), fin(1)})) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(Besov, SeqNormExamples) {
  EXPECT_DOUBLE_EQ(besov_seq_norm(make_empty_tree(0, 5), {1.0, fin(2), fin(2)}), 0.0);
  CoefficientTree sc = make_empty_tree(2, 4, {1.0, 0.0, 0.0, 0.0});
  EXPECT_DOUBLE_EQ(besov_seq_norm(sc, {1.0, fin(1), fin(1)}), 1.0);

  // a_2 = 2, a_3 = 4 under s' = 1/2
  BesovParams bp{0.5, fin(2), fin(2)};
  CoefficientTree t = make_empty_tree(0, 3);
  t.levels[2].entries.push_back({1, 2.0 / std::exp2(1.0)});
  t.levels[3].entries.push_back({7, 4.0 / std::exp2(1.5)});
  EXPECT_NEAR(besov_seq_norm(t, bp), std::sqrt(20.0), 1e-14);
}

TEST(Besov, MatchesDenseBruteForce) {
  std::mt19937_64 rng(2024);
  const std::vector<ExtendedIndex> idx = {fin(1), fin(1.5), fin(2), fin(3.7), inf};
  for (int trial = 0; trial < 100; ++trial) {
    const CoefficientTree t = random_tree(rng, 1 + trial % 8);
    for (const auto& p : idx) {
      for (const auto& q : idx) {
        const BesovParams bp{0.3 + 0.01 * trial, p, q};
        const long double ref = dense_norm(t, bp);
        const double got = besov_seq_norm(t, bp);
        EXPECT_LE(std::fabs(got - ref), 1e-12L * std::max(1.0L, ref));
      }
    }
  }
}

TEST(Besov, Homogeneity) {
  std::mt19937_64 rng(5);
  const CoefficientTree t = random_tree(rng, 7);
  for (double c : {-3.0, 0.5, 10.0}) {
    const BesovParams bp{1.0, fin(1.5), fin(2)};
    EXPECT_NEAR(besov_seq_norm(scaled(t, c), bp), std::abs(c) * besov_seq_norm(t, bp),
                1e-12 * std::abs(c) * besov_seq_norm(t, bp));
  }
}

TEST(Besov, MonotoneInCoefficientMagnitude) {
  std::mt19937_64 rng(6);
  CoefficientTree t = random_tree(rng, 6);
  const BesovParams bp{0.7, fin(2), inf};
  double prev = besov_seq_norm(t, bp);
  for (Level& lv : t.levels) {
    for (Entry& e : lv.entries) {
      e.w *= 1.5;
      const double now = besov_seq_norm(t, bp);
      EXPECT_GE(now, prev);
      prev = now;
    }
  }
}

TEST(Besov, HolderSandwich) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> len(1, 200);
  std::uniform_real_distribution<double> pv(1.0, 6.0);
  std::cauchy_distribution<double> heavy;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> x(static_cast<std::size_t>(len(rng)));
    for (double& v : x) v = heavy(rng);
    double v1 = pv(rng), v2 = pv(rng);
    if (v1 > v2) std::swap(v1, v2);
    const ExtendedIndex small = fin(v1);
    const ExtendedIndex large = trial % 5 == 0 ? inf : fin(v2);
    const double nl = vector_p_norm(x, large);
    const double ns = vector_p_norm(x, small);
    const double n = static_cast<double>(x.size());
    EXPECT_LE(nl, ns * (1 + 1e-12));
    EXPECT_LE(ns, std::pow(n, 1.0 / v1 - large.reciprocal()) * nl * (1 + 1e-12));
  }
}

TEST(Besov, TailFunctionalDecreasesInQ) {
  const std::vector<double> a = {0.5, 3.0, 1.25, 0.0, 2.0};
  double prev = tail_functional(a, fin(1));
  for (double q : {1.5, 2.0, 4.0, 10.0}) {
    const double now = tail_functional(a, fin(q));
    EXPECT_LE(now, prev * (1 + 1e-15));
    prev = now;
  }
  EXPECT_LE(tail_functional(a, inf), prev);
  EXPECT_DOUBLE_EQ(tail_functional(a, inf), 3.0);
}

TEST(Besov, ExtendedIndex) {
  EXPECT_THROW(ExtendedIndex::finite(0.5), DomainError);
  EXPECT_THROW(inf.value(), DomainError);
  EXPECT_EQ(inf.reciprocal(), 0.0);
  EXPECT_EQ(inf.str(), "inf");
  EXPECT_TRUE(fin(2) == fin(2));
  EXPECT_FALSE(fin(2) == inf);
  EXPECT_THROW((BesovParams{0.0, fin(2), fin(2)}).validate(), DomainError);
}

TEST(Besov, TreeValidation) {
  CoefficientTree t = make_empty_tree(1, 3);
  t.levels[1].entries = {{3, 1.0}, {1, 2.0}};
  EXPECT_THROW(t.validate(), DomainError);
  t.levels[1].entries = {{1, 1.0}, {4, 2.0}};
  EXPECT_THROW(t.validate(), DomainError);
  t.levels[1].entries = {{1, 0.0}};
  EXPECT_THROW(t.validate(), DomainError);
  t.levels[1].entries = {{1, 1.0}, {3, -1.0}};
  EXPECT_NO_THROW(t.validate());
}
