#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "besovlab/besov.hpp"
#include "besovlab/distributions.hpp"
#include "besovlab/numeric.hpp"
#include "besovlab/sampler.hpp"
#include "besovlab/schedules.hpp"
#include "besovlab/theory.hpp"

namespace besovlab {

struct LevelRange {
  int lo = 8;
  int hi = 18;
  void validate() const;
};

struct LevelStat {
  int j = 0;
  std::size_t reps = 0;  // replicates that contributed
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  double median = 0.0;
  double iqr = 0.0;
  double expected_count = 0.0;  // n_j = 2^j min(1, pi_j)
  std::optional<double> reference;  // the value the statistic should approach, when known
};

enum class EmpiricalVerdict { Converges, Diverges, Inconclusive };
std::string empirical_name(EmpiricalVerdict v);

struct ExperimentReport {
  std::string kind;
  std::uint64_t seed = 0;
  std::size_t reps = 0;
  std::vector<LevelStat> levels;

  // slope of the per-replicate fits, averaged over replicates
  std::optional<MeanStat> slope;
  std::optional<double> predicted_slope;
  double dropped_fraction = 0.0;  // share of (replicate, level) cells with a zero term
  bool degenerate = false;        // more than 20% dropped
  double top_level_empty_fraction = 0.0;

  std::optional<EmpiricalVerdict> empirical;
  std::optional<Verdict> theory;
  std::optional<bool> agrees;
  std::vector<std::string> notes;
};

// S_j / n_j with N_j ~ Bin(2^j, pi_j) summands |xi|^m, reference E|xi|^m.
ExperimentReport lln_experiment(const SlabDistribution& slab, const LevelSchedule& pi, double m,
                                LevelRange levels, std::size_t reps, std::uint64_t seed,
                                unsigned threads = 1);

// max_k |z_jk| / b_j with b_j = quantile_hplus(1 - 1/n_j). Reference is 1 for Gumbel slabs and
// the Frechet median (ln 2)^{-1/ell} otherwise.
ExperimentReport evt_experiment(const SlabDistribution& slab, const LevelSchedule& pi,
                                LevelRange levels, std::size_t reps, std::uint64_t seed,
                                unsigned threads = 1);

// Least-squares slope of log2 a_j^q against j for every replicate (p < inf and q < inf);
// the per-level statistics are of log2 a_j^q.
ExperimentReport exponent_regression(const PriorSpec& spec, const BesovParams& bp,
                                     LevelRange levels, std::size_t reps, std::uint64_t seed,
                                     unsigned threads = 1);

// Slope mode for q < inf, trend of log2 a_j for q = inf. Verdict from +-3 standard errors of
// the mean slope, compared with classify_general.
ExperimentReport empirical_membership(const PriorSpec& spec, const BesovParams& bp,
                                      LevelRange levels, std::size_t reps, std::uint64_t seed,
                                      unsigned threads = 1, double r = 16.0);

inline constexpr double degenerate_drop_fraction = 0.2;
inline constexpr double verdict_stderr_multiple = 3.0;

}  // namespace besovlab
