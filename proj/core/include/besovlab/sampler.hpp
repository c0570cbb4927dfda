#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "besovlab/distributions.hpp"
#include "besovlab/random.hpp"
#include "besovlab/schedules.hpp"
#include "besovlab/tree.hpp"

namespace besovlab {

struct InfiniteMode {
  int J = 10;  // truncation level
};
// Finite-sample form: levels up to floor(log2 n) - 1, coefficients scaled by n^{-1/2}.
struct RegressionMode {
  std::uint64_t n = 1024;
};

struct PriorSpec {
  LevelSchedule tau;
  LevelSchedule pi;
  SlabDistribution slab = Gaussian{};
  std::variant<InfiniteMode, RegressionMode> mode = InfiniteMode{};

  int top_level() const;
  double coefficient_factor() const;  // 1, or n^{-1/2}
};

// Draws one level. Positions come out sorted; every stored value is nonzero.
Level sample_level(const PriorSpec& spec, int j, Rng& rng);

// Level j uses sub-seed (seed, tree stream, j, replicate), so levels can be drawn in any order
// or in parallel with identical output.
CoefficientTree sample_tree(const PriorSpec& spec, int j0, std::vector<double> scaling,
                            std::uint64_t seed, std::uint64_t replicate = 0,
                            unsigned threads = 1);

}  // namespace besovlab
