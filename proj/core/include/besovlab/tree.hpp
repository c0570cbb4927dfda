#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace besovlab {

struct Entry {
  std::int64_t k = 0;
  double w = 0.0;
};

struct Level {
  int j = 0;
  std::vector<Entry> entries;  // strictly increasing k in [0, 2^j), w != 0
};

struct CoefficientTree {
  int j0 = 0;
  std::vector<double> scaling;  // 2^{j0} values
  std::vector<Level> levels;    // contiguous j = j0, j0+1, ...

  int top_level() const { return levels.empty() ? j0 - 1 : levels.back().j; }
  // Throws DomainError describing the first violated invariant.
  void validate() const;
};

// Empty tree with levels j0..J and zero (or given) scaling coefficients.
CoefficientTree make_empty_tree(int j0, int J, std::vector<double> scaling = {});

std::vector<std::size_t> nonzero_counts(const CoefficientTree& t);
std::size_t total_nonzero(const CoefficientTree& t);

// Multiplies every coefficient, scaling included.
CoefficientTree scaled(const CoefficientTree& t, double c);

}  // namespace besovlab
