#include "besovlab/tree.hpp"

#include <string>

#include "besovlab/error.hpp"

namespace besovlab {

void CoefficientTree::validate() const {
  if (j0 < 0 || j0 > 40) throw DomainError("tree: j0 out of range");
  if (scaling.size() != (std::size_t{1} << j0)) {
    throw DomainError("tree: scaling must hold 2^j0 = " + std::to_string(std::size_t{1} << j0) +
                      " values");
  }
  int expect = j0;
  for (const Level& lv : levels) {
    if (lv.j != expect) throw DomainError("tree: levels must be contiguous from j0");
    ++expect;
    const std::int64_t width = std::int64_t{1} << lv.j;
    std::int64_t prev = -1;
    for (const Entry& e : lv.entries) {
      if (e.k <= prev || e.k >= width) {
        throw DomainError("tree: positions at level " + std::to_string(lv.j) +
                          " must be strictly increasing in [0, 2^j)");
      }
      if (e.w == 0.0) throw DomainError("tree: stored coefficients must be nonzero");
      prev = e.k;
    }
  }
}

CoefficientTree make_empty_tree(int j0, int J, std::vector<double> scaling) {
  if (j0 < 0) throw DomainError("tree: j0 must be >= 0");
  if (J < j0 - 1) throw DomainError("tree: top level below j0");
  CoefficientTree t;
  t.j0 = j0;
  t.scaling = scaling.empty() ? std::vector<double>(std::size_t{1} << j0, 0.0) : std::move(scaling);
  for (int j = j0; j <= J; ++j) t.levels.push_back(Level{j, {}});
  t.validate();
  return t;
}

std::vector<std::size_t> nonzero_counts(const CoefficientTree& t) {
  std::vector<std::size_t> out;
  out.reserve(t.levels.size());
  for (const Level& lv : t.levels) out.push_back(lv.entries.size());
  return out;
}

std::size_t total_nonzero(const CoefficientTree& t) {
  std::size_t n = 0;
  for (const Level& lv : t.levels) n += lv.entries.size();
  return n;
}

CoefficientTree scaled(const CoefficientTree& t, double c) {
  CoefficientTree out = t;
  for (double& u : out.scaling) u *= c;
  for (Level& lv : out.levels) {
    if (c == 0.0) {
      lv.entries.clear();
      continue;
    }
    for (Entry& e : lv.entries) e.w *= c;
  }
  return out;
}

}  // namespace besovlab
