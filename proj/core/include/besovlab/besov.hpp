#pragma once

#include <span>
#include <string>
#include <vector>

#include "besovlab/tree.hpp"

namespace besovlab {

// An index in [1, infinity] with infinity as its own state rather than a float sentinel.
class ExtendedIndex {
 public:
  static ExtendedIndex finite(double v);
  static ExtendedIndex infinity() { return ExtendedIndex(); }

  bool is_infinite() const { return infinite_; }
  double value() const;        // throws on infinity
  double reciprocal() const;   // 1/v, with 1/infinity = 0
  bool operator==(const ExtendedIndex& o) const {
    return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
  }
  // Less-than in the extended order.
  bool less_than(double v) const { return !infinite_ && value_ < v; }
  std::string str() const;

 private:
  ExtendedIndex() = default;
  bool infinite_ = true;
  double value_ = 0.0;
};

struct BesovParams {
  double s = 1.0;
  ExtendedIndex p = ExtendedIndex::finite(2.0);
  ExtendedIndex q = ExtendedIndex::finite(2.0);

  // s' = s + 1/2 - 1/p
  double s_prime() const { return s + 0.5 - p.reciprocal(); }
  void validate() const;
};

double vector_p_norm(std::span<const double> xs, ExtendedIndex p);
double level_p_norm(std::span<const Entry> entries, ExtendedIndex p);

// a_j = 2^{j s'} ||w_j||_p for every stored level.
std::vector<double> level_terms(const CoefficientTree& t, const BesovParams& bp);

// (sum a_j^q)^{1/q}, or max a_j when q is infinite.
double tail_functional(std::span<const double> terms, ExtendedIndex q);

double besov_seq_norm(const CoefficientTree& t, const BesovParams& bp);

}  // namespace besovlab
