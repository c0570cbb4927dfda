#include "besovlab/besov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "besovlab/error.hpp"
#include "besovlab/numeric.hpp"

namespace besovlab {

ExtendedIndex ExtendedIndex::finite(double v) {
  if (!(v >= 1.0) || !std::isfinite(v)) throw DomainError("index must lie in [1, inf)");
  ExtendedIndex x;
  x.infinite_ = false;
  x.value_ = v;
  return x;
}

double ExtendedIndex::value() const {
  if (infinite_) throw DomainError("index is infinite");
  return value_;
}

double ExtendedIndex::reciprocal() const { return infinite_ ? 0.0 : 1.0 / value_; }

std::string ExtendedIndex::str() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os << value_;
  return os.str();
}

void BesovParams::validate() const {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("besov: s must be positive");
}

namespace {

// Scaled by the largest magnitude so huge or tiny coefficients neither overflow nor vanish.
template <class Range, class Abs>
double scaled_p_norm(const Range& r, ExtendedIndex p, Abs abs_of) {
  double mx = 0.0;
  for (const auto& x : r) mx = std::max(mx, abs_of(x));
  if (p.is_infinite() || mx == 0.0) return mx;
  const double pv = p.value();
  CompensatedSum acc;
  for (const auto& x : r) {
    const double a = abs_of(x);
    if (a != 0.0) acc.add(pv == 2.0 ? (a / mx) * (a / mx) : std::pow(a / mx, pv));
  }
  return mx * (pv == 2.0 ? std::sqrt(acc.value()) : std::pow(acc.value(), 1.0 / pv));
}

}  // namespace

double vector_p_norm(std::span<const double> xs, ExtendedIndex p) {
  return scaled_p_norm(xs, p, [](double x) { return std::abs(x); });
}

double level_p_norm(std::span<const Entry> entries, ExtendedIndex p) {
  return scaled_p_norm(entries, p, [](const Entry& e) { return std::abs(e.w); });
}

std::vector<double> level_terms(const CoefficientTree& t, const BesovParams& bp) {
  bp.validate();
  const double sp = bp.s_prime();
  std::vector<double> out;
  out.reserve(t.levels.size());
  for (const Level& lv : t.levels) {
    out.push_back(std::exp2(lv.j * sp) * level_p_norm(lv.entries, bp.p));
  }
  return out;
}

double tail_functional(std::span<const double> terms, ExtendedIndex q) {
  return vector_p_norm(terms, q);
}

double besov_seq_norm(const CoefficientTree& t, const BesovParams& bp) {
  const std::vector<double> terms = level_terms(t, bp);
  return vector_p_norm(t.scaling, bp.p) + tail_functional(terms, bp.q);
}

}  // namespace besovlab
