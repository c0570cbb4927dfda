#pragma once

#include <string>

namespace besovlab {

// c * j^g * 2^{-e j}, with j^g read as 1 at j = 0.
struct LevelSchedule {
  double c = 1.0;
  double e = 0.0;
  double g = 0.0;

  double value_at(int j) const;
  // min(1, value_at(j)) for use as a nonzero probability.
  double prob_at(int j) const;
  void validate() const;
};

// j^g * 2^{-e j}; the exponent algebra of every level quantity in this library.
struct PowerLaw {
  double e = 0.0;
  double g = 0.0;

  PowerLaw operator*(const PowerLaw& o) const { return {e + o.e, g + o.g}; }
  PowerLaw pow(double k) const { return {e * k, g * k}; }
};

PowerLaw power_law(const LevelSchedule& s);

// The schedule that min(1, pi_j) agrees with for all large j: either pi itself or the
// constant 1.
LevelSchedule effective_probability(const LevelSchedule& pi);

enum class Regime { IncreasesToInfinity, TendsToConstant, Summable, NotCovered };

struct GrowthRegime {
  Regime kind = Regime::NotCovered;
  double limit = 0.0;  // only for TendsToConstant
};

// Classifies n_j = 2^j min(1, pi_j).
GrowthRegime growth_regime(const LevelSchedule& pi);
std::string regime_name(Regime r);

enum class SeriesVerdict { Converges, Diverges };
enum class SupVerdict { Bounded, Unbounded };

// Sum over j >= 1 of j^g 2^{-e j}.
SeriesVerdict series_verdict(double e, double g);
// sup over j >= 1 of j^g 2^{-e j}.
SupVerdict sup_verdict(double e, double g);

// Exponent comparisons are done with this slack so values like 0.5 + 1/2 - 1 land on zero.
inline constexpr double exponent_tolerance = 1e-12;

}  // namespace besovlab
