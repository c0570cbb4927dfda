#include "besovlab/schedules.hpp"

#include <cmath>

#include "besovlab/error.hpp"

namespace besovlab {

namespace {

int sign_of(double x) {
  if (x > exponent_tolerance) return 1;
  if (x < -exponent_tolerance) return -1;
  return 0;
}

}  // namespace

void LevelSchedule::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("schedule: c must be positive");
  if (!std::isfinite(e) || !std::isfinite(g)) throw DomainError("schedule: e and g must be finite");
}

double LevelSchedule::value_at(int j) const {
  if (j < 0) throw DomainError("schedule: level must be >= 0");
  const double poly = j == 0 ? 1.0 : std::pow(static_cast<double>(j), g);
  return c * poly * std::exp2(-e * j);
}

double LevelSchedule::prob_at(int j) const {
  const double v = value_at(j);
  return v > 1.0 ? 1.0 : v;
}

PowerLaw power_law(const LevelSchedule& s) { return {s.e, s.g}; }

LevelSchedule effective_probability(const LevelSchedule& pi) {
  const int se = sign_of(pi.e);
  const int sg = sign_of(pi.g);
  const bool saturates = se < 0 || (se == 0 && sg > 0) || (se == 0 && sg == 0 && pi.c >= 1.0);
  if (saturates) return LevelSchedule{1.0, 0.0, 0.0};
  return pi;
}

GrowthRegime growth_regime(const LevelSchedule& pi) {
  pi.validate();
  const LevelSchedule eff = effective_probability(pi);
  // n_j = c j^g 2^{(1-e) j}
  const int d = sign_of(1.0 - eff.e);
  if (d > 0) return {Regime::IncreasesToInfinity, 0.0};
  if (d < 0) return {Regime::Summable, 0.0};
  const int sg = sign_of(eff.g);
  if (sg > 0) return {Regime::IncreasesToInfinity, 0.0};
  if (sg == 0) return {Regime::TendsToConstant, eff.c};
  if (eff.g < -1.0 - exponent_tolerance) return {Regime::Summable, 0.0};
  return {Regime::NotCovered, 0.0};
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::IncreasesToInfinity: return "increases_to_infinity";
    case Regime::TendsToConstant: return "tends_to_constant";
    case Regime::Summable: return "summable";
    case Regime::NotCovered: return "not_covered";
  }
  return "unknown";
}

SeriesVerdict series_verdict(double e, double g) {
  const int se = sign_of(e);
  if (se > 0) return SeriesVerdict::Converges;
  if (se < 0) return SeriesVerdict::Diverges;
  return g < -1.0 - exponent_tolerance ? SeriesVerdict::Converges : SeriesVerdict::Diverges;
}

SupVerdict sup_verdict(double e, double g) {
  const int se = sign_of(e);
  if (se > 0) return SupVerdict::Bounded;
  if (se < 0) return SupVerdict::Unbounded;
  return sign_of(g) <= 0 ? SupVerdict::Bounded : SupVerdict::Unbounded;
}

}  // namespace besovlab
