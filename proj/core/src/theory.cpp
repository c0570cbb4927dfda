#include "besovlab/theory.hpp"

#include <cmath>
#include <sstream>

#include "besovlab/error.hpp"

namespace besovlab {

namespace {

constexpr double tol = exponent_tolerance;

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

Verdict not_covered(std::string case_id, std::string reason) {
  Verdict v;
  v.decision = Decision::NotCovered;
  v.case_id = std::move(case_id);
  v.reason = std::move(reason);
  return v;
}

Verdict decided(bool member, std::string case_id, std::optional<double> threshold,
                std::vector<std::string> assumptions = {}) {
  Verdict v;
  v.decision = member ? Decision::MemberAS : Decision::NotMemberAS;
  v.case_id = std::move(case_id);
  v.threshold = threshold;
  v.assumptions = std::move(assumptions);
  return v;
}

void check_smoothness(const BesovParams& bp, double r) {
  bp.validate();
  if (!(r > 0.0)) throw DomainError("wavelet regularity r must be positive");
  if (!(bp.s < r)) {
    throw DomainError("s = " + fmt(bp.s) + " must be below the wavelet regularity r = " + fmt(r));
  }
}

bool finite_moment(const SlabDistribution& slab, double m) {
  return std::isfinite(absolute_moment(slab, m));
}

// 2^{x j} as a power law.
PowerLaw dyadic(double x) { return PowerLaw{-x, 0.0}; }

bool converges(const PowerLaw& t) { return series_verdict(t.e, t.g) == SeriesVerdict::Converges; }
bool bounded(const PowerLaw& t) { return sup_verdict(t.e, t.g) == SupVerdict::Bounded; }

// lim_n n^{-1/2} * (largest term below level log2 n) stays finite for a term j^g 2^{k j}
// iff k < 1/2, or k = 1/2 and g <= 0. Raising to a power q changes neither condition.
bool regression_limit_finite(const PowerLaw& t) {
  const double k = -t.e;
  if (k < 0.5 - tol) return true;
  if (k > 0.5 + tol) return false;
  return t.g <= tol;
}

enum class Mode { Infinite, Regression };

std::string prefix(Mode m) { return m == Mode::Infinite ? "general." : "regression."; }

// The per-level quantity whose series/sup decides membership, plus bookkeeping.
Verdict dispatch(Mode mode, const SlabDistribution& slab, const LevelSchedule& tau,
                 const LevelSchedule& pi, const BesovParams& bp, double r) {
  check_smoothness(bp, r);
  tau.validate();
  pi.validate();
  validate(slab);
  const std::string pre = prefix(mode);
  const GrowthRegime regime = growth_regime(pi);
  const double sp = bp.s_prime();
  const double inv_p = bp.p.reciprocal();
  const PowerLaw tau_law = power_law(tau);

  switch (regime.kind) {
    case Regime::NotCovered:
      return not_covered(pre + "regime",
                         "2^j pi_j tends to 0 while its sum diverges; no criterion applies");
    case Regime::Summable:
      return decided(true, pre + "finite_count", std::nullopt,
                     {"sum_j 2^j pi_j < inf", "P(|xi| < inf) = 1"});
    case Regime::TendsToConstant: {
      if (!bp.q.is_infinite()) {
        const double q = bp.q.value();
        if (!finite_moment(slab, q)) {
          return not_covered(pre + "bounded_count_sum",
                             "needs E|xi|^q < inf, fails for q = " + fmt(q));
        }
        const PowerLaw term = dyadic(sp) * tau_law;
        const bool member = mode == Mode::Infinite ? converges(term.pow(q))
                                                   : regression_limit_finite(term);
        const double thr = mode == Mode::Infinite ? tau.e - 0.5 + inv_p : tau.e + inv_p;
        return decided(member, pre + "bounded_count_sum", std::optional(thr),
                       {"2^j pi_j -> const", "E|xi|^q < inf"});
      }
      // M(j) = tau_j^{-1} 2^{-j s'} = j^{-g} 2^{(e - s') j}
      const double d = tau.e - sp;
      const std::string id = pre + "bounded_count_sup";
      if (d > tol) {
        return decided(true, id, std::nullopt,
                       {"M(j) increasing", "E log|xi| < inf"});
      }
      if (std::abs(d) <= tol && tau.g < -tol) {
        const double order = -1.0 / tau.g;
        const bool ok = finite_moment(slab, order);
        Verdict v = decided(ok, id, std::nullopt, {"M(j) increasing"});
        if (!ok) v.reason = "E|xi|^" + fmt(order) + " diverges";
        return v;
      }
      return not_covered(id, "M(j) = tau_j^{-1} 2^{-j s'} is not eventually increasing");
    }
    case Regime::IncreasesToInfinity:
      break;
  }

  const LevelSchedule eff = effective_probability(pi);
  const PowerLaw pi_law = power_law(eff);
  const PowerLaw count_law = dyadic(1.0) * pi_law;  // n_j = 2^j pi_j

  if (!bp.p.is_infinite()) {
    const double p = bp.p.value();
    const std::string id = pre + "moment_sum";
    if (!finite_moment(slab, p)) {
      return not_covered(id, "needs E|xi|^p < inf, fails for p = " + fmt(p));
    }
    const PowerLaw term = dyadic(sp + inv_p) * tau_law * pi_law.pow(inv_p);
    bool member;
    if (mode == Mode::Regression) {
      member = regression_limit_finite(term);
    } else if (bp.q.is_infinite()) {
      member = bounded(term);
    } else {
      member = converges(term.pow(bp.q.value()));
    }
    const double thr = tau.e + eff.e * inv_p - (mode == Mode::Infinite ? 0.5 : 0.0);
    return decided(member, id, std::optional(thr), {"2^j pi_j -> inf", "E|xi|^p < inf"});
  }

  const std::string id = pre + "level_maxima";
  PowerLaw b_law;
  const TailClass tc = tail_class(slab);
  const auto* frechet = std::get_if<FrechetTail>(&tc);
  if (frechet == nullptr) {
    // b_j ~ (log n_j)^{1/m}; the auxiliary condition needs log n_j >> log j, i.e. dyadic growth.
    if (!(eff.e < 1.0 - tol)) {
      return not_covered(id,
                         "2^j pi_j grows only polynomially; the Gumbel auxiliary condition "
                         "log j / log(2^j pi_j) -> 0 fails");
    }
    b_law = PowerLaw{0.0, 1.0 / gumbel_power(slab)};
  } else {
    const double ell = frechet->ell;
    if (!bp.q.is_infinite() && !(bp.q.value() < ell)) {
      return not_covered(id, "Frechet tail with index " + fmt(ell) +
                                 " needs q < ell; q = " + bp.q.str() + " is untreated");
    }
    b_law = count_law.pow(1.0 / ell);
  }
  const PowerLaw term = dyadic(sp) * tau_law * b_law;
  bool member;
  if (mode == Mode::Regression) {
    member = regression_limit_finite(term);
  } else if (!bp.q.is_infinite()) {
    member = converges(term.pow(bp.q.value()));
  } else if (frechet != nullptr) {
    // For polynomial tails the q = inf criterion is decided by the series with power ell.
    member = converges(term.pow(frechet->ell));
  } else {
    member = bounded(term);
  }
  double thr = tau.e - 0.5;
  if (frechet != nullptr) thr -= (1.0 - eff.e) / frechet->ell;
  if (mode == Mode::Regression) thr += 0.5;
  return decided(member, id, std::optional(thr),
                 {"2^j pi_j increases to inf", frechet ? "H+ in Frechet domain" : "H+ in Gumbel domain"});
}

}  // namespace

std::string decision_name(Decision d) {
  switch (d) {
    case Decision::MemberAS: return "member_as";
    case Decision::NotMemberAS: return "not_member_as";
    case Decision::SufficientOnlyMember: return "sufficient_only_member";
    case Decision::NotCovered: return "not_covered";
  }
  return "unknown";
}

bool counts_as_member(Decision d) {
  return d == Decision::MemberAS || d == Decision::SufficientOnlyMember;
}

Verdict classify_simple(const SlabDistribution& slab, double alpha, double beta,
                        const BesovParams& bp, double r) {
  check_smoothness(bp, r);
  validate(slab);
  if (!(alpha >= 0.0) || !(beta >= 0.0) || !(alpha + beta > 0.0)) {
    throw DomainError("need alpha >= 0, beta >= 0 and alpha + beta > 0");
  }
  if (beta > 1.0 + tol) {
    return decided(true, "simple.finite_count", std::nullopt,
                   {"beta > 1: finitely many nonzero coefficients"});
  }
  const bool beta_one = std::abs(beta - 1.0) <= tol;
  const bool p_inf = bp.p.is_infinite();
  const bool q_inf = bp.q.is_infinite();
  const TailClass tc = tail_class(slab);
  const auto* frechet = std::get_if<FrechetTail>(&tc);
  std::vector<std::string> held;

  if (!beta_one) {
    if (!p_inf) {
      if (!finite_moment(slab, bp.p.value())) {
        return not_covered("simple.assumption", "needs E|xi|^p < inf, fails for p = " + bp.p.str());
      }
      held.push_back("E|xi|^p < inf");
    } else if (frechet != nullptr) {
      if (!q_inf && !(frechet->ell > bp.q.value())) {
        return not_covered("simple.assumption", "polynomial tail index " + fmt(frechet->ell) +
                                                    " must exceed q = " + bp.q.str());
      }
      held.push_back("H+ in Frechet domain");
    } else {
      held.push_back("power-exponential tail");
    }
  } else if (!q_inf) {
    if (!finite_moment(slab, bp.q.value())) {
      return not_covered("simple.assumption", "needs E|xi|^q < inf, fails for q = " + bp.q.str());
    }
    held.push_back("E|xi|^q < inf");
  } else {
    held.push_back("E log|xi| < inf");
  }

  const double delta_h = (frechet != nullptr && p_inf) ? (1.0 - beta) / frechet->ell : 0.0;
  const double thr = 0.5 * (alpha - 1.0) + beta * bp.p.reciprocal() - delta_h;

  if (!beta_one && !p_inf && q_inf) {
    return decided(bp.s <= thr + tol, "simple.boundary_admitted", thr, held);
  }
  if (beta_one && q_inf) {
    if (bp.s < thr - tol) {
      Verdict v;
      v.decision = Decision::SufficientOnlyMember;
      v.case_id = "simple.sufficient_only";
      v.threshold = thr;
      v.assumptions = held;
      return v;
    }
    Verdict v = not_covered("simple.sufficient_only",
                            "only a sufficient condition is known here and s >= threshold");
    v.threshold = thr;
    return v;
  }
  return decided(bp.s < thr - tol, "simple.strict", thr, held);
}

Verdict classify_general(const SlabDistribution& slab, const LevelSchedule& tau,
                         const LevelSchedule& pi, const BesovParams& bp, double r) {
  return dispatch(Mode::Infinite, slab, tau, pi, bp, r);
}

Verdict classify_regression(const SlabDistribution& slab, const LevelSchedule& tau,
                            const LevelSchedule& pi, const BesovParams& bp, double r) {
  return dispatch(Mode::Regression, slab, tau, pi, bp, r);
}

Verdict no_spike_condition(const SlabDistribution& slab, const LevelSchedule& tau,
                           const BesovParams& bp, double r) {
  return dispatch(Mode::Infinite, slab, tau, LevelSchedule{1.0, 0.0, 0.0}, bp, r);
}

Verdict classify_three_param(const SlabDistribution& slab, double alpha, double beta,
                             double gamma, double s, ExtendedIndex q, double r) {
  BesovParams bp{s, ExtendedIndex::infinity(), q};
  check_smoothness(bp, r);
  if (!(beta >= 0.0 && beta < 1.0)) throw DomainError("three-parameter form needs 0 <= beta < 1");
  if (!(alpha >= 0.0)) throw DomainError("alpha must be >= 0");
  double shift;
  if (std::holds_alternative<Gaussian>(slab)) {
    shift = 1.0;
  } else if (std::holds_alternative<Laplace>(slab)) {
    shift = 2.0;
  } else {
    return not_covered("three_param", "only Gaussian and Laplace slabs are treated");
  }
  const double delta = s + 0.5 - 0.5 * alpha;
  const double thr = 0.5 * (alpha - 1.0);
  if (delta < -tol) return decided(true, "three_param", thr);
  if (delta > tol) return decided(false, "three_param", thr);
  const bool member = q.is_infinite() ? gamma <= -shift + tol
                                      : gamma < -2.0 / q.value() - shift - tol;
  return decided(member, "three_param", thr);
}

}  // namespace besovlab
