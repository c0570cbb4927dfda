#include "besovlab/lab.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "besovlab/error.hpp"
#include "besovlab/parallel.hpp"
#include "besovlab/random.hpp"

namespace besovlab {

void LevelRange::validate() const {
  if (lo < 0 || hi < lo || hi > 30) throw DomainError("levels: need 0 <= lo <= hi <= 30");
}

std::string empirical_name(EmpiricalVerdict v) {
  switch (v) {
    case EmpiricalVerdict::Converges: return "converges";
    case EmpiricalVerdict::Diverges: return "diverges";
    case EmpiricalVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

std::size_t level_count(LevelRange r) { return static_cast<std::size_t>(r.hi - r.lo + 1); }

double expected_count(const LevelSchedule& pi, int j) { return std::ldexp(pi.prob_at(j), j); }

LevelStat summarize(int j, const std::vector<double>& xs) {
  LevelStat st;
  st.j = j;
  st.reps = xs.size();
  if (xs.empty()) return st;
  const MeanStat m = mean_stat(xs);
  st.mean = m.mean;
  st.stderr_of_mean = m.stderr_of_mean;
  st.median = sample_quantile(xs, 0.5);
  st.iqr = sample_quantile(xs, 0.75) - sample_quantile(xs, 0.25);
  return st;
}

long long draw_count(const LevelSchedule& pi, int j, Rng& rng) {
  const double prob = pi.prob_at(j);
  const long long width = 1LL << j;
  if (prob >= 1.0) return width;
  std::binomial_distribution<long long> bin(width, prob);
  return bin(rng);
}

}  // namespace

ExperimentReport lln_experiment(const SlabDistribution& slab, const LevelSchedule& pi, double m,
                                LevelRange levels, std::size_t reps, std::uint64_t seed,
                                unsigned threads) {
  validate(slab);
  pi.validate();
  levels.validate();
  if (!(m > 0.0)) throw DomainError("lln: m must be positive");
  if (reps < 2) throw PreconditionError("lln: needs at least 2 replicates");
  if (growth_regime(pi).kind != Regime::IncreasesToInfinity) {
    throw PreconditionError("lln: 2^j pi_j must increase to infinity");
  }
  const double nu = absolute_moment(slab, m);
  if (!std::isfinite(nu)) throw PreconditionError("lln: E|xi|^m is infinite");

  const std::size_t nlev = level_count(levels);
  std::vector<double> cells(nlev * reps, 0.0);
  parallel_for(cells.size(), threads, [&](std::size_t idx) {
    const std::size_t li = idx / reps;
    const std::size_t r = idx % reps;
    const int j = levels.lo + static_cast<int>(li);
    Rng rng = make_rng(seed, Stream::lln, j, r);
    const long long n = draw_count(pi, j, rng);
    SlabSampler draw(slab);
    CompensatedSum acc;
    for (long long i = 0; i < n; ++i) {
      const double x = draw.magnitude(rng);
      acc.add(m == 1.0 ? x : (m == 2.0 ? x * x : std::pow(x, m)));
    }
    cells[idx] = acc.value() / expected_count(pi, j);
  });

  ExperimentReport rep;
  rep.kind = "lln";
  rep.seed = seed;
  rep.reps = reps;
  for (std::size_t li = 0; li < nlev; ++li) {
    const int j = levels.lo + static_cast<int>(li);
    std::vector<double> col(cells.begin() + static_cast<std::ptrdiff_t>(li * reps),
                            cells.begin() + static_cast<std::ptrdiff_t>((li + 1) * reps));
    LevelStat st = summarize(j, col);
    st.expected_count = expected_count(pi, j);
    st.reference = nu;
    rep.levels.push_back(st);
  }
  return rep;
}

ExperimentReport evt_experiment(const SlabDistribution& slab, const LevelSchedule& pi,
                                LevelRange levels, std::size_t reps, std::uint64_t seed,
                                unsigned threads) {
  validate(slab);
  pi.validate();
  levels.validate();
  if (reps < 2) throw PreconditionError("evt: needs at least 2 replicates");
  if (growth_regime(pi).kind != Regime::IncreasesToInfinity) {
    throw PreconditionError("evt: 2^j pi_j must increase to infinity");
  }
  const std::size_t nlev = level_count(levels);
  std::vector<double> b(nlev);
  for (std::size_t li = 0; li < nlev; ++li) {
    const int j = levels.lo + static_cast<int>(li);
    const double n = expected_count(pi, j);
    if (!(n > 1.0)) throw DomainError("evt: n_j <= 1 at level " + std::to_string(j));
    b[li] = quantile_hplus(slab, 1.0 - 1.0 / n);
  }

  std::vector<double> cells(nlev * reps, 0.0);
  parallel_for(cells.size(), threads, [&](std::size_t idx) {
    const std::size_t li = idx / reps;
    const std::size_t r = idx % reps;
    const int j = levels.lo + static_cast<int>(li);
    Rng rng = make_rng(seed, Stream::evt, j, r);
    const long long n = draw_count(pi, j, rng);
    SlabSampler draw(slab);
    double best = 0.0;
    for (long long i = 0; i < n; ++i) best = std::max(best, draw.magnitude(rng));
    cells[idx] = best / b[li];
  });

  std::optional<double> reference = 1.0;
  if (is_frechet(slab)) reference = std::pow(std::log(2.0), -1.0 / tail_index(slab));

  ExperimentReport rep;
  rep.kind = "evt";
  rep.seed = seed;
  rep.reps = reps;
  for (std::size_t li = 0; li < nlev; ++li) {
    const int j = levels.lo + static_cast<int>(li);
    std::vector<double> col(cells.begin() + static_cast<std::ptrdiff_t>(li * reps),
                            cells.begin() + static_cast<std::ptrdiff_t>((li + 1) * reps));
    LevelStat st = summarize(j, col);
    st.expected_count = expected_count(pi, j);
    st.reference = reference;
    rep.levels.push_back(st);
  }
  return rep;
}

namespace {

// log2 of the level terms for every replicate; NaN marks an empty level.
struct TermGrid {
  std::vector<std::vector<double>> log_terms;  // [replicate][level]
  std::vector<char> top_empty;
};

TermGrid sample_terms(const PriorSpec& spec, const BesovParams& bp, LevelRange levels,
                      std::size_t reps, std::uint64_t seed, unsigned threads) {
  if (!std::holds_alternative<InfiniteMode>(spec.mode)) {
    throw PreconditionError("level-term experiments need the infinite-sequence mode");
  }
  PriorSpec s = spec;
  s.mode = InfiniteMode{levels.hi};
  const std::size_t nlev = level_count(levels);
  const double sp = bp.s_prime();
  TermGrid g;
  g.log_terms.assign(reps, std::vector<double>(nlev, std::nan("")));
  g.top_empty.assign(reps, 0);
  parallel_for(reps, threads, [&](std::size_t r) {
    const CoefficientTree t = sample_tree(s, levels.lo, {}, seed, r, 1);
    for (std::size_t li = 0; li < nlev; ++li) {
      const Level& lv = t.levels[li];
      if (lv.entries.empty()) continue;
      const double norm = level_p_norm(lv.entries, bp.p);
      if (norm > 0.0) g.log_terms[r][li] = lv.j * sp + std::log2(norm);
    }
    g.top_empty[r] = t.levels.back().entries.empty() ? 1 : 0;
  });
  return g;
}

// Mean per-replicate slope of q_eff * log2 a_j, q_eff = q (or 1 for q = inf).
void fit_terms(const TermGrid& g, LevelRange levels, double q_eff, ExperimentReport& rep) {
  const std::size_t nlev = level_count(levels);
  const std::size_t reps = g.log_terms.size();
  std::size_t dropped = 0;
  std::vector<double> slopes;
  std::vector<std::vector<double>> cols(nlev);
  for (std::size_t r = 0; r < reps; ++r) {
    std::vector<double> x, y;
    for (std::size_t li = 0; li < nlev; ++li) {
      const double v = g.log_terms[r][li];
      if (std::isnan(v)) {
        ++dropped;
        continue;
      }
      x.push_back(levels.lo + static_cast<double>(li));
      y.push_back(q_eff * v);
      cols[li].push_back(q_eff * v);
    }
    if (x.size() >= 2) slopes.push_back(fit_line(x, y).slope);
  }
  for (std::size_t li = 0; li < nlev; ++li) {
    rep.levels.push_back(summarize(levels.lo + static_cast<int>(li), cols[li]));
  }
  rep.dropped_fraction = static_cast<double>(dropped) / static_cast<double>(nlev * reps);
  rep.degenerate = rep.dropped_fraction > degenerate_drop_fraction;
  std::size_t empty = 0;
  for (char c : g.top_empty) empty += c ? 1 : 0;
  rep.top_level_empty_fraction = static_cast<double>(empty) / static_cast<double>(reps);
  if (slopes.size() >= 2) rep.slope = mean_stat(slopes);
  if (rep.degenerate) rep.notes.push_back("more than 20% of level terms were zero");
}

std::optional<double> predicted_slope(const PriorSpec& spec, const BesovParams& bp) {
  if (bp.p.is_infinite()) return std::nullopt;
  const double p = bp.p.value();
  const double q_eff = bp.q.is_infinite() ? 1.0 : bp.q.value();
  const LevelSchedule eff = effective_probability(spec.pi);
  // E a_j^p ~ 2^{j p s'} tau_j^p n_j
  const double per_level = bp.s_prime() - spec.tau.e + (1.0 - eff.e) / p;
  return q_eff * per_level;
}

}  // namespace

ExperimentReport exponent_regression(const PriorSpec& spec, const BesovParams& bp,
                                     LevelRange levels, std::size_t reps, std::uint64_t seed,
                                     unsigned threads) {
  bp.validate();
  levels.validate();
  validate(spec.slab);
  if (bp.q.is_infinite()) throw PreconditionError("exponent regression: needs q < inf");
  if (!bp.p.is_infinite() && !std::isfinite(absolute_moment(spec.slab, bp.p.value()))) {
    throw PreconditionError("exponent regression: E|xi|^p is infinite");
  }
  if (reps < 2) throw PreconditionError("exponent regression: needs at least 2 replicates");
  if (levels.hi - levels.lo < 1) throw PreconditionError("exponent regression: needs two levels");
  const TermGrid g = sample_terms(spec, bp, levels, reps, seed, threads);
  ExperimentReport rep;
  rep.kind = "exponent_regression";
  rep.seed = seed;
  rep.reps = reps;
  fit_terms(g, levels, bp.q.value(), rep);
  for (LevelStat& st : rep.levels) st.expected_count = expected_count(spec.pi, st.j);
  rep.predicted_slope = predicted_slope(spec, bp);
  return rep;
}

ExperimentReport empirical_membership(const PriorSpec& spec, const BesovParams& bp,
                                      LevelRange levels, std::size_t reps, std::uint64_t seed,
                                      unsigned threads, double r) {
  bp.validate();
  levels.validate();
  validate(spec.slab);
  if (reps < 2) throw PreconditionError("membership: needs at least 2 replicates");
  if (levels.hi - levels.lo < 1) throw PreconditionError("membership: needs two levels");
  if (!bp.p.is_infinite() && !std::isfinite(absolute_moment(spec.slab, bp.p.value()))) {
    throw PreconditionError("membership: E|xi|^p is infinite");
  }
  const TermGrid g = sample_terms(spec, bp, levels, reps, seed, threads);
  ExperimentReport rep;
  rep.kind = bp.q.is_infinite() ? "membership_sup_trend" : "membership_slope";
  rep.seed = seed;
  rep.reps = reps;
  fit_terms(g, levels, bp.q.is_infinite() ? 1.0 : bp.q.value(), rep);
  for (LevelStat& st : rep.levels) st.expected_count = expected_count(spec.pi, st.j);
  rep.predicted_slope = predicted_slope(spec, bp);

  EmpiricalVerdict ev = EmpiricalVerdict::Inconclusive;
  if (rep.degenerate && rep.top_level_empty_fraction >= 0.8) {
    ev = EmpiricalVerdict::Converges;
  } else if (rep.slope) {
    const double band = verdict_stderr_multiple * rep.slope->stderr_of_mean;
    if (rep.slope->mean > band) ev = EmpiricalVerdict::Diverges;
    else if (rep.slope->mean < -band) ev = EmpiricalVerdict::Converges;
  }
  rep.empirical = ev;

  const Verdict v = classify_general(spec.slab, spec.tau, spec.pi, bp, r);
  rep.theory = v;
  if (is_covered(v.decision)) {
    const bool member = counts_as_member(v.decision);
    if (ev == EmpiricalVerdict::Inconclusive) {
      // only a threshold case is expected to be inconclusive
      rep.agrees = v.threshold && std::abs(*v.threshold - bp.s) < 0.05;
    } else {
      rep.agrees = (ev == EmpiricalVerdict::Converges) == member;
    }
  }
  return rep;
}

}  // namespace besovlab
