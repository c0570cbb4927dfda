#include "besovlab/cwt.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "besovlab/error.hpp"
#include "besovlab/parallel.hpp"
#include "besovlab/random.hpp"

namespace besovlab {

double CwtSpec::mu(double a) const { return c_mu * std::pow(a, -beta); }
double CwtSpec::tau(double a) const { return std::sqrt(c_tau) * std::pow(a, -0.5 * alpha); }

void CwtSpec::validate() const {
  if (!(c_mu >= 0.0) || !std::isfinite(c_mu)) throw DomainError("cwt: c_mu must be >= 0");
  if (!(c_tau > 0.0) || !std::isfinite(c_tau)) throw DomainError("cwt: c_tau must be positive");
  if (!(beta >= 0.0) || !(alpha >= 0.0)) throw DomainError("cwt: alpha and beta must be >= 0");
  if (!(a0 > 0.0)) throw DomainError("cwt: a0 must be positive");
  if (!(a_max > a0) || !std::isfinite(a_max)) throw DomainError("cwt: a_max must exceed a0");
  besovlab::validate(slab);
  for (const CoarseTerm& c : coarse) {
    if (!(c.a > 0.0 && c.a <= a0)) throw DomainError("cwt: coarse terms need 0 < a <= a0");
  }
}

double intensity_mass(const CwtSpec& spec) {
  spec.validate();
  if (spec.c_mu == 0.0) return 0.0;
  const double k = 1.0 - spec.beta;
  if (std::abs(k) < 1e-12) return spec.c_mu * std::log(spec.a_max / spec.a0);
  return spec.c_mu * (std::pow(spec.a_max, k) - std::pow(spec.a0, k)) / k;
}

std::vector<PoissonAtom> sample_atoms(const CwtSpec& spec, std::uint64_t seed,
                                      std::uint64_t replicate) {
  const double lambda = intensity_mass(spec);
  std::vector<PoissonAtom> atoms;
  if (lambda <= 0.0) return atoms;
  Rng rng = make_rng(seed, Stream::poisson, 0, replicate);
  std::poisson_distribution<long long> count_dist(lambda);
  const auto n = static_cast<std::size_t>(count_dist(rng));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  SlabSampler slab(spec.slab);
  const double k = 1.0 - spec.beta;
  const bool log_case = std::abs(k) < 1e-12;
  const double lo = log_case ? 0.0 : std::pow(spec.a0, k);
  const double hi = log_case ? std::log(spec.a_max / spec.a0) : std::pow(spec.a_max, k);
  atoms.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double uu = unif(rng);
    double a = log_case ? spec.a0 * std::exp(uu * hi) : std::pow(lo + uu * (hi - lo), 1.0 / k);
    a = std::clamp(a, spec.a0, spec.a_max);
    const double b = unif(rng);
    double xi = slab(rng);
    while (xi == 0.0) xi = slab(rng);
    atoms.push_back(PoissonAtom{a, b, spec.tau(a) * xi});
  }
  return atoms;
}

namespace {

// Linear interpolation on a table over [lo, lo + (n-1) h], zero outside.
double table_at(const std::vector<double>& t, double lo, double inv_h, double x) {
  const double pos = (x - lo) * inv_h;
  if (!(pos >= 0.0)) return 0.0;
  const double last = static_cast<double>(t.size() - 1);
  if (pos >= last) return pos == last ? t.back() : 0.0;
  const auto i = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(i);
  return frac == 0.0 ? t[i] : t[i] + frac * (t[i + 1] - t[i]);
}

bool dyadic_exponent(double u, int& a) {
  int e = 0;
  const double mant = std::frexp(u, &e);
  if (mant != 0.5) return false;
  a = e - 1;
  return true;
}

}  // namespace

KernelEvaluator::KernelEvaluator(const WaveletFamily& f, int quadrature_depth, int exact_depth)
    : family_(f), quad_(cascade_eval(f, quadrature_depth)), exact_depth_(exact_depth) {
  if (exact_depth < 2 || exact_depth > 16) throw DomainError("kernel: exact depth must be in [2, 16]");
  const int L = f.support();
  const auto& h = family_.filter;
  const std::vector<double> g = family_.highpass();
  const int taps = family_.taps();

  // A at the integers is the Kronecker delta; each refinement halves the step.
  std::vector<double> prev(static_cast<std::size_t>(2 * L + 1), 0.0);
  prev[static_cast<std::size_t>(L)] = 1.0;
  for (int d = 1; d <= exact_depth; ++d) {
    const long long half = 1LL << (d - 1);
    const long long n = 2LL * L * (1LL << d) + 1;
    std::vector<double> cur(static_cast<std::size_t>(n), 0.0);
    for (long long m = 0; m < n; ++m) {
      double acc = 0.0;
      for (int i = 0; i < taps; ++i) {
        for (int l = 0; l < taps; ++l) {
          const long long idx = (static_cast<long long>(-L + l - i)) * half + m;
          if (idx >= 0 && idx < static_cast<long long>(prev.size())) {
            acc += h[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(l)] * prev[static_cast<std::size_t>(idx)];
          }
        }
      }
      cur[static_cast<std::size_t>(m)] = acc;
    }
    prev = std::move(cur);
  }
  autocorr_ = std::move(prev);

  // Gamma(tau) = sum g_l h_i A(2 tau + i - l), K0(1, v) = sum g_l g_i A(2 v + i - l), both on
  // the grid one level finer than A.
  const long long scale = 1LL << exact_depth_;
  const long long n = 2LL * L * (scale << 1) + 1;
  gamma_.assign(static_cast<std::size_t>(n), 0.0);
  psi_autocorr_.assign(static_cast<std::size_t>(n), 0.0);
  for (long long m = 0; m < n; ++m) {
    // tau = -L + m 2^{-(D+1)}, so 2 tau + c sits at A-index (c - L) 2^D + m
    double ga = 0.0;
    double pa = 0.0;
    for (int i = 0; i < taps; ++i) {
      for (int l = 0; l < taps; ++l) {
        const long long idx = static_cast<long long>(-L + i - l) * scale + m;
        if (idx >= 0 && idx < static_cast<long long>(autocorr_.size())) {
          const double a = autocorr_[static_cast<std::size_t>(idx)];
          ga += g[static_cast<std::size_t>(l)] * h[static_cast<std::size_t>(i)] * a;
          pa += g[static_cast<std::size_t>(l)] * g[static_cast<std::size_t>(i)] * a;
        }
      }
    }
    gamma_[static_cast<std::size_t>(m)] = ga;
    psi_autocorr_[static_cast<std::size_t>(m)] = pa;
  }

  // psi = sum_k c_k 2^{a/2} phi(2^a x - k); c^{(1)} = g, c^{(a+1)}_{2k+i} += c^{(a)}_k h_i
  expansions_.push_back(g);
  for (int a = 2; a <= max_exact_dyadic_level; ++a) {
    const auto& c = expansions_.back();
    std::vector<double> next(2 * (c.size() - 1) + static_cast<std::size_t>(taps), 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      for (int i = 0; i < taps; ++i) next[2 * k + static_cast<std::size_t>(i)] += c[k] * h[static_cast<std::size_t>(i)];
    }
    expansions_.push_back(std::move(next));
  }
  // phi = sum_k d_k 2^{a/2} phi(2^a x - k); d^{(0)} = delta
  scaling_expansions_.push_back({1.0});
  for (int a = 1; a <= max_exact_dyadic_level; ++a) {
    const auto& d = scaling_expansions_.back();
    std::vector<double> next(2 * (d.size() - 1) + static_cast<std::size_t>(taps), 0.0);
    for (std::size_t k = 0; k < d.size(); ++k) {
      for (int i = 0; i < taps; ++i) next[2 * k + static_cast<std::size_t>(i)] += d[k] * h[static_cast<std::size_t>(i)];
    }
    scaling_expansions_.push_back(std::move(next));
  }
}

double KernelEvaluator::phi_autocorrelation(double sigma) const {
  const int L = support();
  return table_at(autocorr_, -L, std::ldexp(1.0, exact_depth_), sigma);
}

double KernelEvaluator::gamma(double tau) const {
  return table_at(gamma_, -support(), std::ldexp(1.0, exact_depth_ + 1), tau);
}

const std::vector<double>& KernelEvaluator::expansion(int a) const {
  return expansions_[static_cast<std::size_t>(a - 1)];
}

template <class Table>
double KernelEvaluator::expand(const std::vector<double>& c, double t, Table&& table) const {
  const int L = support();
  const long long k_lo = std::max<long long>(0, static_cast<long long>(std::floor(t - L)) + 1);
  const long long k_hi =
      std::min<long long>(static_cast<long long>(c.size()) - 1, static_cast<long long>(std::ceil(t + L)) - 1);
  double acc = 0.0;
  for (long long k = k_lo; k <= k_hi; ++k) acc += c[static_cast<std::size_t>(k)] * table(static_cast<double>(k) - t);
  return acc;
}

double KernelEvaluator::k0_dyadic(int a, double v) const {
  const int L = support();
  if (std::abs(a) > max_exact_dyadic_level) return k0_quadrature(std::ldexp(1.0, a), v);
  if (a == 0) return table_at(psi_autocorr_, -L, std::ldexp(1.0, exact_depth_ + 1), v);
  if (a < 0) return k0_dyadic(-a, -std::ldexp(v, a));
  if (v <= -std::ldexp(static_cast<double>(L), -a) || v >= L) return 0.0;
  return expand(expansion(a), std::ldexp(v, a), [this](double x) { return gamma(x); });
}

double KernelEvaluator::w0_dyadic(int a, double v) const {
  // a >= 0: expand phi at level a against Gamma; a < 0: expand psi at level -a against A
  if (a >= 0) return expand(scaling_expansions_[static_cast<std::size_t>(a)], std::ldexp(v, a),
                            [this](double x) { return gamma(x); });
  return expand(expansion(-a), -v, [this](double x) { return phi_autocorrelation(x); });
}

double KernelEvaluator::p0_dyadic(int a, double v) const {
  const auto& d = scaling_expansions_[static_cast<std::size_t>(std::abs(a))];
  return expand(d, a >= 0 ? std::ldexp(v, a) : -v, [this](double x) { return phi_autocorrelation(x); });
}

double KernelEvaluator::inner(const std::vector<double>& f1, const std::vector<double>& f2,
                              double u, double v) const {
  const int L = support();
  const double h = quad_.step();
  const double inv_h = 1.0 / h;
  const long long n = static_cast<long long>(f1.size());
  auto weight = [n](long long i) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; };
  double acc = 0.0;
  if (u >= 1.0) {
    // u^{-1/2} * integral f1(v + z/u) f2(z) dz over the grid of f2
    const long long i_lo = std::max<long long>(0, static_cast<long long>(std::ceil(-v * u * inv_h)));
    const long long i_hi = std::min<long long>(n - 1, static_cast<long long>(std::floor((L - v) * u * inv_h)));
    for (long long i = i_lo; i <= i_hi; ++i) {
      const double f2v = f2[static_cast<std::size_t>(i)];
      if (f2v == 0.0) continue;
      acc += weight(i) * f2v * table_at(f1, 0.0, inv_h, v + static_cast<double>(i) * h / u);
    }
    return acc * h / std::sqrt(u);
  }
  // u^{1/2} * integral f1(y) f2(u (y - v)) dy over the grid of f1
  const long long i_lo = std::max<long long>(0, static_cast<long long>(std::ceil(v * inv_h)));
  const long long i_hi = std::min<long long>(n - 1, static_cast<long long>(std::floor((v + L / u) * inv_h)));
  for (long long i = i_lo; i <= i_hi; ++i) {
    const double f1v = f1[static_cast<std::size_t>(i)];
    if (f1v == 0.0) continue;
    acc += weight(i) * f1v * table_at(f2, 0.0, inv_h, u * (static_cast<double>(i) * h - v));
  }
  return acc * h * std::sqrt(u);
}

double KernelEvaluator::k0_quadrature(double u, double v) const {
  if (!(u > 0.0)) throw DomainError("kernel: u must be positive");
  const int L = support();
  if (v <= -L / u || v >= L) return 0.0;
  return inner(quad_.psi, quad_.psi, u, v);
}

double KernelEvaluator::k0(double u, double v) const {
  if (!(u > 0.0)) throw DomainError("kernel: u must be positive");
  const int L = support();
  if (v <= -L / u || v >= L) return 0.0;
  int a = 0;
  if (dyadic_exponent(u, a) && std::abs(a) <= max_exact_dyadic_level) return k0_dyadic(a, v);
  return inner(quad_.psi, quad_.psi, u, v);
}

double KernelEvaluator::w0(double u, double v) const {
  if (!(u > 0.0)) throw DomainError("kernel: u must be positive");
  const int L = support();
  if (v <= -L / u || v >= L) return 0.0;
  int a = 0;
  if (dyadic_exponent(u, a) && std::abs(a) <= max_exact_dyadic_level) return w0_dyadic(a, v);
  return inner(quad_.phi, quad_.psi, u, v);
}

double KernelEvaluator::p0(double u, double v) const {
  if (!(u > 0.0)) throw DomainError("kernel: u must be positive");
  const int L = support();
  if (v <= -L / u || v >= L) return 0.0;
  int a = 0;
  if (dyadic_exponent(u, a) && std::abs(a) <= max_exact_dyadic_level) return p0_dyadic(a, v);
  return inner(quad_.phi, quad_.phi, u, v);
}

namespace {

long long floor_mod(long long k, long long n) {
  const long long r = k % n;
  return r < 0 ? r + n : r;
}

// Adds coef * kernel(u, x - k) into acc[k mod width] for every k in the support window.
template <class Kernel>
void scatter(std::vector<double>& acc, double u, double x, double coef, int L, Kernel&& kernel) {
  const auto width = static_cast<long long>(acc.size());
  const long long k_lo = static_cast<long long>(std::floor(x - L)) + 1;
  const long long k_hi = static_cast<long long>(std::ceil(x + L / u)) - 1;
  for (long long k = k_lo; k <= k_hi; ++k) {
    const double val = kernel(u, x - static_cast<double>(k));
    if (val != 0.0) acc[static_cast<std::size_t>(floor_mod(k, width))] += coef * val;
  }
}

std::vector<double> project_level(const std::vector<PoissonAtom>& atoms,
                                  const KernelEvaluator& kernel, int j) {
  std::vector<double> acc(std::size_t{1} << j, 0.0);
  const double scale = std::ldexp(1.0, j);
  for (const PoissonAtom& at : atoms) {
    if (at.omega == 0.0) continue;
    scatter(acc, at.a / scale, at.b * scale, at.omega, kernel.support(),
            [&](double u, double v) { return kernel.k0(u, v); });
  }
  return acc;
}

}  // namespace

CoefficientTree project_to_orthogonal(const std::vector<PoissonAtom>& atoms,
                                      const KernelEvaluator& kernel, int j0, int J,
                                      const std::vector<CoarseTerm>& coarse, unsigned threads) {
  if (j0 < 0 || J < j0 || J > 24) throw DomainError("project_to_orthogonal: need 0 <= j0 <= J <= 24");
  CoefficientTree t = make_empty_tree(j0, J);
  const std::size_t nlev = t.levels.size();
  parallel_for(nlev + 1, threads, [&](std::size_t i) {
    if (i == nlev) {
      std::vector<double> acc(std::size_t{1} << j0, 0.0);
      const double scale = std::ldexp(1.0, j0);
      for (const PoissonAtom& at : atoms) {
        if (at.omega == 0.0) continue;
        scatter(acc, at.a / scale, at.b * scale, at.omega, kernel.support(),
                [&](double u, double v) { return kernel.w0(u, v); });
      }
      for (const CoarseTerm& c : coarse) {
        if (c.eta == 0.0) continue;
        scatter(acc, c.a / scale, c.b * scale, c.eta, kernel.support(),
                [&](double u, double v) { return kernel.p0(u, v); });
      }
      t.scaling = std::move(acc);
      return;
    }
    const int j = j0 + static_cast<int>(i);
    const std::vector<double> dense = project_level(atoms, kernel, j);
    Level& lv = t.levels[i];
    for (std::size_t k = 0; k < dense.size(); ++k) {
      if (dense[k] != 0.0) lv.entries.push_back(Entry{static_cast<std::int64_t>(k), dense[k]});
    }
  });
  return t;
}

KernelBoundReport verify_kernel_bounds(const KernelEvaluator& kernel,
                                       const std::vector<double>& u_grid, int v_points,
                                       unsigned threads) {
  if (u_grid.empty()) throw DomainError("verify_kernel_bounds: empty u grid");
  if (v_points < 2) throw DomainError("verify_kernel_bounds: need at least 2 v points");
  KernelBoundReport rep;
  const WaveletFamily& f = kernel.family();
  rep.exponent = f.vanishing_moments + f.holder + 0.5;
  rep.u = u_grid;
  rep.sup_abs.assign(u_grid.size(), 0.0);
  const int L = kernel.support();
  parallel_for(u_grid.size(), threads, [&](std::size_t iu) {
    const double u = u_grid[iu];
    if (!(u > 0.0)) throw DomainError("verify_kernel_bounds: u must be positive");
    const double lo = -L / u;
    const double hi = L;
    double best = 0.0;
    for (int i = 1; i <= v_points; ++i) {
      const double v = lo + (hi - lo) * i / (v_points + 1);
      best = std::max(best, std::abs(kernel.k0(u, v)));
    }
    rep.sup_abs[iu] = best;
  });
  std::vector<double> xl, yl, xs, ys;
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    const double u = u_grid[i];
    const double s = rep.sup_abs[i];
    if (u >= 1.0) {
      rep.c_k0 = std::max(rep.c_k0, s * std::pow(u, rep.exponent));
      if (s > 0.0) {
        xl.push_back(std::log2(u));
        yl.push_back(std::log2(s));
      }
    }
    if (u <= 1.0) {
      rep.c_k1 = std::max(rep.c_k1, s * std::pow(u, -rep.exponent));
      if (s > 0.0) {
        xs.push_back(std::log2(u));
        ys.push_back(std::log2(s));
      }
    }
  }
  if (xl.size() >= 2) rep.slope_large = fit_line(xl, yl).slope;
  if (xs.size() >= 2) rep.slope_small = fit_line(xs, ys).slope;
  return rep;
}

MomentReport moment_bound_experiment(const CwtSpec& spec, const KernelEvaluator& kernel, double m,
                                     int j_lo, int j_hi, std::size_t reps, std::uint64_t seed,
                                     unsigned threads) {
  spec.validate();
  const WaveletFamily& f = kernel.family();
  const double decay = f.vanishing_moments + f.holder + 0.5;
  if (!std::isfinite(absolute_moment(spec.slab, m))) {
    throw PreconditionError("moment experiment: E|xi|^m must be finite");
  }
  if (!(m * decay > 1.0)) throw PreconditionError("moment experiment: needs m (r + rho + 1/2) > 1");
  if (j_lo < 0 || j_hi < j_lo || j_hi > 20) throw DomainError("moment experiment: bad level range");
  if (reps < 2) throw PreconditionError("moment experiment: needs at least 2 replicates");

  const std::size_t nlev = static_cast<std::size_t>(j_hi - j_lo + 1);
  std::vector<std::vector<double>> per_rep(reps, std::vector<double>(nlev, 0.0));
  std::vector<double> counts(reps, 0.0);
  parallel_for(reps, threads, [&](std::size_t r) {
    const std::vector<PoissonAtom> atoms = sample_atoms(spec, seed, r);
    counts[r] = static_cast<double>(atoms.size());
    for (std::size_t li = 0; li < nlev; ++li) {
      const int j = j_lo + static_cast<int>(li);
      const std::vector<double> w = project_level(atoms, kernel, j);
      CompensatedSum acc;
      for (double x : w) acc.add(m == 2.0 ? x * x : std::pow(std::abs(x), m));
      per_rep[r][li] = acc.value() / static_cast<double>(w.size());
    }
  });

  MomentReport rep;
  rep.reps = reps;
  rep.m = m;
  rep.mean_atom_count = mean_stat(counts).mean;
  std::vector<double> xj, yj;
  for (std::size_t li = 0; li < nlev; ++li) {
    std::vector<double> col(reps);
    for (std::size_t r = 0; r < reps; ++r) col[r] = per_rep[r][li];
    const MeanStat st = mean_stat(col);
    const int j = j_lo + static_cast<int>(li);
    const double a = std::ldexp(1.0, j);
    MomentLevel ml;
    ml.j = j;
    ml.mean = st.mean;
    ml.stderr_of_mean = st.stderr_of_mean;
    ml.predicted_shape = std::exp2(-j * (m * decay - 1.0)) + std::pow(spec.tau(a), m) * spec.mu(a);
    rep.levels.push_back(ml);
    if (st.mean > 0.0) {
      xj.push_back(j);
      yj.push_back(std::log2(st.mean));
    }
  }
  if (xj.size() >= 2) rep.fit = fit_line(xj, yj);
  rep.predicted_slope = std::max(-(m * decay - 1.0), -(0.5 * m * spec.alpha + spec.beta));
  return rep;
}

namespace {

Verdict cwt_not_covered(std::string id, std::string reason) {
  Verdict v;
  v.decision = Decision::NotCovered;
  v.case_id = std::move(id);
  v.reason = std::move(reason);
  return v;
}

}  // namespace

Verdict classify_cwt(const SlabDistribution& slab, double alpha, double beta,
                     const BesovParams& bp, double r, double rho) {
  bp.validate();
  validate(slab);
  if (!(bp.s < r)) return cwt_not_covered("cwt.simple", "s must be below the wavelet regularity r");
  if (!(alpha >= 0.0 && beta >= 0.0 && alpha + beta > 0.0)) {
    return cwt_not_covered("cwt.simple", "needs alpha, beta >= 0 with alpha + beta > 0");
  }
  if (!(r + rho > 0.5 * (1.0 + alpha))) {
    return cwt_not_covered("cwt.simple", "needs r + rho > (1 + alpha)/2");
  }
  if (beta > 1.0 + exponent_tolerance) {
    Verdict v;
    v.decision = Decision::MemberAS;
    v.case_id = "cwt.finite_count";
    v.assumptions = {"beta > 1: finite expected number of atoms"};
    return v;
  }
  if (!std::isfinite(absolute_moment(slab, 2.0))) {
    return cwt_not_covered("cwt.simple", "the slab needs a finite variance");
  }
  if (is_frechet(slab) && !(tail_index(slab) > 2.0 / (r + rho + 0.5))) {
    return cwt_not_covered("cwt.simple", "polynomial tail index must exceed 2/(r + rho + 1/2)");
  }
  Verdict v = classify_simple(slab, alpha, beta, bp, r);
  v.case_id = "cwt." + v.case_id;
  return v;
}

Verdict classify_cwt_general(const SlabDistribution& slab, const LevelSchedule& tau,
                             const LevelSchedule& mu, const BesovParams& bp, double r,
                             double rho) {
  bp.validate();
  validate(slab);
  tau.validate();
  mu.validate();
  const std::string id = "cwt.general";
  if (bp.p.is_infinite()) {
    return cwt_not_covered(id, "p = inf is not treated under a general intensity and scale");
  }
  if (!(bp.s < r)) return cwt_not_covered(id, "s must be below the wavelet regularity r");
  const double p = bp.p.value();
  auto nonincreasing = [](const LevelSchedule& s) {
    return s.e > exponent_tolerance || (std::abs(s.e) <= exponent_tolerance && s.g <= exponent_tolerance);
  };
  if (!nonincreasing(tau) || !nonincreasing(mu)) {
    return cwt_not_covered(id, "mu(a) and tau(a) must be nonincreasing");
  }
  auto vanishes = [](const LevelSchedule& s) {
    return s.e > exponent_tolerance || (std::abs(s.e) <= exponent_tolerance && s.g < -exponent_tolerance);
  };
  if (!vanishes(tau) && !vanishes(mu)) {
    return cwt_not_covered(id, "mu(a) or tau(a) must tend to 0");
  }
  // integrability of a^{p(r+rho+1/2)-1} tau(a)^p mu(a) near 0
  if (!(p * (r + rho + 0.5) - p * tau.e - mu.e > exponent_tolerance)) {
    return cwt_not_covered(id, "kernel decay too slow for the given tau and mu near small scales");
  }
  if (!std::isfinite(absolute_moment(slab, 2.0))) {
    return cwt_not_covered(id, "the slab needs a finite variance");
  }
  if (!std::isfinite(absolute_moment(slab, p))) {
    return cwt_not_covered(id, "needs E|xi|^p < inf");
  }
  const GrowthRegime regime = growth_regime(mu);
  Verdict v;
  v.case_id = id;
  switch (regime.kind) {
    case Regime::NotCovered:
      return cwt_not_covered(id, "mu(2^j) 2^j tends to 0 while its sum diverges");
    case Regime::Summable:
      v.decision = Decision::MemberAS;
      v.assumptions = {"finite expected number of atoms"};
      return v;
    case Regime::TendsToConstant:
      if (bp.q.is_infinite()) {
        return cwt_not_covered(id, "q = inf with mu(2^j) 2^j -> const is not treated");
      }
      if (!std::isfinite(absolute_moment(slab, bp.q.value()))) {
        return cwt_not_covered(id, "needs E|xi|^q < inf");
      }
      break;
    case Regime::IncreasesToInfinity:
      break;
  }
  // mu(2^j) is an intensity here, so no cap at 1
  const PowerLaw term = PowerLaw{-(bp.s_prime() + 1.0 / p), 0.0} * power_law(tau) * power_law(mu).pow(1.0 / p);
  bool member;
  if (bp.q.is_infinite()) {
    member = sup_verdict(term.e, term.g) == SupVerdict::Bounded;
  } else {
    const PowerLaw tq = term.pow(bp.q.value());
    member = series_verdict(tq.e, tq.g) == SeriesVerdict::Converges;
  }
  v.decision = member ? Decision::MemberAS : Decision::NotMemberAS;
  v.threshold = tau.e + mu.e / p - 0.5;
  return v;
}

}  // namespace besovlab
