#include "besovlab/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "besovlab/error.hpp"
#include "besovlab/numeric.hpp"

namespace besovlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double inf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string("slab parameter ") + what + " must be positive");
}

void require_nonneg_x(double x) {
  if (!(x >= 0.0)) throw DomainError("folded cdf: x must be >= 0");
}

}  // namespace

void validate(const SlabDistribution& d) {
  std::visit(overloaded{
                 [](const Gaussian& g) { require_positive(g.sigma, "sigma"); },
                 [](const Laplace& l) { require_positive(l.lambda, "lambda"); },
                 [](const StudentT& t) { require_positive(t.nu, "nu"); },
                 [](const Cauchy&) {},
                 [](const PowerExponential& p) {
                   require_positive(p.m, "m");
                   require_positive(p.lambda, "lambda");
                 },
             },
             d);
}

std::string slab_name(const SlabDistribution& d) {
  return std::visit(overloaded{
                        [](const Gaussian&) { return std::string("gaussian"); },
                        [](const Laplace&) { return std::string("laplace"); },
                        [](const StudentT&) { return std::string("student_t"); },
                        [](const Cauchy&) { return std::string("cauchy"); },
                        [](const PowerExponential&) { return std::string("power_exponential"); },
                    },
                    d);
}

TailClass tail_class(const SlabDistribution& d) {
  validate(d);
  return std::visit(overloaded{
                        [](const StudentT& t) -> TailClass { return FrechetTail{t.nu}; },
                        [](const Cauchy&) -> TailClass { return FrechetTail{1.0}; },
                        [](const auto&) -> TailClass { return GumbelTail{}; },
                    },
                    d);
}

bool is_frechet(const SlabDistribution& d) {
  return std::holds_alternative<FrechetTail>(tail_class(d));
}

double tail_index(const SlabDistribution& d) {
  const TailClass tc = tail_class(d);
  if (const auto* f = std::get_if<FrechetTail>(&tc)) return f->ell;
  throw UnsupportedTailError("tail_index: slab " + slab_name(d) + " is in the Gumbel class");
}

double gumbel_power(const SlabDistribution& d) {
  validate(d);
  return std::visit(overloaded{
                        [](const Gaussian&) { return 2.0; },
                        [](const Laplace&) { return 1.0; },
                        [](const PowerExponential& p) { return p.m; },
                        [&](const auto&) -> double {
                          throw UnsupportedTailError("gumbel_power: slab " + slab_name(d) +
                                                     " is in the Frechet class");
                        },
                    },
                    d);
}

double survival_hplus(const SlabDistribution& d, double x) {
  require_nonneg_x(x);
  validate(d);
  return std::visit(
      overloaded{
          [&](const Gaussian& g) { return std::erfc(x / (g.sigma * std::numbers::sqrt2)); },
          [&](const Laplace& l) { return std::exp(-l.lambda * x); },
          [&](const StudentT& t) {
            if (std::isinf(x)) return 0.0;
            return incomplete_beta(0.5 * t.nu, 0.5, t.nu / (t.nu + x * x));
          },
          [&](const Cauchy&) {
            // 1 - (2/pi) atan(x) = (2/pi) atan(1/x)
            if (x == 0.0) return 1.0;
            return 2.0 / std::numbers::pi * std::atan(1.0 / x);
          },
          [&](const PowerExponential& p) { return std::exp(-std::pow(p.lambda * x, p.m)); },
      },
      d);
}

double cdf_hplus(const SlabDistribution& d, double x) {
  require_nonneg_x(x);
  validate(d);
  return std::visit(
      overloaded{
          [&](const Gaussian& g) { return std::erf(x / (g.sigma * std::numbers::sqrt2)); },
          [&](const Laplace& l) { return -std::expm1(-l.lambda * x); },
          [&](const StudentT& t) {
            if (std::isinf(x)) return 1.0;
            // I_{x^2/(nu+x^2)}(1/2, nu/2) avoids cancellation for small x
            return incomplete_beta(0.5, 0.5 * t.nu, x * x / (t.nu + x * x));
          },
          [&](const Cauchy&) { return 2.0 / std::numbers::pi * std::atan(x); },
          [&](const PowerExponential& p) { return -std::expm1(-std::pow(p.lambda * x, p.m)); },
      },
      d);
}

double density_hplus(const SlabDistribution& d, double x) {
  require_nonneg_x(x);
  validate(d);
  return std::visit(
      overloaded{
          [&](const Gaussian& g) {
            const double z = x / g.sigma;
            return 2.0 * std::exp(-0.5 * z * z) / (g.sigma * std::sqrt(2.0 * std::numbers::pi));
          },
          [&](const Laplace& l) { return l.lambda * std::exp(-l.lambda * x); },
          [&](const StudentT& t) {
            const double lc = std::lgamma(0.5 * (t.nu + 1.0)) - std::lgamma(0.5 * t.nu) -
                              0.5 * std::log(t.nu * std::numbers::pi);
            return 2.0 * std::exp(lc - 0.5 * (t.nu + 1.0) * std::log1p(x * x / t.nu));
          },
          [&](const Cauchy&) { return 2.0 / (std::numbers::pi * (1.0 + x * x)); },
          [&](const PowerExponential& p) {
            const double lx = p.lambda * x;
            if (x == 0.0) return p.m == 1.0 ? p.lambda : (p.m < 1.0 ? inf : 0.0);
            return p.m * p.lambda * std::pow(lx, p.m - 1.0) * std::exp(-std::pow(lx, p.m));
          },
      },
      d);
}

double quantile_hplus(const SlabDistribution& d, double u) {
  validate(d);
  if (!(u >= 0.0)) throw DomainError("quantile_hplus: u must be >= 0");
  if (!(u < 1.0)) throw DomainError("quantile_hplus: u must be < 1");
  if (u == 0.0) return 0.0;
  // Upper quantiles are solved on the survival function so 1 - u keeps its digits.
  const bool upper = u > 0.5;
  const double target = upper ? 1.0 - u : u;
  auto below = [&](double x) {
    return upper ? survival_hplus(d, x) > target : cdf_hplus(d, x) < target;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (below(hi)) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw DomainError("quantile_hplus: bracket overflow");
  }
  for (int it = 0; it < 2000 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (below(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double absolute_moment(const SlabDistribution& d, double m) {
  validate(d);
  if (!(m > 0.0)) throw DomainError("absolute_moment: order must be positive");
  return std::visit(
      overloaded{
          [&](const Gaussian& g) {
            return std::pow(g.sigma, m) * std::pow(2.0, 0.5 * m) *
                   std::exp(std::lgamma(0.5 * (m + 1.0))) / std::sqrt(std::numbers::pi);
          },
          [&](const Laplace& l) { return std::exp(std::lgamma(m + 1.0)) / std::pow(l.lambda, m); },
          [&](const StudentT& t) {
            if (m >= t.nu) return inf;
            return std::pow(t.nu, 0.5 * m) *
                   std::exp(std::lgamma(0.5 * (m + 1.0)) + std::lgamma(0.5 * (t.nu - m)) -
                            std::lgamma(0.5 * t.nu)) /
                   std::sqrt(std::numbers::pi);
          },
          [&](const Cauchy&) {
            if (m >= 1.0) return inf;
            return 1.0 / std::cos(0.5 * std::numbers::pi * m);
          },
          [&](const PowerExponential& p) {
            return std::exp(std::lgamma(1.0 + m / p.m)) / std::pow(p.lambda, m);
          },
      },
      d);
}

double gumbel_aux_g(const SlabDistribution& d, double x) {
  validate(d);
  if (is_frechet(d)) {
    throw UnsupportedTailError("gumbel_aux_g: slab " + slab_name(d) + " is in the Frechet class");
  }
  if (!(x > 0.0)) throw DomainError("gumbel_aux_g: x must be positive");
  return std::visit(
      overloaded{
          [&](const Laplace& l) { return 1.0 / l.lambda; },
          [&](const PowerExponential& p) {
            return 1.0 / (p.m * std::pow(p.lambda, p.m) * std::pow(x, p.m - 1.0));
          },
          [&](const auto&) {
            const double dens = density_hplus(d, x);
            if (!(dens > 0.0)) throw DomainError("gumbel_aux_g: density underflow at x");
            return survival_hplus(d, x) / dens;
          },
      },
      d);
}

SlabSampler::SlabSampler(const SlabDistribution& d)
    : dist_(d),
      normal_(0.0, 1.0),
      exponential_(1.0),
      student_(std::holds_alternative<StudentT>(d) ? std::get<StudentT>(d).nu : 1.0) {
  validate(d);
}

double SlabSampler::operator()(Rng& rng) {
  return std::visit(overloaded{
                        [&](const Gaussian& g) { return g.sigma * normal_(rng); },
                        [&](const Laplace& l) {
                          const double mag = exponential_(rng) / l.lambda;
                          return sign_(rng) ? mag : -mag;
                        },
                        [&](const StudentT&) { return student_(rng); },
                        [&](const Cauchy&) { return cauchy_(rng); },
                        [&](const PowerExponential& p) {
                          const double mag = std::pow(exponential_(rng), 1.0 / p.m) / p.lambda;
                          return sign_(rng) ? mag : -mag;
                        },
                    },
                    dist_);
}

double SlabSampler::magnitude(Rng& rng) {
  return std::visit(overloaded{
                        [&](const Laplace& l) { return exponential_(rng) / l.lambda; },
                        [&](const PowerExponential& p) {
                          return std::pow(exponential_(rng), 1.0 / p.m) / p.lambda;
                        },
                        [&](const auto&) { return std::abs((*this)(rng)); },
                    },
                    dist_);
}

double sample(const SlabDistribution& d, Rng& rng) {
  SlabSampler s(d);
  return s(rng);
}

}  // namespace besovlab
