#include "besovlab/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "besovlab/error.hpp"

namespace besovlab {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

double compensated_sum(std::span<const double> xs) noexcept {
  CompensatedSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("fit_line: x and y differ in length");
  const std::size_t n = x.size();
  if (n < 2) throw DomainError("fit_line: need at least two points");
  const double xm = compensated_sum(x) / static_cast<double>(n);
  const double ym = compensated_sum(y) / static_cast<double>(n);
  CompensatedSum sxx, sxy;
  for (std::size_t i = 0; i < n; ++i) {
    sxx.add((x[i] - xm) * (x[i] - xm));
    sxy.add((x[i] - xm) * (y[i] - ym));
  }
  if (sxx.value() <= 0.0) throw DomainError("fit_line: x values are all equal");
  LineFit fit;
  fit.n = n;
  fit.slope = sxy.value() / sxx.value();
  fit.intercept = ym - fit.slope * xm;
  if (n > 2) {
    CompensatedSum rss;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      rss.add(r * r);
    }
    fit.slope_stderr = std::sqrt(rss.value() / static_cast<double>(n - 2) / sxx.value());
  }
  return fit;
}

MeanStat mean_stat(std::span<const double> xs) {
  MeanStat st;
  st.n = xs.size();
  if (xs.empty()) return st;
  st.mean = compensated_sum(xs) / static_cast<double>(st.n);
  if (st.n >= 2) {
    CompensatedSum ss;
    for (double x : xs) ss.add((x - st.mean) * (x - st.mean));
    st.sd = std::sqrt(ss.value() / static_cast<double>(st.n - 1));
    st.stderr_of_mean = st.sd / std::sqrt(static_cast<double>(st.n));
  }
  return st;
}

double sample_quantile(std::vector<double> xs, double prob) {
  if (xs.empty()) throw DomainError("sample_quantile: empty sample");
  if (!(prob >= 0.0 && prob <= 1.0)) throw DomainError("sample_quantile: prob outside [0,1]");
  std::sort(xs.begin(), xs.end());
  const double h = prob * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (h - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

namespace {

double beta_continued_fraction(double a, double b, double x) {
  constexpr int max_iter = 500;
  constexpr double eps = 1e-16;
  constexpr double tiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) return h;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError("incomplete_beta: a, b must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("incomplete_beta: x outside [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  // The fraction converges fast on the side of the symmetry point it is evaluated on.
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

}  // namespace besovlab
