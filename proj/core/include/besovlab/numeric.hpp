#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace besovlab {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_sum(std::span<const double> xs) noexcept;

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;  // classical OLS standard error; 0 when n <= 2
  std::size_t n = 0;
};

// Ordinary least squares y = intercept + slope * x. Needs at least two distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct MeanStat {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  double sd = 0.0;
  std::size_t n = 0;
};

MeanStat mean_stat(std::span<const double> xs);

// Linear-interpolation sample quantile (the usual "type 7" definition).
double sample_quantile(std::vector<double> xs, double prob);

// Regularized incomplete beta I_x(a, b), continued fraction evaluated with Lentz's method.
double incomplete_beta(double a, double b, double x);

}  // namespace besovlab
