#pragma once

#include <random>
#include <string>
#include <variant>

#include "besovlab/random.hpp"

namespace besovlab {

struct Gaussian {
  double sigma = 1.0;
};
struct Laplace {
  double lambda = 1.0;  // density (lambda/2) exp(-lambda |x|)
};
struct StudentT {
  double nu = 3.0;
};
struct Cauchy {};
// Symmetric law with folded tail 1 - H+(x) = exp(-(lambda x)^m).
struct PowerExponential {
  double m = 2.0;
  double lambda = 1.0;
};

using SlabDistribution = std::variant<Gaussian, Laplace, StudentT, Cauchy, PowerExponential>;

struct GumbelTail {};
struct FrechetTail {
  double ell = 1.0;
};
using TailClass = std::variant<GumbelTail, FrechetTail>;

void validate(const SlabDistribution& d);
std::string slab_name(const SlabDistribution& d);

TailClass tail_class(const SlabDistribution& d);
bool is_frechet(const SlabDistribution& d);
// Tail index ell of a Frechet-class slab.
double tail_index(const SlabDistribution& d);
// Exponent m with 1 - H+(x) ~ exp(-c x^m) for Gumbel-class slabs; b_j then grows like
// (log n_j)^{1/m}.
double gumbel_power(const SlabDistribution& d);

// H+(x) = H(x) - H(-x), the law of |xi|.
double cdf_hplus(const SlabDistribution& d, double x);
// 1 - H+(x), computed without cancellation.
double survival_hplus(const SlabDistribution& d, double x);
// H+'(x).
double density_hplus(const SlabDistribution& d, double x);
double quantile_hplus(const SlabDistribution& d, double u);

// E|xi|^m, +infinity when the moment diverges.
double absolute_moment(const SlabDistribution& d, double m);

// (1 - H+(x)) / H+'(x); only for Gumbel-class slabs.
double gumbel_aux_g(const SlabDistribution& d, double x);

// Holds the std distribution objects so repeated draws do not rebuild them.
class SlabSampler {
 public:
  explicit SlabSampler(const SlabDistribution& d);
  double operator()(Rng& rng);
  // |xi| only; cheaper for level maxima and moment sums.
  double magnitude(Rng& rng);

 private:
  SlabDistribution dist_;
  std::normal_distribution<double> normal_;
  std::exponential_distribution<double> exponential_;
  std::student_t_distribution<double> student_;
  std::cauchy_distribution<double> cauchy_;
  std::bernoulli_distribution sign_{0.5};
};

double sample(const SlabDistribution& d, Rng& rng);

}  // namespace besovlab
