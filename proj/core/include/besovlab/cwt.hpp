#pragma once

#include <cstdint>
#include <vector>

#include "besovlab/besov.hpp"
#include "besovlab/distributions.hpp"
#include "besovlab/numeric.hpp"
#include "besovlab/schedules.hpp"
#include "besovlab/theory.hpp"
#include "besovlab/tree.hpp"
#include "besovlab/wavelets.hpp"

namespace besovlab {

struct PoissonAtom {
  double a = 1.0;      // scale, >= a0
  double b = 0.0;      // shift in [0, 1)
  double omega = 0.0;  // tau(a) * xi
};

// Fixed coarse term eta * phi_{(a, b)} with a <= a0.
struct CoarseTerm {
  double eta = 0.0;
  double a = 1.0;
  double b = 0.0;
};

// Intensity mu(a) = c_mu a^{-beta}, scale tau(a) = sqrt(c_tau) a^{-alpha/2}, a in [a0, a_max].
struct CwtSpec {
  double c_mu = 1.0;
  double beta = 0.5;
  double c_tau = 1.0;
  double alpha = 1.0;
  SlabDistribution slab = Gaussian{};
  double a0 = 8.0;
  double a_max = 1024.0;
  std::vector<CoarseTerm> coarse;

  double mu(double a) const;
  double tau(double a) const;
  void validate() const;
};

// Lambda = integral of mu over [a0, a_max].
double intensity_mass(const CwtSpec& spec);

std::vector<PoissonAtom> sample_atoms(const CwtSpec& spec, std::uint64_t seed,
                                      std::uint64_t replicate = 0);

// Inner products of a compactly supported family with its dilated, shifted copies:
//   K0(u, v) = <psi, psi_{u,v}>, W0(u, v) = <phi, psi_{u,v}>, P0(u, v) = <phi, phi_{u,v}>,
// where f_{u,v}(x) = u^{1/2} f(u (x - v)). Tables are built once and only read afterwards.
class KernelEvaluator {
 public:
  explicit KernelEvaluator(const WaveletFamily& f, int quadrature_depth = 8, int exact_depth = 12);

  const WaveletFamily& family() const { return family_; }
  int support() const { return family_.support(); }

  // Exact zero outside v in (-L/u, L); dyadic u uses the refinement route, anything else the
  // quadrature route. Same for w0 and p0.
  double k0(double u, double v) const;
  double k0_quadrature(double u, double v) const;
  // u = 2^a; exact up to rounding when 2^{|a|} v (or v for a < 0) is dyadic at the table depth.
  double k0_dyadic(int a, double v) const;
  double w0(double u, double v) const;
  double p0(double u, double v) const;

  // Autocorrelation of phi at sigma (table lookup with linear interpolation).
  double phi_autocorrelation(double sigma) const;

 private:
  double gamma(double tau) const;  // <psi, phi(. - tau)>
  double inner(const std::vector<double>& f1, const std::vector<double>& f2, double u,
               double v) const;
  const std::vector<double>& expansion(int a) const;
  double w0_dyadic(int a, double v) const;
  double p0_dyadic(int a, double v) const;
  // sum_k c_k table(k - t)
  template <class Table>
  double expand(const std::vector<double>& c, double t, Table&& table) const;

  WaveletFamily family_;
  CascadeTable quad_;
  int exact_depth_;
  std::vector<double> autocorr_;       // A(sigma), sigma in [-L, L], step 2^{-exact_depth}
  std::vector<double> psi_autocorr_;   // K0(1, v), same grid as gamma_
  std::vector<double> gamma_;          // Gamma(tau), tau in [-L, L], step 2^{-(exact_depth+1)}
  std::vector<std::vector<double>> expansions_;  // psi in level-a scaling functions, a >= 1
  std::vector<std::vector<double>> scaling_expansions_;  // phi in level-a scaling functions, a >= 0
};

constexpr int max_exact_dyadic_level = 12;

// w_jk for j in [j_lo, j_hi], periodized, plus scaling coefficients at j_lo.
CoefficientTree project_to_orthogonal(const std::vector<PoissonAtom>& atoms,
                                      const KernelEvaluator& kernel, int j0, int J,
                                      const std::vector<CoarseTerm>& coarse = {},
                                      unsigned threads = 1);

struct KernelBoundReport {
  std::vector<double> u;
  std::vector<double> sup_abs;  // sup over the v-grid of |K0(u, .)|
  double exponent = 0.0;        // r + rho + 1/2 from the family metadata
  double slope_large = 0.0;     // log2 sup vs log2 u, u >= 1
  double slope_small = 0.0;     // same, u <= 1
  double c_k0 = 0.0;            // smallest C with sup <= C u^{-exponent}, u >= 1
  double c_k1 = 0.0;            // smallest C with sup <= C u^{exponent}, u <= 1
};

// v is sampled at v_points equispaced points of the support window (-L/u, L) for every u.
KernelBoundReport verify_kernel_bounds(const KernelEvaluator& kernel,
                                       const std::vector<double>& u_grid, int v_points,
                                       unsigned threads = 1);

struct MomentLevel {
  int j = 0;
  double mean = 0.0;  // average of |w_jk|^m over k and replicates
  double stderr_of_mean = 0.0;
  double predicted_shape = 0.0;  // 2^{-j[m(r+rho+1/2)-1]} + tau(2^j)^m mu(2^j)
};

struct MomentReport {
  std::vector<MomentLevel> levels;
  std::size_t reps = 0;
  double m = 2.0;
  LineFit fit;                    // log2 mean vs j
  double predicted_slope = 0.0;   // dominant exponent of predicted_shape
  double mean_atom_count = 0.0;
};

MomentReport moment_bound_experiment(const CwtSpec& spec, const KernelEvaluator& kernel, double m,
                                     int j_lo, int j_hi, std::size_t reps, std::uint64_t seed,
                                     unsigned threads = 1);

// mu = c a^{-beta}, tau^2 = c a^{-alpha}; r + rho is the kernel decay budget.
Verdict classify_cwt(const SlabDistribution& slab, double alpha, double beta,
                     const BesovParams& bp, double r, double rho);

// tau(2^j) and mu(2^j) given as level schedules; p < infinity only.
Verdict classify_cwt_general(const SlabDistribution& slab, const LevelSchedule& tau,
                             const LevelSchedule& mu, const BesovParams& bp, double r,
                             double rho);

}  // namespace besovlab
