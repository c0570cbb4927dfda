#include <gtest/gtest.h>

#include <boost/math/special_functions/daubechies_wavelet.hpp>

#include <cmath>
#include <numeric>

#include <besovlab/cwt.hpp>
#include <besovlab/error.hpp>
#include <besovlab/numeric.hpp>

using namespace besovlab;

namespace {

const ExtendedIndex inf = ExtendedIndex::infinity();
ExtendedIndex f(double v) { return ExtendedIndex::finite(v); }

const KernelEvaluator& db4_kernel() {
  static const KernelEvaluator k(daubechies(4));
  return k;
}

CwtSpec poisson_spec() {
  CwtSpec s;
  s.c_mu = 1.0;
  s.beta = 0.5;
  s.a0 = 4.0;
  s.a_max = 64.0;
  return s;
}

// <psi, psi_{u,v}> for db4 by a fine midpoint rule on boost's psi (support [-1, 2]).
double k0_boost(double u, double v) {
  static const boost::math::daubechies_wavelet<double, 2> psi;
  const int n = 60000;
  const double lo = -1.0, hi = 2.0, h = (hi - lo) / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = lo + (i + 0.5) * h;
    // psi here is +-psi_boost(. - 1); the sign cancels in the product
    const double z = u * (x + 1.0 - v) - 1.0;
    if (z <= -1.0 || z >= 2.0) continue;
    acc += psi(x) * psi(z);
  }
  return std::sqrt(u) * acc * h;
}

}  // namespace

TEST(Cwt, IntensityMass) {
  EXPECT_NEAR(intensity_mass(poisson_spec()), 12.0, 1e-12);
  CwtSpec s = poisson_spec();
  s.beta = 1.0;
  EXPECT_NEAR(intensity_mass(s), std::log(16.0), 1e-12);
  s.beta = 2.0;
  s.a_max = 1e6;
  EXPECT_LE(intensity_mass(s), 1.0 / s.a0);
  s.c_mu = 0.0;
  EXPECT_EQ(intensity_mass(s), 0.0);
  EXPECT_TRUE(sample_atoms(s, 1).empty());
}

TEST(Cwt, SpecValidation) {
  CwtSpec s = poisson_spec();
  s.a_max = s.a0;
  EXPECT_THROW(s.validate(), DomainError);
  s = poisson_spec();
  s.beta = -0.5;
  EXPECT_THROW(s.validate(), DomainError);
}

TEST(Cwt, PoissonCountMatchesIntensity) {
  const CwtSpec s = poisson_spec();
  std::vector<double> counts;
  for (std::uint64_t rep = 0; rep < 400; ++rep) {
    const auto atoms = sample_atoms(s, 99, rep);
    counts.push_back(static_cast<double>(atoms.size()));
    for (const auto& a : atoms) {
      ASSERT_GE(a.a, s.a0);
      ASSERT_LE(a.a, s.a_max);
      ASSERT_GE(a.b, 0.0);
      ASSERT_LT(a.b, 1.0);
      ASSERT_NE(a.omega, 0.0);
    }
  }
  const MeanStat m = mean_stat(counts);
  EXPECT_NEAR(m.mean, 12.0, 4.0 * std::sqrt(12.0 / 400));
  double var = 0.0;
  for (double c : counts) var += (c - m.mean) * (c - m.mean);
  var /= counts.size() - 1;
  // variance of the sample variance of Poisson(L) is about 2 L^2 / n
  EXPECT_NEAR(var, 12.0, 4.0 * std::sqrt(2.0 * 144.0 / 400));
}

TEST(Cwt, ScalesFollowIntensity) {
  // for beta = 0.5 the scale CDF is (sqrt a - 2) / 6 on [4, 64]
  const CwtSpec s = poisson_spec();
  std::size_t below = 0, total = 0;
  for (std::uint64_t rep = 0; rep < 500; ++rep) {
    for (const auto& a : sample_atoms(s, 5, rep)) {
      ++total;
      if (a.a < 16.0) ++below;
    }
  }
  const double share = static_cast<double>(below) / total;
  EXPECT_NEAR(share, 1.0 / 3.0, 4.0 * std::sqrt(2.0 / 9.0 / total));
}

TEST(Cwt, CountStableForSummableIntensity) {
  CwtSpec s = poisson_spec();
  s.beta = 2.0;
  s.c_mu = 40.0;
  double m1 = 0, m2 = 0;
  for (std::uint64_t rep = 0; rep < 300; ++rep) {
    s.a_max = 1e3;
    m1 += sample_atoms(s, 3, rep).size();
    s.a_max = 1e6;
    m2 += sample_atoms(s, 3, rep).size();
  }
  EXPECT_NEAR(m1 / 300, m2 / 300, 0.5);
  EXPECT_LE(m2 / 300, 40.0 / 4.0 + 4.0 * std::sqrt(10.0 / 300));
}

TEST(Cwt, SamplingIsDeterministic) {
  const auto a = sample_atoms(poisson_spec(), 11, 3);
  const auto b = sample_atoms(poisson_spec(), 11, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].a, b[i].a);
    EXPECT_EQ(a[i].b, b[i].b);
    EXPECT_EQ(a[i].omega, b[i].omega);
  }
}

TEST(Cwt, KernelAtOrthonormalPoints) {
  for (const auto& fam : {haar(), daubechies(4), daubechies(6)}) {
    const KernelEvaluator k(fam);
    EXPECT_NEAR(k.k0(1.0, 0.0), 1.0, 1e-8) << fam.name();
    EXPECT_NEAR(k.k0(2.0, 0.0), 0.0, 1e-8) << fam.name();
    EXPECT_NEAR(k.k0(0.5, 0.0), 0.0, 1e-8) << fam.name();
    for (int s = -fam.support(); s <= fam.support(); ++s) {
      EXPECT_NEAR(k.k0(1.0, s), s == 0 ? 1.0 : 0.0, 1e-8);
      EXPECT_NEAR(k.k0(2.0, s / 2.0), 0.0, 1e-8);
      EXPECT_NEAR(k.k0(4.0, s / 4.0), 0.0, 1e-8);
      EXPECT_NEAR(k.w0(1.0, s), 0.0, 1e-8);
      EXPECT_NEAR(k.p0(1.0, s), s == 0 ? 1.0 : 0.0, 1e-8);
    }
  }
}

TEST(Cwt, KernelVanishesOffSupport) {
  const auto& k = db4_kernel();
  const double L = k.support();
  for (double u : {0.25, 0.7, 1.0, 2.0, 3.3, 16.0}) {
    EXPECT_EQ(k.k0(u, L), 0.0);
    EXPECT_EQ(k.k0(u, L + 0.5), 0.0);
    EXPECT_EQ(k.k0(u, -L / u), 0.0);
    EXPECT_EQ(k.k0(u, -L / u - 1.0), 0.0);
    EXPECT_EQ(k.k0(u, 2.0 * L), 0.0);
  }
  const KernelEvaluator h(haar());
  for (double u : {1.0, 2.0, 4.0}) {
    EXPECT_EQ(h.k0(u, 1.0), 0.0);
    EXPECT_EQ(h.k0(u, -1.0 / u), 0.0);
    EXPECT_EQ(h.k0(u, 2.0), 0.0);
  }
}

TEST(Cwt, KernelMatchesIndependentQuadrature) {
  const auto& k = db4_kernel();
  for (double u : {0.6, 1.0, 1.7, 3.0}) {
    for (double v : {-0.9, -0.3, 0.0, 0.37, 1.2, 2.1}) {
      if (!(v > -3.0 / u && v < 3.0)) continue;
      EXPECT_NEAR(k.k0(u, v), k0_boost(u, v), 3e-3) << "u=" << u << " v=" << v;
    }
  }
  // the exact route against the same oracle
  for (double v : {-0.25, 0.125, 0.5, 1.75}) {
    EXPECT_NEAR(k.k0_dyadic(1, v), k0_boost(2.0, v), 1e-4) << v;
    EXPECT_NEAR(k.k0_dyadic(-1, v), k0_boost(0.5, v), 1e-4) << v;
  }
}

TEST(Cwt, KernelScaleSymmetry) {
  // <psi, psi_{u,v}> = <psi_{1/u, -uv}, psi>
  const auto& k = db4_kernel();
  for (double u : {1.5, 2.0, 2.7, 8.0}) {
    for (double v : {-0.2, 0.1, 0.4, 1.3}) {
      EXPECT_NEAR(k.k0(u, v), k.k0(1.0 / u, -u * v), 3e-3) << u << " " << v;
    }
  }
  for (int a = 1; a <= 4; ++a) {
    for (double v : {-0.25, 0.5, 1.0}) {
      EXPECT_NEAR(k.k0_dyadic(a, v), k.k0_dyadic(-a, -std::ldexp(v, a)), 1e-10);
    }
  }
}

TEST(Cwt, DyadicAndQuadratureRoutesAgree) {
  const auto& k = db4_kernel();
  for (int a = -3; a <= 3; ++a) {
    for (double v : {-0.3, 0.0, 0.2, 0.9, 2.4}) {
      const double u = std::ldexp(1.0, a);
      EXPECT_NEAR(k.k0_dyadic(a, v), k.k0_quadrature(u, v), 3e-3) << a << " " << v;
    }
  }
}

TEST(Cwt, ProjectionOfEmptyAndSingleAtoms) {
  const auto& k = db4_kernel();
  const auto zero = project_to_orthogonal({}, k, 3, 6);
  for (double u : zero.scaling) EXPECT_EQ(u, 0.0);
  for (const auto& lev : zero.levels) EXPECT_TRUE(lev.entries.empty());

  const int j = 5, kk = 7;
  const auto t = project_to_orthogonal({{32.0, kk / 32.0, 1.0}}, k, 3, 7);
  for (const auto& lev : t.levels) {
    for (const auto& e : lev.entries) {
      if (lev.j == j && e.k == kk) {
        EXPECT_NEAR(e.w, 1.0, 1e-8);
      } else {
        EXPECT_NEAR(e.w, 0.0, 1e-8) << lev.j << " " << e.k;
      }
    }
  }
  for (double u : t.scaling) EXPECT_NEAR(u, 0.0, 1e-8);
}

TEST(Cwt, ProjectionIsLinear) {
  const auto& k = db4_kernel();
  const PoissonAtom a{21.3, 0.41, 0.8};
  const PoissonAtom b{70.0, 0.93, -1.7};
  const auto ta = project_to_orthogonal({a}, k, 2, 7);
  const auto tb = project_to_orthogonal({b}, k, 2, 7);
  const auto tab = project_to_orthogonal({a, b}, k, 2, 7, {}, 3);
  PoissonAtom a3 = a;
  a3.omega *= 3.0;
  const auto t3 = project_to_orthogonal({a3}, k, 2, 7);
  auto dense = [](const CoefficientTree& t) {
    std::vector<double> out(t.scaling);
    for (const auto& lev : t.levels) {
      std::vector<double> row(std::size_t{1} << lev.j, 0.0);
      for (const auto& e : lev.entries) row[e.k] = e.w;
      out.insert(out.end(), row.begin(), row.end());
    }
    return out;
  };
  const auto da = dense(ta), db = dense(tb), dab = dense(tab), d3 = dense(t3);
  for (std::size_t i = 0; i < da.size(); ++i) {
    EXPECT_NEAR(da[i] + db[i], dab[i], 1e-12);
    EXPECT_NEAR(3.0 * da[i], d3[i], 1e-12);
  }
}

TEST(Cwt, CoarseTermsEnterScaling) {
  const auto& k = db4_kernel();
  const auto t = project_to_orthogonal({}, k, 3, 5, {{2.0, 8.0, 3.0 / 8.0}});
  for (std::size_t i = 0; i < t.scaling.size(); ++i) EXPECT_NEAR(t.scaling[i], i == 3 ? 2.0 : 0.0, 1e-8);
  for (const auto& lev : t.levels)
    for (const auto& e : lev.entries) EXPECT_NEAR(e.w, 0.0, 1e-8);
}

TEST(Cwt, KernelBounds) {
  std::vector<double> grid;
  for (int a = -6; a <= 6; ++a) grid.push_back(std::ldexp(1.0, a));
  const KernelEvaluator h(haar());
  const auto rh = verify_kernel_bounds(h, grid, 64);
  for (double s : rh.sup_abs) EXPECT_LE(s, 1.0 + 1e-9);

  const auto rd = verify_kernel_bounds(db4_kernel(), grid, 64, 2);
  ASSERT_EQ(rd.sup_abs.size(), grid.size());
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (grid[i] >= 2.0) EXPECT_GT(rd.sup_abs[i], rd.sup_abs[i + 1]) << grid[i];
  }
  EXPECT_LT(rd.slope_large, 0.0);
  EXPECT_GT(rd.slope_small, 0.0);
  EXPECT_NEAR(rd.slope_large, -rd.slope_small, 0.3);
  EXPECT_NEAR(rd.exponent, 2.0 + 0.55 + 0.5, 1e-12);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] >= 1.0) EXPECT_LE(rd.sup_abs[i], rd.c_k0 * std::pow(grid[i], -rd.exponent) * (1 + 1e-12));
    if (grid[i] <= 1.0) EXPECT_LE(rd.sup_abs[i], rd.c_k1 * std::pow(grid[i], rd.exponent) * (1 + 1e-12));
  }
}

TEST(Cwt, MomentExperimentWithoutAtoms) {
  CwtSpec s;
  s.c_mu = 0.0;
  s.a0 = 8.0;
  s.a_max = 256.0;
  const auto r = moment_bound_experiment(s, db4_kernel(), 2.0, 3, 6, 4, 1);
  for (const auto& lev : r.levels) EXPECT_EQ(lev.mean, 0.0);
  EXPECT_EQ(r.mean_atom_count, 0.0);
}

TEST(Cwt, MomentExperimentPreconditions) {
  CwtSpec s;
  s.slab = Cauchy{};
  EXPECT_THROW(moment_bound_experiment(s, db4_kernel(), 2.0, 3, 6, 4, 1), PreconditionError);
  EXPECT_THROW(moment_bound_experiment(CwtSpec{}, db4_kernel(), 2.0, 3, 6, 1, 1), PreconditionError);
}

TEST(Cwt, SecondMomentIsLinearInIntensity) {
  CwtSpec s;
  s.alpha = 1.0;
  s.beta = 0.5;
  s.a0 = 8.0;
  s.a_max = 512.0;
  const auto r1 = moment_bound_experiment(s, db4_kernel(), 2.0, 5, 6, 400, 21);
  s.c_mu = 2.0;
  const auto r2 = moment_bound_experiment(s, db4_kernel(), 2.0, 5, 6, 400, 22);
  double m1 = 0, m2 = 0;
  for (std::size_t i = 0; i < r1.levels.size(); ++i) {
    m1 += r1.levels[i].mean;
    m2 += r2.levels[i].mean;
  }
  EXPECT_NEAR(m2 / m1, 2.0, 0.3);
  EXPECT_NEAR(r2.mean_atom_count / r1.mean_atom_count, 2.0, 0.1);
}

TEST(Cwt, ClassifyExamples) {
  const Verdict v = classify_cwt(Gaussian{}, 3, 0.5, {1.0, f(2), f(2)}, 2.5, 0.5);
  EXPECT_EQ(v.decision, Decision::MemberAS);
  EXPECT_DOUBLE_EQ(*v.threshold, 1.25);
  for (double s : {0.5, 2.0}) {
    for (const auto& p : {f(1), f(2), inf}) {
      EXPECT_EQ(classify_cwt(Gaussian{}, 3, 1.5, {s, p, inf}, 2.5, 0.5).decision, Decision::MemberAS);
    }
  }
  EXPECT_EQ(classify_cwt(Gaussian{}, 3, 0.5, {1.0, f(2), f(2)}, 1.5, 0.4).decision, Decision::NotCovered);
  EXPECT_EQ(classify_cwt(Cauchy{}, 3, 0.5, {0.2, inf, inf}, 2.5, 0.5).decision, Decision::NotCovered);
  EXPECT_EQ(classify_cwt(Gaussian{}, 3, 0.5, {3.0, f(2), f(2)}, 2.5, 0.5).decision, Decision::NotCovered);
}

TEST(Cwt, ClassifyAgreesWithOrthogonalCriteria) {
  const std::vector<SlabDistribution> slabs = {Gaussian{}, Laplace{}, StudentT{3.0}, StudentT{7.0}};
  const double r = 8.0, rho = 0.5;
  int compared = 0;
  for (const auto& slab : slabs) {
    for (double alpha : {0.0, 1.0, 3.0, 5.0}) {
      for (double beta : {0.0, 0.5, 1.0, 1.5}) {
        if (alpha + beta <= 0) continue;
        for (double s = 0.1; s < 4.0; s += 0.15) {
          for (const auto& p : {f(1), f(2), f(2.5), inf}) {
            for (const auto& q : {f(1), f(2), inf}) {
              const BesovParams bp{s, p, q};
              const Verdict c = classify_cwt(slab, alpha, beta, bp, r, rho);
              if (!is_covered(c.decision)) continue;
              ++compared;
              EXPECT_EQ(c.decision, classify_simple(slab, alpha, beta, bp, r).decision)
                  << slab_name(slab) << " a=" << alpha << " b=" << beta << " s=" << s;
            }
          }
        }
      }
    }
  }
  EXPECT_GT(compared, 1000);
}

TEST(Cwt, ClassifyGeneral) {
  const double r = 2.0, rho = 0.55;
  EXPECT_EQ(classify_cwt_general(Gaussian{}, {1, 1.5, 0}, {1, 0.5, 0}, {1.0, f(2), f(2)}, r, rho).decision,
            Decision::MemberAS);
  EXPECT_EQ(classify_cwt_general(Gaussian{}, {1, 1.5, 0}, {1, 0.5, 0}, {1.3, f(2), f(2)}, r, rho).decision,
            Decision::NotMemberAS);
  EXPECT_EQ(classify_cwt_general(Gaussian{}, {1, 1.5, 0}, {1, 0.5, 0}, {1.0, inf, f(2)}, r, rho).decision,
            Decision::NotCovered);
  EXPECT_EQ(classify_cwt_general(Gaussian{}, {1, 1.5, 0}, {1, -0.5, 0}, {1.0, f(2), f(2)}, r, rho).decision,
            Decision::NotCovered);
  EXPECT_EQ(classify_cwt_general(Gaussian{}, {1, 1.0, 0}, {1, 2.0, 0}, {1.5, f(2), f(2)}, r, rho).decision,
            Decision::MemberAS);
  EXPECT_EQ(classify_cwt_general(Cauchy{}, {1, 1.0, 0}, {1, 0.5, 0}, {0.5, f(2), f(2)}, r, rho).decision,
            Decision::NotCovered);
}
