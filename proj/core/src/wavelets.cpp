#include "besovlab/wavelets.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "besovlab/error.hpp"
#include "besovlab/parallel.hpp"

namespace besovlab {

std::string WaveletFamily::name() const {
  if (kind == WaveletKind::Haar) return "haar";
  return "db" + std::to_string(taps());
}

std::vector<double> WaveletFamily::highpass() const {
  const int n = taps();
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    g[static_cast<std::size_t>(k)] = (k % 2 == 0 ? 1.0 : -1.0) * filter[static_cast<std::size_t>(n - 1 - k)];
  }
  return g;
}

WaveletFamily haar() {
  const double h = 1.0 / std::numbers::sqrt2;
  return WaveletFamily{WaveletKind::Haar, {h, h}, 1, 0.0};
}

WaveletFamily daubechies(int taps) {
  WaveletFamily f;
  f.kind = WaveletKind::Daubechies;
  switch (taps) {
    case 4: {
      const double s3 = std::sqrt(3.0);
      const double d = 4.0 * std::numbers::sqrt2;
      f.filter = {(1 + s3) / d, (3 + s3) / d, (3 - s3) / d, (1 - s3) / d};
      f.vanishing_moments = 2;
      f.holder = 0.55;
      break;
    }
    case 6:
      f.filter = {0.3326705529500826, 0.8068915093110925, 0.4598775021184915,
                  -0.1350110200102545, -0.0854412738820267, 0.0352262918857095};
      f.vanishing_moments = 3;
      f.holder = 1.088;
      break;
    case 8:
      f.filter = {0.2303778133088965,  0.7148465705529156,  0.6308807679298589,
                  -0.0279837694168599, -0.1870348117190930, 0.0308413818355607,
                  0.0328830116668852,  -0.0105974017850690};
      f.vanishing_moments = 4;
      f.holder = 1.618;
      break;
    default:
      throw DomainError("daubechies: supported tap counts are 4, 6 and 8");
  }
  return f;
}

WaveletFamily wavelet_by_name(const std::string& name) {
  if (name == "haar") return haar();
  if (name == "db4") return daubechies(4);
  if (name == "db6") return daubechies(6);
  if (name == "db8") return daubechies(8);
  throw DomainError("unknown wavelet '" + name + "' (expected haar, db4, db6 or db8)");
}

double CascadeTable::step() const { return std::ldexp(1.0, -depth); }

namespace {

double interp(const std::vector<double>& v, int depth, double x) {
  const double t = std::ldexp(x, depth);
  if (!(t >= 0.0)) return 0.0;
  const double last = static_cast<double>(v.size() - 1);
  if (t >= last) return t == last ? v.back() : 0.0;
  const auto i = static_cast<std::size_t>(t);
  const double frac = t - static_cast<double>(i);
  return v[i] + frac * (v[i + 1] - v[i]);
}

// phi at the integers 0..L: the eigenvector of sqrt(2) h_{2n-k} for eigenvalue 1,
// normalized to sum 1.
std::vector<double> phi_at_integers(const WaveletFamily& f) {
  const int L = f.support();
  if (f.kind == WaveletKind::Haar) return {1.0, 0.0};
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(L + 1, L + 1);
  for (int n = 0; n <= L; ++n) {
    for (int k = 0; k <= L; ++k) {
      const int idx = 2 * n - k;
      if (idx >= 0 && idx < f.taps()) M(n, k) = std::numbers::sqrt2 * f.filter[static_cast<std::size_t>(idx)];
    }
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(M);
  int best = 0;
  double best_dist = std::abs(es.eigenvalues()(0) - 1.0);
  for (int i = 1; i <= L; ++i) {
    const double dist = std::abs(es.eigenvalues()(i) - 1.0);
    if (dist < best_dist) {
      best = i;
      best_dist = dist;
    }
  }
  Eigen::VectorXd v = es.eigenvectors().col(best).real();
  const double total = v.sum();
  std::vector<double> out(static_cast<std::size_t>(L + 1));
  for (int i = 0; i <= L; ++i) out[static_cast<std::size_t>(i)] = v(i) / total;
  // endpoints vanish for the continuous families; clean the eigen-solver residue
  out.front() = std::abs(out.front()) < 1e-14 ? 0.0 : out.front();
  out.back() = std::abs(out.back()) < 1e-14 ? 0.0 : out.back();
  return out;
}

}  // namespace

double CascadeTable::phi_at(double x) const { return interp(phi, depth, x); }
double CascadeTable::psi_at(double x) const { return interp(psi, depth, x); }

CascadeTable cascade_eval(const WaveletFamily& f, int depth) {
  if (depth < 1) throw DomainError("cascade_eval: depth must be >= 1");
  if (depth > 24) throw DomainError("cascade_eval: depth above 24 is not supported");
  const int L = f.support();
  std::vector<double> prev = phi_at_integers(f);
  const std::vector<double> g = f.highpass();
  std::vector<double> psi;
  for (int d = 1; d <= depth; ++d) {
    const std::size_t n = static_cast<std::size_t>(L) * (std::size_t{1} << d) + 1;
    const std::size_t stride = std::size_t{1} << (d - 1);
    std::vector<double> cur(n, 0.0);
    const bool last = d == depth;
    if (last) psi.assign(n, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
      double a = 0.0;
      double b = 0.0;
      for (int k = 0; k < f.taps(); ++k) {
        const std::size_t off = static_cast<std::size_t>(k) * stride;
        if (off > m) break;
        const std::size_t idx = m - off;
        if (idx >= prev.size()) continue;
        a += f.filter[static_cast<std::size_t>(k)] * prev[idx];
        if (last) b += g[static_cast<std::size_t>(k)] * prev[idx];
      }
      cur[m] = std::numbers::sqrt2 * a;
      if (last) psi[m] = std::numbers::sqrt2 * b;
    }
    prev = std::move(cur);
  }
  return CascadeTable{depth, L, std::move(prev), std::move(psi)};
}

std::vector<double> synthesize(const CoefficientTree& t, const WaveletFamily& f, int G,
                               unsigned threads) {
  t.validate();
  const int J = t.top_level();
  if (G < J + 2) throw DomainError("synthesize: grid level G must be >= J + 2");
  if (G > 24) throw DomainError("synthesize: grid level above 24 is not supported");
  const int j0 = t.j0;
  const std::size_t npts = std::size_t{1} << G;
  const std::size_t mask = npts - 1;
  // Level j reads the depth (G - j0) table with stride 2^{j - j0}.
  const CascadeTable table = cascade_eval(f, G - j0);
  const std::size_t table_len = table.phi.size();

  const std::size_t cmax_base = table_len - 1;

  // Adds coef * 2^{j/2} values(2^j x - k) on the grid slice [lo, hi), wrapping periodically.
  auto add_atom = [&](double* out, std::size_t lo, std::size_t hi, const std::vector<double>& values,
                      int j, std::int64_t k, double coef) {
    const std::size_t stride = std::size_t{1} << (j - j0);
    const std::size_t origin = (static_cast<std::size_t>(k) << (G - j)) & mask;
    const std::size_t cmax = cmax_base / stride;
    const double amp = coef * std::exp2(0.5 * j);
    const auto width = static_cast<std::int64_t>(hi - lo);
    const auto period = static_cast<std::int64_t>(npts);
    const auto last = static_cast<std::int64_t>(cmax);
    // grid point lo + i reads c = base + i for every base congruent to lo - origin
    const auto first = static_cast<std::int64_t>((lo + npts - origin) & mask) - period;
    for (std::int64_t base = first; base <= last; base += period) {
      const std::int64_t c_lo = std::max<std::int64_t>(base, 0);
      const std::int64_t c_hi = std::min(base + width - 1, last);
      for (std::int64_t c = c_lo; c <= c_hi; ++c) {
        out[lo + static_cast<std::size_t>(c - base)] += amp * values[static_cast<std::size_t>(c) * stride];
      }
    }
  };

  std::vector<double> out(npts, 0.0);
  // Contiguous slices of the grid; every point sees the atoms in the same order regardless of
  // how many slices there are, so the result does not depend on the thread count.
  const std::size_t slices = std::min<std::size_t>(std::max(1u, threads), npts);
  parallel_for(slices, threads, [&](std::size_t s) {
    const std::size_t lo = npts * s / slices;
    const std::size_t hi = npts * (s + 1) / slices;
    if (lo == hi) return;
    for (std::size_t m = 0; m < t.scaling.size(); ++m) {
      if (t.scaling[m] != 0.0) add_atom(out.data(), lo, hi, table.phi, j0, static_cast<std::int64_t>(m), t.scaling[m]);
    }
    for (const Level& lv : t.levels) {
      for (const Entry& e : lv.entries) add_atom(out.data(), lo, hi, table.psi, lv.j, e.k, e.w);
    }
  });
  return out;
}

}  // namespace besovlab
