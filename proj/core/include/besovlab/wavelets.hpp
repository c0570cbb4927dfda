#pragma once

#include <string>
#include <vector>

#include "besovlab/tree.hpp"

namespace besovlab {

enum class WaveletKind { Haar, Daubechies };

struct WaveletFamily {
  WaveletKind kind = WaveletKind::Haar;
  std::vector<double> filter;  // low-pass h_k, sum = sqrt(2)
  int vanishing_moments = 1;   // r
  double holder = 0.0;         // rho, literature value; metadata only

  int taps() const { return static_cast<int>(filter.size()); }
  int support() const { return taps() - 1; }  // phi and psi live on [0, support]
  std::string name() const;
  // high-pass g_k = (-1)^k h_{N-1-k}
  std::vector<double> highpass() const;
};

WaveletFamily haar();
WaveletFamily daubechies(int taps);  // 4, 6 or 8
WaveletFamily wavelet_by_name(const std::string& name);  // "haar", "db4", "db6", "db8"

// phi and psi sampled at x = m 2^{-depth}, m = 0 .. support * 2^depth.
struct CascadeTable {
  int depth = 0;
  int support = 1;
  std::vector<double> phi;
  std::vector<double> psi;

  double step() const;
  // Piecewise-linear interpolation, zero outside [0, support].
  double phi_at(double x) const;
  double psi_at(double x) const;
};

CascadeTable cascade_eval(const WaveletFamily& f, int depth);

// f(x_i) at x_i = i 2^{-G}, i < 2^G, periodized on [0, 1).
std::vector<double> synthesize(const CoefficientTree& t, const WaveletFamily& f, int G,
                               unsigned threads = 1);

}  // namespace besovlab
