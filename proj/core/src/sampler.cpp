#include "besovlab/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "besovlab/error.hpp"
#include "besovlab/parallel.hpp"

namespace besovlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Above this probability a position-by-position scan is cheaper than rejection.
constexpr double dense_threshold = 0.125;

}  // namespace

int PriorSpec::top_level() const {
  return std::visit(overloaded{
                        [](const InfiniteMode& m) { return m.J; },
                        [](const RegressionMode& m) {
                          if (m.n < 2) throw DomainError("regression mode: n must be >= 2");
                          return static_cast<int>(std::bit_width(m.n)) - 2;
                        },
                    },
                    mode);
}

double PriorSpec::coefficient_factor() const {
  if (const auto* r = std::get_if<RegressionMode>(&mode)) {
    return 1.0 / std::sqrt(static_cast<double>(r->n));
  }
  return 1.0;
}

Level sample_level(const PriorSpec& spec, int j, Rng& rng) {
  if (j < 0 || j > 40) throw DomainError("sample_level: level out of range");
  Level lv{j, {}};
  const double prob = spec.pi.prob_at(j);
  if (prob <= 0.0) return lv;
  const std::int64_t width = std::int64_t{1} << j;
  std::vector<std::int64_t> pos;
  if (prob >= 1.0) {
    pos.resize(static_cast<std::size_t>(width));
    for (std::int64_t k = 0; k < width; ++k) pos[static_cast<std::size_t>(k)] = k;
  } else if (prob >= dense_threshold) {
    std::bernoulli_distribution keep(prob);
    pos.reserve(static_cast<std::size_t>(prob * static_cast<double>(width) * 1.1) + 16);
    for (std::int64_t k = 0; k < width; ++k) {
      if (keep(rng)) pos.push_back(k);
    }
  } else {
    std::binomial_distribution<std::int64_t> count_dist(width, prob);
    const auto count = static_cast<std::size_t>(count_dist(rng));
    std::uniform_int_distribution<std::int64_t> where(0, width - 1);
    pos.reserve(count);
    while (pos.size() < count) {
      const std::size_t missing = count - pos.size();
      for (std::size_t i = 0; i < missing; ++i) pos.push_back(where(rng));
      std::sort(pos.begin(), pos.end());
      pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
    }
  }
  const double scale = spec.tau.value_at(j) * spec.coefficient_factor();
  SlabSampler slab(spec.slab);
  lv.entries.reserve(pos.size());
  for (std::int64_t k : pos) {
    double xi = slab(rng);
    while (xi == 0.0) xi = slab(rng);
    const double w = scale * xi;
    if (w != 0.0) lv.entries.push_back(Entry{k, w});  // underflow leaves an implicit zero
  }
  return lv;
}

CoefficientTree sample_tree(const PriorSpec& spec, int j0, std::vector<double> scaling,
                            std::uint64_t seed, std::uint64_t replicate, unsigned threads) {
  spec.tau.validate();
  spec.pi.validate();
  validate(spec.slab);
  if (j0 < 0) throw DomainError("sample_tree: j0 must be >= 0");
  const int J = spec.top_level();
  if (J < j0) {
    if (std::holds_alternative<RegressionMode>(spec.mode)) {
      throw DomainError("sample_tree: regression mode needs n >= 2^(j0+1)");
    }
    throw DomainError("sample_tree: truncation level J must be >= j0");
  }
  if (J > 30) throw DomainError("sample_tree: truncation level above 30 is not supported");
  CoefficientTree t = make_empty_tree(j0, J, std::move(scaling));
  parallel_for(t.levels.size(), threads, [&](std::size_t i) {
    const int j = j0 + static_cast<int>(i);
    Rng rng = make_rng(seed, Stream::tree, static_cast<std::uint64_t>(j), replicate);
    t.levels[i] = sample_level(spec, j, rng);
  });
  return t;
}

}  // namespace besovlab
