#pragma once

#include <cstdint>
#include <random>

namespace besovlab {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

// Stream tags keep sub-seeds of different experiment kinds apart.
enum class Stream : std::uint64_t {
  tree = 1,
  lln = 2,
  evt = 3,
  regression = 4,
  poisson = 5,
  slab_test = 6,
};

// Counter-based derivation: the same (master, stream, level, replicate) always gives the same
// seed, independent of how work is split across threads.
std::uint64_t derive_seed(std::uint64_t master, Stream stream, std::uint64_t level,
                          std::uint64_t replicate) noexcept;

Rng make_rng(std::uint64_t master, Stream stream, std::uint64_t level,
             std::uint64_t replicate);

}  // namespace besovlab
