#include "besovlab/random.hpp"

namespace besovlab {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, Stream stream, std::uint64_t level,
                          std::uint64_t replicate) noexcept {
  std::uint64_t state = master;
  std::uint64_t h = splitmix64(state);
  for (std::uint64_t key : {static_cast<std::uint64_t>(stream), level, replicate}) {
    state = h ^ key;
    h = splitmix64(state);
  }
  return h;
}

Rng make_rng(std::uint64_t master, Stream stream, std::uint64_t level,
             std::uint64_t replicate) {
  std::uint64_t state = derive_seed(master, stream, level, replicate);
  std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state))};
  return Rng(seq);
}

}  // namespace besovlab
