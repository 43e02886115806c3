#ifndef ROWSYNTH_RNG_HPP_
#define ROWSYNTH_RNG_HPP_

#include <cstdint>
#include <random>

namespace rowsynth {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Independent generator for substream `index` of `master_seed`. Results of
/// a trial depend only on (master_seed, index), never on scheduling.
inline Rng substream(std::uint64_t master_seed, std::uint64_t index) {
  return Rng(mix64(mix64(master_seed) ^ mix64(index + 0x632BE59BD9B4E019ull)));
}

}  // namespace rowsynth

#endif  // ROWSYNTH_RNG_HPP_
