#pragma once

#include <cstdint>
#include <cstddef>
#include <limits>
#include <utility>

namespace dynmincut {

/// Small-state 64-bit generator (SplitMix64). Satisfies
/// UniformRandomBitGenerator, so it plugs into <random> distributions.
/// Every sampler and treap owns one, which keeps per-object state at 8 bytes.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Uniform integer in [0, bound) by rejection; bound > 0. Platform-stable,
/// unlike std::uniform_int_distribution.
inline std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t bound) {
  const std::uint64_t limit = SplitMix64::max() - SplitMix64::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

template <class Vec>
void shuffle(Vec& items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

/// Derives a child seed from a parent seed and a stream index. Children of the
/// same parent with different indices are statistically independent streams.
inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
  SplitMix64 mix(parent ^ (0xD1B54A32D192ED03ULL * (index + 1)));
  mix();
  return mix();
}

inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t a, std::uint64_t b) {
  return derive_seed(derive_seed(parent, a), b);
}

}  // namespace dynmincut
