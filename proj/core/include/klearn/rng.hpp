#pragma once

#include <cstdint>
#include <vector>

#include "klearn/errors.hpp"

namespace klearn {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// Counter-based generator: output i of stream `seed` is mix64(seed + (i+1)*gamma),
/// so (seed, draw-index) alone determines every value. Platform independent.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  static std::uint64_t at(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(seed + (index + 1) * kGoldenGamma);
  }

  std::uint64_t next_u64() noexcept { return at(seed_, counter_++); }

  /// Uniform in [0, 1), 53 bits of precision.
  double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in {0, ..., bound-1} without modulo bias.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw domain_error("next_below: bound must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r = next_u64();
    while (r >= limit) r = next_u64();
    return r % bound;
  }

  bool next_bernoulli(double p) noexcept { return next_double() < p; }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Stable hash of (seed, parts...) used to split one master seed into
/// independent sub-streams (per trial, per replica, per retry).
template <class... Parts>
std::uint64_t derive_seed(std::uint64_t seed, Parts... parts) {
  std::uint64_t h = mix64(seed + kGoldenGamma);
  ((h = mix64(h + kGoldenGamma + static_cast<std::uint64_t>(parts))), ...);
  return h;
}

/// Uniform random permutation of {0, ..., n-1} (Fisher-Yates).
inline std::vector<int> random_permutation(int n, CounterRng& rng) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  return perm;
}

}  // namespace klearn
