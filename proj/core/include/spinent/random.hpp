#pragma once

#include <cstdint>
#include <random>

namespace spinent {

// SplitMix64 finalizer. Part of the output contract: changing it changes every sweep.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seed of the stream used by trial `trial` (1-based) at spin size `two_s`.
// The exponent n is deliberately not part of the key: all n share draws at a
// given S, so the n-curves coincide exactly where their x_max coincide (S = 1).
constexpr std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t two_s,
                                   std::uint64_t trial) {
  constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  std::uint64_t h = mix64(master_seed + kGolden);
  h = mix64(h ^ (two_s + kGolden));
  h = mix64(h ^ (trial + 2 * kGolden));
  return h;
}

// Deterministic stream: std::mt19937_64 (sequence fixed by the standard) with
// uniform variates built from the top 53 bits, so output does not depend on the
// standard library's distribution implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, upper].
  double uniform_open_closed(double upper) { return upper * (1.0 - uniform()); }

  // Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(static_cast<double>(span) * uniform());
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace spinent
