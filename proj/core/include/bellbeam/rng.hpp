// Copyright bellbeam contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace bellbeam {

/// splitmix64 finalizer (Steele/Lea/Flood; Vigna's fixed-increment variant).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Counter-based splittable generator. Every (seed) value opens an
/// independent stream, so per-trial generators can be constructed in any
/// order on any thread and still produce identical sequences.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~std::uint64_t{0}; }

  constexpr result_type operator()() noexcept {
    return mix64(state_ += 0x9E3779B97F4A7C15ull);
  }

 private:
  std::uint64_t state_;
};

/// Seed for substream `index` of the stream keyed by `key`. Nest calls to
/// derive hierarchies: substream_seed(substream_seed(master, tag), i).
constexpr std::uint64_t substream_seed(std::uint64_t key,
                                       std::uint64_t index) noexcept {
  return mix64(key + 0x9E3779B97F4A7C15ull * (index + 1));
}

// Stream tags for the fixed substream hierarchy rooted at the master seed.
inline constexpr std::uint64_t kTrialStream = 1;
inline constexpr std::uint64_t kSweepStream = 2;
inline constexpr std::uint64_t kBootstrapStream = 3;

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_01(SplitMix64& g) noexcept {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller (cosine branch; always consumes two
/// uniforms so the draw count per call is fixed).
inline double standard_normal(SplitMix64& g) noexcept {
  double u1 = uniform_01(g);
  const double u2 = uniform_01(g);
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace bellbeam
