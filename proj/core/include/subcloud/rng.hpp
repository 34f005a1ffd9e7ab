/* Copyright 2026 The Subcloud Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace subcloud {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A draw is a
/// pure function of (key, counter), so random streams can be indexed directly
/// by point index without advancing any shared state.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Block generate(Block ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      ctr = single_round(ctr, key);
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static constexpr Block single_round(Block ctr, Key key) {
    const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
};

/// Maps two 32-bit words onto a double in [0, 1) with 53 random bits.
constexpr double to_unit_double(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = (std::uint64_t{hi} << 32 | lo) >> 11;
  return static_cast<double>(bits) * 0x1.0p-53;
}

/// Stream of uniforms addressed by (seed, stream id, index). Two streams with
/// different ids under one seed never share counters.
class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  /// Four raw words for counter `index`.
  constexpr Philox4x32::Block block(std::uint64_t index) const {
    return Philox4x32::generate(
        {static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
         static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
        {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
  }

  /// Uniform in [0, 1) for counter `index`.
  constexpr double uniform(std::uint64_t index) const {
    const auto b = block(index);
    return to_unit_double(b[0], b[1]);
  }

  constexpr std::uint64_t seed() const { return seed_; }
  constexpr std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

/// Sequential cursor over a CounterRng, for code that consumes draws in order.
/// Satisfies UniformRandomBitGenerator so it can drive std:: algorithms.
class RngCursor {
 public:
  using result_type = std::uint64_t;

  constexpr RngCursor(std::uint64_t seed, std::uint64_t stream) : rng_(seed, stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    const auto b = rng_.block(next_++);
    return std::uint64_t{b[0]} << 32 | b[1];
  }

  double uniform() { return rng_.uniform(next_++); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n), n > 0, without modulo bias.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = max() - max() % n;
    std::uint64_t r;
    do {
      r = (*this)();
    } while (r >= limit);
    return r % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Standard normal via Box-Muller on two fresh draws.
  double normal() {
    const auto b = rng_.block(next_++);
    const double u1 = 1.0 - to_unit_double(b[0], b[1]);
    const double u2 = to_unit_double(b[2], b[3]);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

 private:
  CounterRng rng_;
  std::uint64_t next_ = 0;
};

/// Stream ids reserved per consumer so that crop draws keyed by center_id never
/// collide with draws made elsewhere under the same seed.
namespace streams {
inline constexpr std::uint64_t kCenterSelection = 0xC000'0000'0000'0001ull;
inline constexpr std::uint64_t kAugment = 0xC000'0000'0000'0002ull;
inline constexpr std::uint64_t kSynth = 0xC000'0000'0000'0003ull;
inline constexpr std::uint64_t kCalibrationSamples = 0xC000'0000'0000'0004ull;
inline constexpr std::uint64_t kMockPredictor = 0xC000'0000'0000'0005ull;
}  // namespace streams

}  // namespace subcloud
