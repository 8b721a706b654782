/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace oodseg {

// Counter-based generator built on the SplitMix64 output function:
//   value(key, i) = mix64(key + (i + 1) * 0x9E3779B97F4A7C15)
//   mix64(z): z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//             z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//             return z ^ (z >> 31)
// Every draw is a pure function of (key, counter), so streams are
// reproducible across platforms and independent of thread scheduling.
class CounterRng {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  static constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Key of sub-stream `stream` under `seed`.
  static constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) noexcept {
    return mix64(seed ^ mix64(stream * kGamma + 0x632BE59BD9B4E019ULL));
  }

  static constexpr std::uint64_t at(std::uint64_t key, std::uint64_t counter) noexcept {
    return mix64(key + (counter + 1) * kGamma);
  }

  // Uniform in [0,1) with 53 random bits.
  static double uniform_at(std::uint64_t key, std::uint64_t counter) noexcept {
    return static_cast<double>(at(key, counter) >> 11) * 0x1.0p-53;
  }

  // Standard normal from counters 2i and 2i+1 (Box-Muller, cosine branch).
  static double normal_at(std::uint64_t key, std::uint64_t index) noexcept {
    const double u1 = 1.0 - uniform_at(key, 2 * index);  // (0,1]
    const double u2 = uniform_at(key, 2 * index + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  std::uint64_t next() noexcept { return at(key_, counter_++); }
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // High 64 bits of the 128-bit product a * b.
  static constexpr std::uint64_t mulhi64(std::uint64_t a, std::uint64_t b) noexcept {
    const std::uint64_t a_lo = a & 0xFFFFFFFFULL, a_hi = a >> 32;
    const std::uint64_t b_lo = b & 0xFFFFFFFFULL, b_hi = b >> 32;
    const std::uint64_t lo_lo = a_lo * b_lo;
    const std::uint64_t hi_lo = a_hi * b_lo;
    const std::uint64_t lo_hi = a_lo * b_hi;
    const std::uint64_t cross = (lo_lo >> 32) + (hi_lo & 0xFFFFFFFFULL) + lo_hi;
    return a_hi * b_hi + (hi_lo >> 32) + (cross >> 32);
  }

  // Uniform integer in [lo, hi] by multiply-shift of a 64-bit draw.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) noexcept {
    const std::uint64_t span = hi - lo + 1;
    if (span == 0) return next();  // full 64-bit range
    return lo + mulhi64(next(), span);
  }

  double normal() noexcept {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace oodseg
