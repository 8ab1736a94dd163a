#pragma once

// Seeded pseudo-random source for the search harnesses.
//
// Generator: xoshiro256** (Blackman & Vigna), state seeded by four successive
// outputs of splitmix64. Constants:
//   splitmix64: increment 0x9E3779B97F4A7C15,
//               mix multipliers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB,
//               shifts 30, 27, 31.
//   xoshiro256**: output rotl(s1 * 5, 7) * 9; state update with t = s1 << 17
//               and rotl(s3, 45).
// Bounded integers use rejection sampling on the top of the 64-bit range so
// the distribution is exactly uniform. Rationals are numerator uniform in
// [-N, N] over denominator uniform in [1, D], then reduced.
//
// Streams for independent samples are derived as
//   Xoshiro256ss::for_sample(seed, index)
// which seeds splitmix64 with seed + (index + 1) * 0x9E3779B97F4A7C15, so a
// sample's draws do not depend on how samples are partitioned across workers.

#include "eulermagic/rational.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>

namespace eulermagic {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += kGoldenGamma);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Xoshiro256ss {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256ss(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  static Xoshiro256ss for_sample(std::uint64_t seed, std::uint64_t index) {
    return Xoshiro256ss(seed + (index + 1) * kGoldenGamma);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("below(0)");
    const std::uint64_t limit = max() - (max() % bound);
    for (;;) {
      const std::uint64_t x = (*this)();
      if (x < limit) return x % bound;
    }
  }

  /// Uniform on [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("uniform: empty range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>((*this)());
    return lo + static_cast<std::int64_t>(below(span));
  }

  Rational rational(std::int64_t num_bound, std::int64_t den_bound) {
    if (num_bound < 0 || den_bound < 1)
      throw std::invalid_argument("rational: bounds must be N >= 0, D >= 1");
    const std::int64_t num = uniform(-num_bound, num_bound);
    const std::int64_t den = uniform(1, den_bound);
    return make_rational(num, den);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{};
};

}  // namespace eulermagic
