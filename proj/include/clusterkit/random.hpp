#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace clusterkit {

namespace detail {

inline constexpr std::uint64_t rotl64(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

/// SplitMix64 step: advances the state and returns the next output.
/// Used for seeding the main generator; one 64-bit seed expands into
/// as many state words as needed.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// xoroshiro128+ generator (rotation constants 55, 14, 36).
///
/// The returned value is the sum of the two state words *before* the
/// state transition, so the first output of state (a, b) is a + b.
class RngState {
 public:
  /// Seeds both state words from SplitMix64. The all-zero state is
  /// invalid for xoroshiro and is rejected by redrawing.
  explicit RngState(std::uint64_t seed) {
    std::uint64_t sm = seed;
    do {
      s0_ = splitmix64_next(sm);
      s1_ = splitmix64_next(sm);
    } while (s0_ == 0 && s1_ == 0);
  }

  /// Constructs from raw state words. Throws on the all-zero state.
  RngState(std::uint64_t s0, std::uint64_t s1) : s0_(s0), s1_(s1) {
    if (s0 == 0 && s1 == 0) {
      throw std::invalid_argument("RngState: all-zero state is invalid");
    }
  }

  std::uint64_t next() {
    const std::uint64_t s0 = s0_;
    std::uint64_t s1 = s1_;
    const std::uint64_t result = s0 + s1;
    s1 ^= s0;
    s0_ = detail::rotl64(s0, 55) ^ s1 ^ (s1 << 14);
    s1_ = detail::rotl64(s1, 36);
    return result;
  }

  /// Uniform double in [0, 1), 53 bits of precision.
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  std::uint64_t state0() const { return s0_; }
  std::uint64_t state1() const { return s1_; }

 private:
  std::uint64_t s0_;
  std::uint64_t s1_;
};

/// Unbiased integer in [0, bound) via rejection sampling on the high
/// bits of the generator output. Throws if bound is zero.
inline std::uint64_t rng_index(RngState& state, std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("rng_index: bound must be positive");
  }
  if (bound == 1) {
    return 0;
  }
  // Smallest bit count covering bound-1; at most half of the draws
  // from that many high bits are rejected.
  int bits = 0;
  for (std::uint64_t v = bound - 1; v != 0; v >>= 1) {
    ++bits;
  }
  for (;;) {
    const std::uint64_t r = state.next() >> (64 - bits);
    if (r < bound) {
      return r;
    }
  }
}

/// Samples m distinct indices from [0, n) by partial Fisher-Yates.
/// The result order is the shuffle order, so prefixes of a larger
/// sample drawn from the same state agree with a smaller sample.
inline std::vector<std::size_t> sample_k(RngState& state, std::size_t n,
                                         std::size_t m) {
  if (m > n) {
    throw std::invalid_argument("sample_k: sample size exceeds population");
  }
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) {
    pool[i] = i;
  }
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(
                                  rng_index(state, static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(m);
  return pool;
}

}  // namespace clusterkit
