#pragma once

#include <cmath>
#include <cstdint>

namespace vorcov {

// SplitMix64 finalizer. Bijective 64-bit mixer used for seeding and for
// deriving substream keys; stable across platforms by construction.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Key for an independent substream identified by (master seed, index, purpose).
// Realization i gets the same stream whether run serially or on any thread.
inline std::uint64_t substream_key(std::uint64_t master, std::uint64_t index,
                                   std::uint64_t purpose) {
  std::uint64_t h = mix64(master ^ 0x243f6a8885a308d3ULL);
  h = mix64(h ^ index ^ 0x13198a2e03707344ULL);
  h = mix64(h ^ purpose ^ 0xa4093822299f31d0ULL);
  return h;
}

// xoshiro256++ with SplitMix64 state expansion.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) {
      sm += 0x9e3779b97f4a7c15ULL;
      word = mix64(sm);
    }
  }

  static Rng substream(std::uint64_t master, std::uint64_t index,
                       std::uint64_t purpose) {
    return Rng(substream_key(master, index, purpose));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Exponential with the given rate (mean 1/rate).
  double exponential(double rate) { return -std::log1p(-uniform01()) / rate; }

  // Poisson counts by the product method, chunked so e^-mean stays
  // representable for large means.
  std::uint64_t poisson(double mean) {
    std::uint64_t total = 0;
    while (mean > 500.0) {
      total += poisson_small(500.0);
      mean -= 500.0;
    }
    return total + poisson_small(mean);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t poisson_small(double mean) {
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform01();
    } while (p > limit);
    return k - 1;
  }

  std::uint64_t state_[4];
};

}  // namespace vorcov
