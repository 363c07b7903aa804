#pragma once

#include <cstdint>

// SplitMix64: a splittable 64-bit generator with a one-word state. Every
// randomized component in this library draws from it through the helpers
// below, so runs are bit-reproducible for a given seed regardless of the
// platform's standard-library distributions.

namespace anita {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1), 53 bits of precision
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in {0, ..., bound-1}, unbiased (Lemire with rejection)
  std::uint64_t next_below(std::uint64_t bound) {
    std::uint64_t threshold = (-bound) % bound;
    for (;;) {
      unsigned __int128 m = (unsigned __int128)next_u64() * bound;
      if ((std::uint64_t)m >= threshold) return (std::uint64_t)(m >> 64);
    }
  }

  // fresh generator decorrelated from this stream
  SplitMix64 split() { return SplitMix64(next_u64()); }

 private:
  std::uint64_t state_;
};

}  // namespace anita
