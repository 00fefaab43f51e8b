#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stonework {

// Deterministic 64-bit generator (splitmix64).  Standard-library engines
// would do, but the distributions on top of them are not pinned bit for bit
// across implementations, and reports must reproduce byte-identically from a
// seed.  Everything here is fully specified.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform value in [0, bound), bound >= 1.  Lemire rejection sampling.
  uint64_t below(uint64_t bound) {
    while (true) {
      uint64_t x = next();
      __uint128_t m = static_cast<__uint128_t>(x) * bound;
      uint64_t lo = static_cast<uint64_t>(m);
      if (lo >= bound) return static_cast<uint64_t>(m >> 64);
      uint64_t threshold = (0 - bound) % bound;
      if (lo >= threshold) return static_cast<uint64_t>(m >> 64);
    }
  }

  /// Integer in [lo, hi] inclusive.
  int64_t range(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (next() & 1) != 0; }

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Fisher-Yates shuffle of 0..n-1.
  std::vector<uint32_t> permutation(uint32_t n) {
    std::vector<uint32_t> p(n);
    for (uint32_t i = 0; i < n; ++i) p[i] = i;
    for (uint32_t i = n; i > 1; --i) {
      uint32_t j = static_cast<uint32_t>(below(i));
      std::swap(p[i - 1], p[j]);
    }
    return p;
  }

  /// Independent substream derived from a label, so that the order in which
  /// suites run does not perturb each other's draws.
  Rng fork(const std::string& label) const {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : label) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return Rng(state_ ^ h ^ 0x632be59bd9b4e019ULL);
  }

 private:
  uint64_t state_;
};

}  // namespace stonework
