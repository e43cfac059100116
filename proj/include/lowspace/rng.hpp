#pragma once

#include <cstdint>
#include <stdexcept>

namespace lowspace {

// 64-bit finalizer with full avalanche; the core primitive behind both the
// deterministic RNG and the pseudorandom hash oracle.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent stream seed from (seed, label) so that sibling
// components (selector draws, start-vertex draws, hash oracles) never share a
// stream.  Labels are short ASCII tags hashed FNV-1a style.
inline std::uint64_t derive_subseed(std::uint64_t seed, const char* label) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const char* p = label; *p; ++p) {
    h ^= static_cast<unsigned char>(*p);
    h *= 1099511628211ULL;
  }
  return mix64(seed ^ mix64(h));
}

// Deterministic counter-based RNG (splitmix-style).  Identical sequences on
// every platform; std::mt19937 is avoided on purpose because distribution
// adapters in libstdc++ are not pinned across versions.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() { return mix64(state_++); }

  // Uniform draw from [0, bound) by rejection over the next power of two;
  // exact uniformity, no modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("SeededRng::below: bound must be positive");
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
      std::uint64_t w = next() & mask;
      if (w < bound) return w;
    }
  }

  // Uniform draw from the inclusive range [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("SeededRng::range: empty range");
    std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == ~0ULL) return static_cast<std::int64_t>(next());
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + below(span + 1));
  }

  bool coin() { return (next() & 1ULL) != 0; }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace lowspace
