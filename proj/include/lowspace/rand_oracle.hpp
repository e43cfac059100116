#pragma once

#include <cstdint>
#include <stdexcept>

#include "lowspace/metrics.hpp"
#include "lowspace/rng.hpp"

namespace lowspace {

enum class OracleMode {
  kPrf,      // seeded pseudorandom function, exact-uniform over [1, range]
  kModular,  // h(v) = (v mod range) + 1 with mathematical (non-negative) mod
};

// Hash oracle h : Z -> [1, range].  Evaluations are charged to
// RunMetrics::step_evals when a metrics sink is supplied.
//
// kPrf draws the value by rejection over the smallest power of two >= range,
// re-mixing with an appended counter on each rejection, so every input maps to
// an exactly uniform output and distinct inputs are independent in practice.
// Negative inputs enter the mix as their two's-complement bit patterns.
class HashOracle {
 public:
  HashOracle(std::uint64_t seed, std::int64_t range, OracleMode mode)
      : seed_(seed), range_(range), mode_(mode) {
    if (range_ < 1) throw std::invalid_argument("HashOracle: range must be >= 1");
    mask_ = static_cast<std::uint64_t>(range_) - 1;
    mask_ |= mask_ >> 1;
    mask_ |= mask_ >> 2;
    mask_ |= mask_ >> 4;
    mask_ |= mask_ >> 8;
    mask_ |= mask_ >> 16;
    mask_ |= mask_ >> 32;
  }

  std::int64_t range() const { return range_; }
  OracleMode mode() const { return mode_; }

  std::int64_t eval(std::int64_t v, RunMetrics* m = nullptr) const {
    if (m) ++m->step_evals;
    if (mode_ == OracleMode::kModular) {
      std::int64_t r = v % range_;
      if (r < 0) r += range_;
      return r + 1;
    }
    std::uint64_t u = static_cast<std::uint64_t>(v);
    for (std::uint64_t ctr = 0;; ++ctr) {
      std::uint64_t w = mix64(mix64(u + 0x9e3779b97f4a7c15ULL * ctr) ^ seed_) & mask_;
      if (w < static_cast<std::uint64_t>(range_)) return static_cast<std::int64_t>(w) + 1;
    }
  }

 private:
  std::uint64_t seed_;
  std::int64_t range_;
  OracleMode mode_;
  std::uint64_t mask_;
};

}  // namespace lowspace
