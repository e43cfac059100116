#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lowspace/list_disjointness.hpp"
#include "lowspace/lists.hpp"
#include "lowspace/metrics.hpp"
#include "lowspace/rand_oracle.hpp"
#include "lowspace/rng.hpp"

namespace lowspace {

// k lists of n integers each plus a target; a solution picks one index per
// list so that the chosen entries sum to the target.  `m` records the
// sampling domain [1, m] of randomly generated instances; the solvers consult
// it only to decide whether the seedless modular hash applies (m a positive
// multiple of n).  m = 0 means "domain unknown".
struct KSumInstance {
  int k = 2;
  std::vector<std::vector<std::int64_t>> lists;
  std::int64_t t = 0;
  std::int64_t m = 0;
};

struct KSumOptions {
  // Total step budget; 0 derives (inner 2-Sum budget) x (number of outer
  // tuples).  Steps are hash evaluations plus list accesses.
  std::uint64_t budget = 0;
  // Inner 2-Sum budget is ceil(c_inner * n * sqrt(p_bound)).  Deliberately
  // log-free: wrong outer tuples burn their whole inner budget, so any extra
  // log factor here would show up in the measured k > 2 scaling exponent.
  double c_inner = 400.0;
  double c_p = 2.0;          // pseudo-solution bound p_bound = ceil(c_p * n)
  std::uint64_t seed = 1;
};

struct KSumMitmOptions {
  std::int64_t s = 1;              // space knob forwarded to the collision search
  double c_p = 2.0;                // p_bound = ceil(c_p * n^(k/2))
  std::uint64_t step_budget = 0;   // 0 = collision-search default for the half lists
  OracleMode oracle_mode = OracleMode::kPrf;
  std::uint64_t seed = 1;
};

struct KSumResult {
  bool found = false;
  std::vector<std::int64_t> indices;  // 1-based, one per list (valid iff found)
  bool fallback_prf = false;          // modular-hash precondition failed; PRF used
  std::int64_t tuples_tried = 0;      // outer Cartesian tuples visited
  RunMetrics metrics;
};

// Exact uniformity of the seedless modular hash over one period: when n
// divides m and v ranges over [1, m], every bucket of (v mod n) + 1 must be
// hit exactly m/n times.  Verified by explicit counting, not by arithmetic
// argument; the solver runs this as a tripwire before trusting modular walks.
inline bool modular_hash_exactly_uniform(std::int64_t n, std::int64_t m) {
  if (n < 1 || m < n || m % n != 0) return false;
  HashOracle h(0, n, OracleMode::kModular);
  std::vector<std::int64_t> cnt(static_cast<std::size_t>(n), 0);
  for (std::int64_t v = 1; v <= m; ++v) ++cnt[static_cast<std::size_t>(h.eval(v) - 1)];
  const std::int64_t want = m / n;
  for (std::int64_t c : cnt) {
    if (c != want) return false;
  }
  return true;
}

namespace detail {

inline std::int64_t ksum_validate(const KSumInstance& inst) {
  if (inst.k < 2) throw std::invalid_argument("ksum: k must be >= 2");
  if (static_cast<std::int64_t>(inst.lists.size()) != inst.k) {
    throw std::invalid_argument("ksum: expected exactly k lists");
  }
  const std::int64_t n = static_cast<std::int64_t>(inst.lists[0].size());
  if (n < 1) throw std::invalid_argument("ksum: lists must be non-empty");
  constexpr std::int64_t kEntryCap = std::int64_t{1} << 56;
  for (const auto& w : inst.lists) {
    if (static_cast<std::int64_t>(w.size()) != n) {
      throw std::invalid_argument("ksum: all lists must share one length");
    }
    for (std::int64_t v : w) {
      if (v < -kEntryCap || v > kEntryCap) {
        throw std::invalid_argument("ksum: entries must fit in +-2^56");
      }
    }
  }
  return n;
}

// Sum of per-list minima and maxima: the attainable range of any selection.
inline std::pair<std::int64_t, std::int64_t> ksum_attainable(const KSumInstance& inst) {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  for (const auto& w : inst.lists) {
    const auto [mn, mx] = std::minmax_element(w.begin(), w.end());
    lo += *mn;
    hi += *mx;
  }
  return {lo, hi};
}

inline void ksum_verify(const KSumInstance& inst, const std::vector<std::int64_t>& idx) {
  __int128 sum = 0;
  for (std::size_t j = 0; j < idx.size(); ++j) {
    if (idx[j] < 1 || idx[j] > static_cast<std::int64_t>(inst.lists[j].size())) {
      throw std::logic_error("ksum: witness index out of range");
    }
    sum += inst.lists[j][static_cast<std::size_t>(idx[j] - 1)];
  }
  if (sum != static_cast<__int128>(inst.t)) {
    throw std::logic_error("ksum: witness failed re-verification");
  }
}

}  // namespace detail

// Low-space solver for random k-Sum.  The two leading lists form a 2-Sum
// instance (x = w^1, y = t' - w^2 entrywise) handled by the collision search
// with one walk seed and a Theta(n) pseudo-solution bound.  When the sampling
// domain m is a positive multiple of n, the seedless modular hash
// (v mod n) + 1 drives the walks; otherwise the solver falls back to the
// seeded PRF oracle and flags the fallback in the result and in
// metrics.retries.  For k > 2 an odometer sweeps the Cartesian product of the
// remaining k - 2 lists, shifting the 2-Sum target per tuple; tuples whose
// residual target is outside the attainable two-list range are skipped in
// O(1).  Working space is the odometer plus the collision search's O(1)
// words, independent of n.  Any returned witness is re-verified against the
// original lists; NO within the budget is one-sided evidence only.
inline KSumResult ksum_random_solve(const KSumInstance& inst, const KSumOptions& opt = {}) {
  KSumResult res;
  RunMetrics& m = res.metrics;
  const std::int64_t n = detail::ksum_validate(inst);

  const auto [att_lo, att_hi] = detail::ksum_attainable(inst);
  if (inst.t < att_lo || inst.t > att_hi) return res;  // unattainable target: NO

  const bool modular = inst.m >= 1 && inst.m % n == 0;
  res.fallback_prf = !modular;
  if (!modular) ++m.retries;
  if (modular && inst.m <= (std::int64_t{1} << 20) &&
      !modular_hash_exactly_uniform(n, inst.m)) {
    throw std::logic_error("ksum: modular hash failed the one-period uniformity check");
  }
  const OracleMode mode = modular ? OracleMode::kModular : OracleMode::kPrf;

  const std::int64_t p_bound =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(
                                    opt.c_p * static_cast<double>(n))));
  const std::uint64_t inner_default = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(std::ceil(
             opt.c_inner * static_cast<double>(n) *
             std::sqrt(static_cast<double>(p_bound)))));

  const std::int64_t outer = inst.k - 2;
  std::uint64_t total_budget = opt.budget;
  if (total_budget == 0) {
    const double tuples_total =
        std::pow(static_cast<double>(n), static_cast<double>(outer));
    const double d =
        static_cast<double>(inner_default) * tuples_total * 1.05 + 4096.0;
    total_budget = d > 9.0e18 ? std::numeric_limits<std::uint64_t>::max()
                              : static_cast<std::uint64_t>(d);
  }

  const std::vector<std::int64_t>& w1 = inst.lists[0];
  const std::vector<std::int64_t>& w2 = inst.lists[1];
  const auto [mn1, mx1] = std::minmax_element(w1.begin(), w1.end());
  const auto [mn2, mx2] = std::minmax_element(w2.begin(), w2.end());
  const std::int64_t pair_lo = *mn1 + *mn2;
  const std::int64_t pair_hi = *mx1 + *mx2;

  const IntegerList x(
      n,
      [&w1](std::int64_t i) { return w1[static_cast<std::size_t>(i - 1)]; },
      false);

  // Odometer digits plus cover for the inner search's transient scan table,
  // which is live while the odometer words are held.
  TrackedAlloc guard(&m, outer + 16);

  const std::uint64_t inner_seed_base = derive_subseed(opt.seed, "ksum-inner");
  std::vector<std::int64_t> digit(static_cast<std::size_t>(outer), 1);
  std::uint64_t tuple_no = 0;
  for (;;) {
    if (m.steps() >= total_budget) {
      ++m.aborts;
      break;
    }
    ++tuple_no;
    ++res.tuples_tried;
    std::int64_t tp = inst.t;
    for (std::int64_t j = 0; j < outer; ++j) {
      tp -= inst.lists[static_cast<std::size_t>(j + 2)]
                      [static_cast<std::size_t>(digit[static_cast<std::size_t>(j)] - 1)];
    }
    if (tp >= pair_lo && tp <= pair_hi) {
      const IntegerList y(
          n,
          [&w2, tp](std::int64_t i) {
            return tp - w2[static_cast<std::size_t>(i - 1)];
          },
          false);
      LdOptions lopt;
      lopt.s = 1;
      lopt.p_bound = p_bound;
      lopt.step_budget = std::min<std::uint64_t>(inner_default, total_budget - m.steps());
      lopt.oracle_mode = mode;
      lopt.seed = mix64(inner_seed_base ^ (0x9e3779b97f4a7c15ULL * tuple_no));
      LdResult ld = ld_search(x, y, lopt);
      const bool hit = ld.outcome == LdOutcome::kFound;
      const std::int64_t li = ld.i;
      const std::int64_t lj = ld.j;
      m.merge(ld.metrics);
      if (hit) {
        res.indices.assign(static_cast<std::size_t>(inst.k), 0);
        res.indices[0] = li;
        res.indices[1] = lj;
        for (std::int64_t j = 0; j < outer; ++j) {
          res.indices[static_cast<std::size_t>(j + 2)] = digit[static_cast<std::size_t>(j)];
        }
        detail::ksum_verify(inst, res.indices);
        res.found = true;
        return res;
      }
    }
    std::int64_t pos = 0;
    while (pos < outer) {
      auto& d = digit[static_cast<std::size_t>(pos)];
      if (d < n) {
        ++d;
        break;
      }
      d = 1;
      ++pos;
    }
    if (pos == outer) break;  // swept every tuple once
  }
  return res;
}

// Meet-in-the-middle variant for even k.  Folds the first k/2 lists into one
// implicit list of all n^(k/2) selection sums (mixed-radix index encoding,
// least-significant digit indexes the first list) and the last k/2 lists into
// the complementary target-minus-sum list, then runs the collision search
// with the caller's space parameter and pseudo-solution bound
// ceil(c_p * n^(k/2)).  Working space is the collision search's O(s) words;
// the half lists are never materialized.  Witness indices are decoded from
// the mixed-radix positions and re-verified against the original lists.
inline KSumResult ksum_mitm_solve(const KSumInstance& inst, const KSumMitmOptions& opt = {}) {
  KSumResult res;
  const std::int64_t n = detail::ksum_validate(inst);
  if (inst.k % 2 != 0) {
    throw std::invalid_argument("ksum_mitm_solve: k must be even");
  }

  const auto [att_lo, att_hi] = detail::ksum_attainable(inst);
  if (inst.t < att_lo || inst.t > att_hi) return res;  // unattainable target: NO

  const std::int64_t half = inst.k / 2;
  const std::int64_t kListCap = std::int64_t{1} << 31;
  std::int64_t big_n = 1;
  for (std::int64_t j = 0; j < half; ++j) {
    if (big_n > kListCap / n) {
      throw std::invalid_argument("ksum_mitm_solve: n^(k/2) exceeds the supported list size");
    }
    big_n *= n;
  }

  const auto* lists = &inst.lists;
  const std::int64_t t = inst.t;
  const IntegerList x(
      big_n,
      [lists, n, half](std::int64_t i) {
        std::int64_t rem = i - 1;
        std::int64_t sum = 0;
        for (std::int64_t j = 0; j < half; ++j) {
          sum += (*lists)[static_cast<std::size_t>(j)][static_cast<std::size_t>(rem % n)];
          rem /= n;
        }
        return sum;
      },
      true);
  const IntegerList y(
      big_n,
      [lists, n, half, t](std::int64_t i) {
        std::int64_t rem = i - 1;
        std::int64_t sum = 0;
        for (std::int64_t j = 0; j < half; ++j) {
          sum +=
              (*lists)[static_cast<std::size_t>(half + j)][static_cast<std::size_t>(rem % n)];
          rem /= n;
        }
        return t - sum;
      },
      true);

  LdOptions lopt;
  lopt.s = opt.s;
  lopt.p_bound = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(opt.c_p * static_cast<double>(big_n))));
  lopt.step_budget = opt.step_budget;
  lopt.oracle_mode = opt.oracle_mode;
  lopt.seed = derive_subseed(opt.seed, "ksum-mitm");
  LdResult ld = ld_search(x, y, lopt);
  res.metrics.merge(ld.metrics);
  res.tuples_tried = 1;
  if (ld.outcome != LdOutcome::kFound) return res;

  res.indices.assign(static_cast<std::size_t>(inst.k), 0);
  std::int64_t rem = ld.i - 1;
  for (std::int64_t j = 0; j < half; ++j) {
    res.indices[static_cast<std::size_t>(j)] = rem % n + 1;
    rem /= n;
  }
  rem = ld.j - 1;
  for (std::int64_t j = 0; j < half; ++j) {
    res.indices[static_cast<std::size_t>(half + j)] = rem % n + 1;
    rem /= n;
  }
  detail::ksum_verify(inst, res.indices);
  res.found = true;
  return res;
}

}  // namespace lowspace
