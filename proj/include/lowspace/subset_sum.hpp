#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lowspace/list_disjointness.hpp"
#include "lowspace/lists.hpp"
#include "lowspace/metrics.hpp"
#include "lowspace/rand_oracle.hpp"
#include "lowspace/rng.hpp"

namespace lowspace {

// ---------------------------------------------------------------------------
// Modular arithmetic over 64-bit operands (products via 128-bit intermediates).
// ---------------------------------------------------------------------------

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(
      static_cast<unsigned __int128>(static_cast<std::uint64_t>(a)) *
      static_cast<std::uint64_t>(b) % static_cast<std::uint64_t>(m));
}

inline std::int64_t powmod(std::int64_t base, std::uint64_t exp, std::int64_t m) {
  std::int64_t r = 1 % m;
  std::int64_t b = ((base % m) + m) % m;
  while (exp != 0) {
    if (exp & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    exp >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin; the fixed base set is sound for all 64-bit inputs.
inline bool is_prime(std::int64_t v) {
  if (v < 2) return false;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (v == p) return true;
    if (v % p == 0) return false;
  }
  std::int64_t d = v - 1;
  int s = std::countr_zero(static_cast<std::uint64_t>(d));
  d >>= s;
  for (std::int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::int64_t x = powmod(a, static_cast<std::uint64_t>(d), v);
    if (x == 1 || x == v - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, v);
      if (x == v - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

inline std::int64_t random_prime_between(std::int64_t lo, std::int64_t hi, SeededRng& rng) {
  if (lo > hi) throw std::invalid_argument("random_prime_between: empty range");
  if (hi >= 2) lo = std::max<std::int64_t>(lo, 2);
  for (int tries = 0; tries < 40000; ++tries) {
    std::int64_t c = rng.range(lo, hi);
    if (c > 2 && c % 2 == 0) ++c;
    if (c <= hi && is_prime(c)) return c;
  }
  // Dense-prime fallback: scan upward from a random point, wrapping once.
  std::int64_t c = rng.range(lo, hi);
  for (std::int64_t k = 0; k <= hi - lo; ++k) {
    std::int64_t v = lo + (c - lo + k) % (hi - lo + 1);
    if (is_prime(v)) return v;
  }
  throw std::runtime_error("random_prime_between: no prime in range");
}

// Prime field F_q with a fixed element of multiplicative order exactly mu
// (mu must be prime, q = k*mu + 1 > q_floor chosen prime).
struct RootField {
  std::int64_t mu = 0;
  std::int64_t q = 0;
  std::int64_t omega = 0;   // order-mu element
  std::int64_t mu_inv = 0;  // mu^{-1} in F_q
};

inline RootField make_root_field(std::int64_t mu, std::int64_t q_floor, SeededRng& rng) {
  if (mu < 2 || !is_prime(mu)) throw std::invalid_argument("make_root_field: mu must be prime");
  RootField f;
  f.mu = mu;
  std::int64_t k = q_floor / mu + 1;
  for (;; ++k) {
    std::int64_t q = k * mu + 1;
    if (q <= q_floor) continue;
    if (is_prime(q)) {
      f.q = q;
      break;
    }
  }
  // a^((q-1)/mu) has order dividing the prime mu, hence exactly mu unless it is 1.
  for (;;) {
    std::int64_t a = rng.range(2, f.q - 1);
    std::int64_t w = powmod(a, static_cast<std::uint64_t>((f.q - 1) / mu), f.q);
    if (w != 1) {
      f.omega = w;
      break;
    }
  }
  f.mu_inv = powmod(f.mu % f.q, static_cast<std::uint64_t>(f.q - 2), f.q);
  return f;
}

// ---------------------------------------------------------------------------
// Root-of-unity residue counting: for each target tau, the number of subsets
// of wmod[0..k) whose sum is congruent to tau mod mu, computed as
//   mu^{-1} * sum_j omega^{-tau j} * prod_i (1 + omega^{j wmod_i})
// with one running power per item and per target; O(mu*(k + #targets)) field
// multiplications and O(k + #targets) words of state.  Counts are exact
// integers because q exceeds 2^k.  Throws BudgetExhausted when the shared
// field-op budget runs out (checked once per outer iteration).
// ---------------------------------------------------------------------------
inline std::vector<std::int64_t> count_residue_subsets(const std::vector<std::int64_t>& wmod,
                                                       std::size_t k,
                                                       const std::vector<std::int64_t>& targets,
                                                       const RootField& f, RunMetrics* m,
                                                       std::uint64_t op_budget) {
  if (k > wmod.size()) throw std::invalid_argument("count_residue_subsets: bad item span");
  const std::int64_t q = f.q;
  const std::size_t tn = targets.size();
  TrackedAlloc scratch(m, static_cast<std::int64_t>(2 * k + 3 * tn + 8));

  std::vector<std::int64_t> step(k), run(k, 1 % q);
  for (std::size_t i = 0; i < k; ++i) {
    if (wmod[i] < 0 || wmod[i] >= f.mu)
      throw std::invalid_argument("count_residue_subsets: weight not reduced mod mu");
    step[i] = powmod(f.omega, static_cast<std::uint64_t>(wmod[i]), q);
  }
  std::vector<std::int64_t> rstep(tn), rrun(tn, 1 % q), acc(tn, 0);
  for (std::size_t t = 0; t < tn; ++t) {
    std::int64_t tau = targets[t];
    if (tau < 0 || tau >= f.mu)
      throw std::invalid_argument("count_residue_subsets: target not reduced mod mu");
    rstep[t] = powmod(f.omega, static_cast<std::uint64_t>(f.mu - tau), q);  // omega^{-tau}
  }

  for (std::int64_t j = 0; j < f.mu; ++j) {
    if (m) {
      m->field_ops += 2 * k + 2 * tn;
      if (op_budget != 0 && m->field_ops > op_budget)
        throw BudgetExhausted("count_residue_subsets: field-op budget exhausted");
    }
    std::int64_t prod = 1 % q;
    for (std::size_t i = 0; i < k; ++i) {
      std::int64_t factor = run[i] + 1;
      if (factor == q) factor = 0;
      prod = mulmod(prod, factor, q);
    }
    for (std::size_t t = 0; t < tn; ++t) {
      acc[t] = (acc[t] + mulmod(rrun[t], prod, q)) % q;
    }
    for (std::size_t i = 0; i < k; ++i) run[i] = mulmod(run[i], step[i], q);
    for (std::size_t t = 0; t < tn; ++t) rrun[t] = mulmod(rrun[t], rstep[t], q);
  }

  std::vector<std::int64_t> counts(tn);
  for (std::size_t t = 0; t < tn; ++t) counts[t] = mulmod(acc[t], f.mu_inv, q);
  return counts;
}

// ---------------------------------------------------------------------------
// Small-range solver: counts subsets hitting the target modulo a random prime
// mu in [M, 2M] and extracts a witness by descending item-by-item (the last
// item in |w|-ascending order is fixed first).  The descent tracks both the
// modular residual and the unreduced residual with per-level range pruning, so
// any completed descent yields an exactly verified witness; a dead end means
// the positive count was purely wraparound, and a fresh mu is drawn.
// ---------------------------------------------------------------------------

struct SmallRangeOptions {
  int retry_cap = 4;             // fresh-mu draws before giving up
  std::uint64_t node_cap = 0;    // descent nodes per draw (0 = default 64 + 8n)
  std::uint64_t op_budget = 0;   // total field multiplications allowed (0 = unlimited)
  std::uint64_t seed = 1;
};

struct SmallRangeResult {
  std::int64_t count = -1;       // mod-mu subset count from the first draw
  bool no_wraparound = false;    // mu > sum|w| + |t|: the count is the exact subset count
  bool certified_no = false;     // some draw counted zero, which proves NO exactly
  std::optional<std::vector<std::int64_t>> witness;  // sorted 1-based indices, verified
  std::int64_t mu = 0, q = 0;    // parameters of the first draw
  bool aborted = false;          // op budget ran out
  RunMetrics metrics;
};

inline SmallRangeResult solve_small_range(const std::vector<std::int64_t>& w, std::int64_t t,
                                          std::int64_t M, const SmallRangeOptions& opt = {}) {
  const std::size_t n = w.size();
  if (M < 2) throw std::invalid_argument("solve_small_range: M must be >= 2");
  if (n > 44) throw std::invalid_argument("solve_small_range: more than 44 items");
  for (std::int64_t v : w) {
    if (v > (std::int64_t{1} << 52) || v < -(std::int64_t{1} << 52))
      throw std::invalid_argument("solve_small_range: |weight| exceeds 2^52");
  }
  if (t > (std::int64_t{1} << 56) || t < -(std::int64_t{1} << 56))
    throw std::invalid_argument("solve_small_range: |target| exceeds 2^56");

  SmallRangeResult res;
  RunMetrics& m = res.metrics;
  if (n == 0) {
    res.count = (t == 0) ? 1 : 0;
    res.no_wraparound = true;
    if (t == 0) {
      res.witness = std::vector<std::int64_t>{};
    } else {
      res.certified_no = true;
    }
    return res;
  }

  std::int64_t span = 0;
  for (std::int64_t v : w) span += std::abs(v);

  // Items in |w|-ascending order: the descent fixes the last remaining item,
  // so the largest values are decided first and the unreduced range window
  // tightens as fast as possible.
  std::vector<std::int64_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::int64_t a, std::int64_t b) {
    return std::abs(w[a]) < std::abs(w[b]) || (std::abs(w[a]) == std::abs(w[b]) && a < b);
  });
  std::vector<std::int64_t> ws(n);
  for (std::size_t i = 0; i < n; ++i) ws[i] = w[perm[i]];
  std::vector<std::int64_t> lo(n + 1, 0), hi(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i + 1] = lo[i] + std::min<std::int64_t>(ws[i], 0);
    hi[i + 1] = hi[i] + std::max<std::int64_t>(ws[i], 0);
  }
  // perm/ws/wmod/lo/hi plus the descent stack (depth <= n+1, 8 words a frame).
  TrackedAlloc state(&m, static_cast<std::int64_t>(14 * n + 32));

  SeededRng rng(derive_subseed(opt.seed, "small-range"));
  const std::int64_t q_floor =
      std::max<std::int64_t>(std::int64_t{1} << n, 3);  // exact integer counts need q > 2^n

  try {
    for (int attempt = 0; attempt <= opt.retry_cap; ++attempt) {
      std::int64_t mu = random_prime_between(M, 2 * M, rng);
      RootField f = make_root_field(mu, q_floor, rng);
      std::vector<std::int64_t> wmod(n);
      for (std::size_t i = 0; i < n; ++i) wmod[i] = ((ws[i] % mu) + mu) % mu;
      std::int64_t tau = ((t % mu) + mu) % mu;

      std::int64_t full =
          count_residue_subsets(wmod, n, {tau}, f, &m, opt.op_budget)[0];
      if (attempt == 0) {
        res.count = full;
        res.no_wraparound = (mu > span + std::abs(t));
        res.mu = mu;
        res.q = f.q;
      }
      if (full == 0) {
        // Every true solution survives reduction mod mu, so zero is a proof.
        res.certified_no = true;
        return res;
      }

      // Descent with backtracking.  A branch survives only when its count is
      // positive AND the unreduced residual stays inside the remaining range
      // window; a true solution satisfies both at every level, so its path is
      // never pruned and an uncapped search must reach depth 0 with residual
      // exactly zero.  Ghost branches (wraparound mass) carry positive counts
      // too, but only about 2^k / mu of them per level, so the tree stays
      // small; the node cap guards the pathological case and falls back to a
      // fresh mu.
      struct Frame {
        std::size_t k;                 // items still undecided entering this frame
        std::int64_t tau_mod, tau_int; // residual target, reduced and unreduced
        std::int64_t cur;              // subset count for this sub-instance
        std::int64_t c_out, c_in;      // children counts (valid once expanded)
        int stage;                     // 0 unexpanded; then # children tried
        bool first_is_in;
      };
      const std::uint64_t node_cap = opt.node_cap != 0 ? opt.node_cap : 64 + 8 * n;
      std::uint64_t nodes = 0;
      std::vector<Frame> stack;
      stack.reserve(n + 1);
      stack.push_back({n, tau, t, full, 0, 0, 0, false});
      std::vector<char> in_set(n, 0);
      bool found = false, capped = false;
      while (!stack.empty()) {
        Frame& fr = stack.back();
        if (fr.k == 0) {
          if (fr.tau_int != 0) throw std::logic_error("solve_small_range: descent missed");
          found = true;
          break;
        }
        const std::size_t k = fr.k;
        if (fr.stage == 0) {
          if (++nodes > node_cap) {
            capped = true;
            break;
          }
          std::int64_t tau_in = (fr.tau_mod - wmod[k - 1] + mu) % mu;
          auto counts =
              count_residue_subsets(wmod, k - 1, {fr.tau_mod, tau_in}, f, &m, opt.op_budget);
          fr.c_out = counts[0];
          fr.c_in = counts[1];
          if (fr.c_out + fr.c_in != fr.cur)
            throw std::logic_error("solve_small_range: branch counts do not add up");
          fr.first_is_in = fr.c_in >= fr.c_out;
        }
        bool pushed = false;
        while (fr.stage < 2) {
          bool take_in = (fr.stage == 0) == fr.first_is_in;
          ++fr.stage;
          std::int64_t child_cnt = take_in ? fr.c_in : fr.c_out;
          std::int64_t child_int = take_in ? fr.tau_int - ws[k - 1] : fr.tau_int;
          if (child_cnt <= 0 || child_int < lo[k - 1] || child_int > hi[k - 1]) continue;
          std::int64_t child_mod =
              take_in ? (fr.tau_mod - wmod[k - 1] + mu) % mu : fr.tau_mod;
          in_set[k - 1] = take_in ? 1 : 0;
          stack.push_back({k - 1, child_mod, child_int, child_cnt, 0, 0, 0, false});
          pushed = true;
          break;
        }
        if (!pushed && stack.back().stage >= 2) stack.pop_back();
      }
      if (found) {
        std::vector<std::int64_t> chosen;
        std::int64_t check = 0;
        // in_set holds the choices along the surviving path: every level above
        // the final frame has exactly one committed decision.
        for (std::size_t i = 0; i < n; ++i) {
          if (in_set[i]) {
            chosen.push_back(perm[i] + 1);
            check += ws[i];
          }
        }
        if (check != t) throw std::logic_error("solve_small_range: witness failed verification");
        std::sort(chosen.begin(), chosen.end());
        res.witness = std::move(chosen);
        return res;
      }
      if (!capped && attempt == 0 && res.no_wraparound)
        throw std::logic_error("solve_small_range: exact-count descent found no path");
      ++m.retries;
    }
  } catch (const BudgetExhausted&) {
    res.aborted = true;
    ++m.aborts;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Win-win driver: quick certificates, then residue counting with range cap
// 2^{0.86 n}, then the meet-in-the-middle walk search over implicit half-sum
// lists with pseudo-solution bound 2^{0.72 n} and step cutoff 2^{0.86 n}.
// ---------------------------------------------------------------------------

enum class SssPhase { kNone, kQuick, kSmallRange, kMitm };

enum class SssMode { kAuto, kSmallRangeOnly, kMitmOnly };

struct SssOptions {
  double c_M = 1.0;       // range cap M = ceil(c_M * 2^{0.86 n})
  double c_p = 1.0;       // MITM pseudo-solution bound ceil(c_p * 2^{0.72 n})
  double c_prime = 1.0;   // MITM step cutoff ceil(c_prime * 2^{0.86 n})
  double c_ops = 6.0;     // phase-1 budget: ceil(c_ops * (n+1)^2 * 2M) field ops
  int retry_cap = 4;
  OracleMode oracle_mode = OracleMode::kPrf;
  SssMode mode = SssMode::kAuto;
  std::uint64_t seed = 1;
};

struct SssResult {
  bool yes = false;
  std::vector<std::int64_t> witness;  // sorted 1-based indices, verified exactly
  SssPhase solved_by = SssPhase::kNone;
  bool certified_no = false;   // NO backed by range/gcd arithmetic or a zero count
  std::int64_t small_count = -1;
  std::int64_t mitm_p_bound = 0;
  std::uint64_t mitm_budget = 0;
  RunMetrics metrics;
};

inline std::int64_t scaled_pow2(double c, double alpha, std::int64_t n) {
  double v = c * std::exp2(alpha * static_cast<double>(n));
  if (v > 9.0e18) throw std::overflow_error("scaled_pow2: value exceeds 64 bits");
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(v)));
}

inline SssResult sss_solve(const std::vector<std::int64_t>& w, std::int64_t t,
                           const SssOptions& opt = {}) {
  SssResult res;
  RunMetrics& m = res.metrics;
  const std::int64_t n = static_cast<std::int64_t>(w.size());
  if (n > 44) throw std::invalid_argument("sss_solve: more than 44 items");

  if (t == 0) {
    res.yes = true;
    res.solved_by = SssPhase::kQuick;
    return res;
  }
  std::int64_t lo = 0, hi = 0, g = 0;
  for (std::int64_t v : w) {
    lo += std::min<std::int64_t>(v, 0);
    hi += std::max<std::int64_t>(v, 0);
    g = std::gcd(g, v);
  }
  if (t < lo || t > hi || (g != 0 && t % g != 0) || (g == 0 && t != 0)) {
    res.certified_no = true;
    res.solved_by = SssPhase::kQuick;
    return res;
  }

  if (opt.mode != SssMode::kMitmOnly) {
    std::int64_t M = std::max<std::int64_t>(2, scaled_pow2(opt.c_M, 0.86, n));
    SmallRangeOptions sopt;
    sopt.retry_cap = opt.retry_cap;
    double ops = opt.c_ops * static_cast<double>((n + 1) * (n + 1)) * 2.0 *
                 static_cast<double>(M);
    sopt.op_budget = ops > 1.8e19 ? 0 : static_cast<std::uint64_t>(std::ceil(ops));
    sopt.seed = derive_subseed(opt.seed, "sss-small");
    SmallRangeResult sr = solve_small_range(w, t, M, sopt);
    m.merge(sr.metrics);
    res.small_count = sr.count;
    if (sr.witness.has_value()) {
      res.yes = true;
      res.witness = *sr.witness;
      res.solved_by = SssPhase::kSmallRange;
      return res;
    }
    if (sr.certified_no) {
      res.certified_no = true;
      res.solved_by = SssPhase::kSmallRange;
      return res;
    }
  }

  if (opt.mode != SssMode::kSmallRangeOnly) {
    // Random half split over the zero-padded item vector; each side's subset
    // sums form an implicit list indexed by bitmask + 1.
    std::vector<std::int64_t> wp = w;
    if (wp.size() % 2 != 0) wp.push_back(0);
    const std::int64_t np = static_cast<std::int64_t>(wp.size());
    std::vector<std::int64_t> perm(wp.size());
    std::iota(perm.begin(), perm.end(), 0);
    SeededRng split_rng(derive_subseed(opt.seed, "sss-split"));
    for (std::int64_t i = np - 1; i > 0; --i) {
      std::int64_t j = static_cast<std::int64_t>(split_rng.below(static_cast<std::uint64_t>(i + 1)));
      std::swap(perm[i], perm[j]);
    }
    const std::int64_t half = np / 2;
    std::vector<std::int64_t> left(perm.begin(), perm.begin() + half);
    std::vector<std::int64_t> right(perm.begin() + half, perm.end());
    std::vector<std::int64_t> wl, wr;
    for (std::int64_t idx : left) wl.push_back(wp[static_cast<std::size_t>(idx)]);
    for (std::int64_t idx : right) wr.push_back(wp[static_cast<std::size_t>(idx)]);

    IntegerList x = make_subset_sum_list(wl, +1, 0);
    IntegerList y = make_subset_sum_list(wr, -1, t);

    LdOptions lopt;
    lopt.s = 1;
    lopt.p_bound = scaled_pow2(opt.c_p, 0.72, np);
    lopt.step_budget = static_cast<std::uint64_t>(scaled_pow2(opt.c_prime, 0.86, np));
    lopt.oracle_mode = opt.oracle_mode;
    lopt.seed = derive_subseed(opt.seed, "sss-mitm");
    res.mitm_p_bound = *lopt.p_bound;
    res.mitm_budget = lopt.step_budget;
    LdResult lr = ld_search(x, y, lopt);
    m.merge(lr.metrics);
    if (lr.outcome == LdOutcome::kFound) {
      std::vector<std::int64_t> witness;
      std::uint64_t xm = static_cast<std::uint64_t>(lr.i - 1);
      std::uint64_t ym = static_cast<std::uint64_t>(lr.j - 1);
      for (std::int64_t b = 0; b < half; ++b) {
        if ((xm >> b) & 1 && left[static_cast<std::size_t>(b)] < n)
          witness.push_back(left[static_cast<std::size_t>(b)] + 1);
        if ((ym >> b) & 1 && right[static_cast<std::size_t>(b)] < n)
          witness.push_back(right[static_cast<std::size_t>(b)] + 1);
      }
      std::int64_t check = 0;
      for (std::int64_t idx : witness) check += w[static_cast<std::size_t>(idx - 1)];
      if (check != t) throw std::logic_error("sss_solve: MITM witness failed verification");
      std::sort(witness.begin(), witness.end());
      res.yes = true;
      res.witness = std::move(witness);
      res.solved_by = SssPhase::kMitm;
      return res;
    }
  }

  res.solved_by = SssPhase::kNone;  // NO without certificate: Monte Carlo one-sided
  return res;
}

// ---------------------------------------------------------------------------
// Verification helpers for the combinatorial counting bounds.
// ---------------------------------------------------------------------------

// Exact number of distinct subset sums, by enumeration (n <= 24).
inline std::int64_t distinct_sums_count(const std::vector<std::int64_t>& w) {
  const std::size_t n = w.size();
  if (n > 24) throw std::invalid_argument("distinct_sums_count: more than 24 items");
  std::vector<std::int64_t> sums(std::size_t{1} << n);
  sums[0] = 0;
  for (std::size_t mask = 1; mask < sums.size(); ++mask) {
    std::size_t low = mask & (mask - 1);
    sums[mask] = sums[low] + w[static_cast<std::size_t>(std::countr_zero(mask))];
  }
  std::sort(sums.begin(), sums.end());
  return static_cast<std::int64_t>(std::unique(sums.begin(), sums.end()) - sums.begin());
}

// Exact number of {-1,0,1} combinations with support size d summing to zero.
inline std::int64_t count_signed_zero(const std::vector<std::int64_t>& w, int d) {
  const int n = static_cast<int>(w.size());
  if (n > 14) throw std::invalid_argument("count_signed_zero: more than 14 items");
  if (d < 0 || d > n) return 0;
  std::int64_t count = 0;
  auto rec = [&](auto&& self, int idx, int support, std::int64_t sum) -> void {
    if (support > d || support + (n - idx) < d) return;
    if (idx == n) {
      if (support == d && sum == 0) ++count;
      return;
    }
    self(self, idx + 1, support, sum);
    self(self, idx + 1, support + 1, sum + w[static_cast<std::size_t>(idx)]);
    self(self, idx + 1, support + 1, sum - w[static_cast<std::size_t>(idx)]);
  };
  rec(rec, 0, 0, 0);
  return count;
}

// Checks |w(2^[n])| * |C_d| <= 2^n * binom(n, ceil(d/2)) * (n+1)^6 for all d.
inline bool verify_counting_bound(const std::vector<std::int64_t>& w) {
  const int n = static_cast<int>(w.size());
  if (n > 14) throw std::invalid_argument("verify_counting_bound: more than 14 items");
  const std::int64_t sums = distinct_sums_count(w);
  std::vector<std::vector<std::int64_t>> binom(n + 1, std::vector<std::int64_t>(n + 1, 0));
  for (int a = 0; a <= n; ++a) {
    binom[a][0] = 1;
    for (int b = 1; b <= a; ++b)
      binom[a][b] = binom[a - 1][b - 1] + (b <= a - 1 ? binom[a - 1][b] : 0);
  }
  __int128 poly = 1;
  for (int i = 0; i < 6; ++i) poly *= n + 1;
  for (int d = 0; d <= n; ++d) {
    __int128 lhs = static_cast<__int128>(sums) * count_signed_zero(w, d);
    __int128 rhs = (static_cast<__int128>(1) << n) * binom[n][(d + 1) / 2] * poly;
    if (lhs > rhs) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// The split-balance exponent: g(delta) combines the binary entropy of the
// half-support choice with the entropy of distributing the unsplit support,
// giving the exponent that bounds same-side collision mass for the MITM lists.
// ---------------------------------------------------------------------------

inline double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

inline double entropy_g(double delta) {
  if (delta < 0.0 || delta > 0.5) throw std::invalid_argument("entropy_g: delta outside [0, 1/2]");
  double inner = (delta >= 0.5) ? 0.0 : (0.5 - delta) / (1.0 - delta);
  return -0.36 + binary_entropy(delta / 2.0) + binary_entropy(inner) * (1.0 - delta) - delta;
}

struct EntropyMax {
  double max_value = 0.0;
  double argmax = 0.0;
};

// Dense grid scan plus golden-section refinement (the function is unimodal on
// the bracket the grid finds; the property test checks that shape).
inline EntropyMax entropy_exponent() {
  const int grid = 50000;
  double best_x = 0.0, best_v = entropy_g(0.0);
  for (int i = 1; i <= grid; ++i) {
    double x = 0.5 * static_cast<double>(i) / grid;
    double v = entropy_g(x);
    if (v > best_v) {
      best_v = v;
      best_x = x;
    }
  }
  double a = std::max(0.0, best_x - 1.0 / grid);
  double b = std::min(0.5, best_x + 1.0 / grid);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = entropy_g(x1), f2 = entropy_g(x2);
  while (b - a > 1e-12) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = entropy_g(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = entropy_g(x1);
    }
  }
  EntropyMax out;
  out.argmax = 0.5 * (a + b);
  out.max_value = entropy_g(out.argmax);
  return out;
}

}  // namespace lowspace
