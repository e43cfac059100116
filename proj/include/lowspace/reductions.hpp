#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lowspace/metrics.hpp"
#include "lowspace/rng.hpp"
#include "lowspace/subset_sum.hpp"

namespace lowspace {

// ---------------------------------------------------------------------------
// Interval membership -> equality queries.
//
// A query list for (omega, [l, u]) satisfies: omega(X) in [l, u] iff some
// query (omega_i, t_i) has omega_i(X) = t_i.  Construction: clamp [l, u] to
// the attainable range, emit every target directly when the interval is short,
// otherwise emit two boundary bands of n targets each and recurse on the
// halved weights with [ceil(l/2), floor((u-n)/2)].  Soundness: omega(X) =
// 2*omega'(X) + e(X) with e(X) in [0, n], so a recursive hit lands in [l, u];
// completeness: any omega(X) in [l+n, u-n] halves into the recursive interval.
// ---------------------------------------------------------------------------

struct EqualityQuery {
  std::vector<std::int64_t> omega;
  std::int64_t target = 0;
};

// One recursion level: a weight vector shared by a set of contiguous target
// ranges.  Grouping by level lets a solver batch all targets of a level into
// one counting pass instead of treating every query independently.
struct IntervalBlock {
  std::vector<std::int64_t> omega;
  std::vector<std::pair<std::int64_t, std::int64_t>> ranges;  // inclusive
};

inline std::int64_t floor_half(std::int64_t v) { return v >> 1; }
inline std::int64_t ceil_half(std::int64_t v) { return -((-v) >> 1); }

inline std::vector<IntervalBlock> interval_blocks(std::vector<std::int64_t> omega,
                                                  std::int64_t l, std::int64_t u) {
  const std::int64_t n = static_cast<std::int64_t>(omega.size());
  std::vector<IntervalBlock> out;
  for (;;) {
    std::int64_t lo_att = 0, hi_att = 0;
    for (std::int64_t w : omega) {
      lo_att += std::min<std::int64_t>(w, 0);
      hi_att += std::max<std::int64_t>(w, 0);
    }
    l = std::max(l, lo_att);
    u = std::min(u, hi_att);
    if (l > u) return out;
    if (u - l + 1 <= 4 * n + 4) {
      out.push_back({omega, {{l, u}}});
      return out;
    }
    // interval length exceeds 4n+4 > 2n, so the two bands cannot overlap
    out.push_back({omega, {{l, l + n - 1}, {u - n + 1, u}}});
    for (auto& w : omega) w = floor_half(w);
    l = ceil_half(l);
    u = floor_half(u - n);
  }
}

inline std::vector<EqualityQuery> interval_to_equalities(const std::vector<std::int64_t>& omega,
                                                         std::int64_t l, std::int64_t u) {
  std::vector<EqualityQuery> out;
  for (const IntervalBlock& b : interval_blocks(omega, l, u)) {
    for (auto [a, z] : b.ranges) {
      for (std::int64_t t = a; t <= z; ++t) out.push_back({b.omega, t});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Base-B combination of one equality per digit: w_i = sum_j omega^j(i) * B^j,
// t = sum_j t_j * B^j.  With B a power of two and B >= 2*m*n + 1 (m the
// largest weight magnitude), per-digit sums stay below B/2, so the combined
// equality holds iff every digit equality holds.
// ---------------------------------------------------------------------------

struct SubsetSumInstance {
  std::vector<std::int64_t> w;
  std::int64_t t = 0;
};

inline SubsetSumInstance combine_equalities(const std::vector<EqualityQuery>& queries,
                                            std::int64_t B) {
  if (queries.empty()) throw std::invalid_argument("combine_equalities: no queries");
  const std::size_t n = queries[0].omega.size();
  std::int64_t m_hat = 1;
  for (const auto& q : queries) {
    if (q.omega.size() != n) throw std::invalid_argument("combine_equalities: size mismatch");
    for (std::int64_t w : q.omega) m_hat = std::max(m_hat, std::abs(w));
  }
  if (B < 2 || (B & (B - 1)) != 0)
    throw std::invalid_argument("combine_equalities: B must be a power of two");
  if (B < 2 * m_hat * static_cast<std::int64_t>(n) + 1)
    throw std::invalid_argument("combine_equalities: B below 2*m*n + 1");
  const std::int64_t digit_cap = m_hat * static_cast<std::int64_t>(std::max<std::size_t>(n, 1));
  for (const auto& q : queries) {
    if (std::abs(q.target) > digit_cap)
      throw std::invalid_argument("combine_equalities: target exceeds the per-digit bound");
  }

  const __int128 word_cap = static_cast<__int128>(1) << 62;
  SubsetSumInstance inst;
  inst.w.assign(n, 0);
  __int128 pw = 1, t_acc = 0;
  for (const auto& q : queries) {
    pw *= B;
    if (pw > word_cap) throw std::overflow_error("combine_equalities: base power overflows");
    for (std::size_t i = 0; i < n; ++i) {
      __int128 acc = static_cast<__int128>(inst.w[i]) + pw * q.omega[i];
      if (acc > word_cap || acc < -word_cap)
        throw std::overflow_error("combine_equalities: combined weight overflows");
      inst.w[i] = static_cast<std::int64_t>(acc);
    }
    t_acc += pw * q.target;
    if (t_acc > word_cap || t_acc < -word_cap)
      throw std::overflow_error("combine_equalities: combined target overflows");
  }
  inst.t = static_cast<std::int64_t>(t_acc);
  return inst;
}

// ---------------------------------------------------------------------------
// Box decision: does some subset X satisfy omega^j(X) in [lo_j, hi_j] for
// every dimension j simultaneously?  Reduces each dimension to equality
// blocks, walks the Cartesian product of block choices, and solves the
// combined single-target instances.  Two sound filters keep the product
// tractable: an exact reachability bitmap over random integer projections of
// the digit vectors (discards only tuples no subset can attain), and a
// batched zero-count test over a random prime (zero is a proof of absence).
// ---------------------------------------------------------------------------

struct BoxSystem {
  std::vector<std::vector<std::int64_t>> omegas;            // one vector per dimension
  std::vector<std::pair<std::int64_t, std::int64_t>> boxes; // inclusive bounds per dimension
};

struct BoxOptions {
  std::uint64_t seed = 1;
  int projections = 3;          // independent reachability filters per combo
  double proj_slots = 64.0;     // projected range ~ proj_slots * 2^n values
  std::size_t chunk = 384;      // targets per batched counting pass
  int retry_cap = 3;            // witness-extraction retries per flagged target
};

namespace detail {

// bits |= bits shifted by `shift` positions (signed; exact reachability DP step)
inline void shift_or(std::vector<std::uint64_t>& bits, std::int64_t shift) {
  const std::int64_t nw = static_cast<std::int64_t>(bits.size());
  if (shift == 0) return;
  if (shift > 0) {
    const std::int64_t ws = shift / 64, bs = shift % 64;
    for (std::int64_t i = nw - 1; i >= ws; --i) {
      std::uint64_t v = bits[static_cast<std::size_t>(i - ws)] << bs;
      if (bs != 0 && i - ws - 1 >= 0)
        v |= bits[static_cast<std::size_t>(i - ws - 1)] >> (64 - bs);
      bits[static_cast<std::size_t>(i)] |= v;
    }
  } else {
    const std::int64_t ws = (-shift) / 64, bs = (-shift) % 64;
    for (std::int64_t i = 0; i < nw - ws; ++i) {
      std::uint64_t v = bits[static_cast<std::size_t>(i + ws)] >> bs;
      if (bs != 0 && i + ws + 1 < nw)
        v |= bits[static_cast<std::size_t>(i + ws + 1)] << (64 - bs);
      bits[static_cast<std::size_t>(i)] |= v;
    }
  }
}

struct Reachability {
  std::vector<std::uint64_t> bits;
  std::int64_t lo = 0;  // value of bit 0

  void build(const std::vector<std::int64_t>& item_weights) {
    std::int64_t neg = 0, pos = 0;
    for (std::int64_t w : item_weights) {
      neg += std::min<std::int64_t>(w, 0);
      pos += std::max<std::int64_t>(w, 0);
    }
    lo = neg;
    const std::int64_t span = pos - neg + 1;
    bits.assign(static_cast<std::size_t>((span + 63) / 64), 0);
    bits[static_cast<std::size_t>((-lo) / 64)] |= std::uint64_t{1} << ((-lo) % 64);
    for (std::int64_t w : item_weights) shift_or(bits, w);
  }

  bool test(std::int64_t v) const {
    const std::int64_t off = v - lo;
    if (off < 0 || off >= static_cast<std::int64_t>(bits.size()) * 64) return false;
    return (bits[static_cast<std::size_t>(off / 64)] >> (off % 64)) & 1;
  }
};

}  // namespace detail

// Returns sorted 1-based indices of a verified subset, or nullopt (one-sided:
// a nullopt may be a missed witness only if an extraction cap was hit).
inline std::optional<std::vector<std::int64_t>> box_decide(const BoxSystem& sys,
                                                           const BoxOptions& opt,
                                                           RunMetrics& m) {
  const std::size_t dims = sys.omegas.size();
  if (dims == 0 || dims != sys.boxes.size())
    throw std::invalid_argument("box_decide: dimension mismatch");
  const std::size_t n = sys.omegas[0].size();
  if (n == 0 || n > 30) throw std::invalid_argument("box_decide: item count out of range");
  if (dims > 4) throw std::invalid_argument("box_decide: more than 4 dimensions");

  // Clamp boxes to attainable ranges; an empty box is a proof of infeasibility.
  std::vector<std::pair<std::int64_t, std::int64_t>> boxes(dims);
  std::int64_t m_hat = 1;
  for (std::size_t j = 0; j < dims; ++j) {
    if (sys.omegas[j].size() != n) throw std::invalid_argument("box_decide: ragged omegas");
    std::int64_t lo_att = 0, hi_att = 0;
    for (std::int64_t w : sys.omegas[j]) {
      m_hat = std::max(m_hat, std::abs(w));
      lo_att += std::min<std::int64_t>(w, 0);
      hi_att += std::max<std::int64_t>(w, 0);
    }
    boxes[j] = {std::max(sys.boxes[j].first, lo_att), std::min(sys.boxes[j].second, hi_att)};
    if (boxes[j].first > boxes[j].second) return std::nullopt;
  }

  bool empty_ok = true;
  for (std::size_t j = 0; j < dims; ++j)
    empty_ok = empty_ok && boxes[j].first <= 0 && 0 <= boxes[j].second;
  if (empty_ok) return std::vector<std::int64_t>{};

  const std::int64_t B =
      static_cast<std::int64_t>(std::bit_ceil(static_cast<std::uint64_t>(
          2 * m_hat * static_cast<std::int64_t>(n) + 1)));
  std::vector<IntervalBlock> blocks_flat;
  std::vector<std::size_t> dim_begin(dims + 1, 0);
  for (std::size_t j = 0; j < dims; ++j) {
    auto bl = interval_blocks(sys.omegas[j], boxes[j].first, boxes[j].second);
    if (bl.empty()) return std::nullopt;
    dim_begin[j] = blocks_flat.size();
    for (auto& b : bl) blocks_flat.push_back(std::move(b));
    dim_begin[j + 1] = blocks_flat.size();
  }

  SeededRng rng(derive_subseed(opt.seed, "box-decide"));
  const std::int64_t M_red =
      std::max(scaled_pow2(1.0, 0.86, static_cast<std::int64_t>(n)),
               std::int64_t{2} << n);
  // Projection magnitudes sized so attained sums occupy ~1/proj_slots of the
  // projected range; three independent misses are then rare for ghosts.
  const std::int64_t lambda_max = std::clamp<std::int64_t>(
      static_cast<std::int64_t>(opt.proj_slots * std::exp2(static_cast<double>(n)) /
                                static_cast<double>(static_cast<std::int64_t>(n) *
                                                    static_cast<std::int64_t>(dims) * m_hat)),
      16, std::int64_t{1} << 20);

  // Odometer over one block choice per dimension.
  std::vector<std::size_t> choice(dims);
  for (std::size_t j = 0; j < dims; ++j) choice[j] = dim_begin[j];
  std::vector<std::vector<std::int64_t>> lambdas(
      static_cast<std::size_t>(opt.projections), std::vector<std::int64_t>(dims));
  for (auto& lam : lambdas) {
    for (auto& v : lam) v = rng.range(1, lambda_max);
  }

  std::vector<std::int64_t> bpow(dims + 1);
  bpow[0] = 1;
  for (std::size_t j = 1; j <= dims; ++j) {
    __int128 p = static_cast<__int128>(bpow[j - 1]) * B;
    if (p > (static_cast<__int128>(1) << 52))
      throw std::overflow_error("box_decide: base power exceeds the solver's weight cap");
    bpow[j] = static_cast<std::int64_t>(p);
  }

  for (;;) {
    // Combined weights and per-projection reachability for this combo.
    std::vector<std::int64_t> comb(n, 0);
    for (std::size_t j = 0; j < dims; ++j) {
      const auto& om = blocks_flat[choice[j]].omega;
      for (std::size_t i = 0; i < n; ++i) comb[i] += om[i] * bpow[j + 1];
    }
    std::vector<detail::Reachability> reach(lambdas.size());
    {
      std::vector<std::int64_t> proj(n);
      for (std::size_t p = 0; p < lambdas.size(); ++p) {
        for (std::size_t i = 0; i < n; ++i) {
          std::int64_t s = 0;
          for (std::size_t j = 0; j < dims; ++j)
            s += lambdas[p][j] * blocks_flat[choice[j]].omega[i];
          proj[i] = s;
        }
        reach[p].build(proj);
        m.track_alloc(static_cast<std::int64_t>(reach[p].bits.size()));
      }
    }

    // Flatten each chosen block's ranges into a target list, then run the
    // tuple odometer with the projection filters and chunked zero-count test.
    std::vector<std::vector<std::int64_t>> tlists(dims);
    for (std::size_t j = 0; j < dims; ++j) {
      for (auto [a, z] : blocks_flat[choice[j]].ranges) {
        for (std::int64_t t = a; t <= z; ++t) tlists[j].push_back(t);
      }
    }
    std::vector<std::size_t> tidx(dims, 0);
    std::vector<std::int64_t> pending;  // combined targets that passed projections
    bool tuples_left = true;
    auto flush = [&]() -> std::optional<std::vector<std::int64_t>> {
      if (pending.empty()) return std::nullopt;
      std::int64_t mu = random_prime_between(M_red, 2 * M_red, rng);
      RootField f = make_root_field(
          mu, std::max<std::int64_t>(std::int64_t{1} << n, mu + 2), rng);
      std::vector<std::int64_t> wmod(n), tmod(pending.size());
      for (std::size_t i = 0; i < n; ++i) wmod[i] = ((comb[i] % mu) + mu) % mu;
      for (std::size_t i = 0; i < pending.size(); ++i)
        tmod[i] = ((pending[i] % mu) + mu) % mu;
      auto counts = count_residue_subsets(wmod, n, tmod, f, &m, 0);
      for (std::size_t i = 0; i < pending.size(); ++i) {
        if (counts[i] == 0) continue;  // proven absent under this mu
        SmallRangeOptions sopt;
        sopt.retry_cap = opt.retry_cap;
        sopt.seed = rng.next();
        SmallRangeResult sr = solve_small_range(comb, pending[i], M_red, sopt);
        m.merge(sr.metrics);
        if (!sr.witness.has_value()) continue;
        // Digit uniqueness makes any combined witness satisfy every original
        // box; re-check against the uncombined system to be safe.
        for (std::size_t j = 0; j < dims; ++j) {
          std::int64_t s = 0;
          for (std::int64_t idx : *sr.witness)
            s += sys.omegas[j][static_cast<std::size_t>(idx - 1)];
          if (s < boxes[j].first || s > boxes[j].second)
            throw std::logic_error("box_decide: combined witness violates a box");
        }
        return sr.witness;
      }
      pending.clear();
      return std::nullopt;
    };

    while (tuples_left) {
      bool pass = true;
      std::int64_t target = 0, digit_sum;
      for (std::size_t p = 0; p < lambdas.size() && pass; ++p) {
        digit_sum = 0;
        for (std::size_t j = 0; j < dims; ++j)
          digit_sum += lambdas[p][j] * tlists[j][tidx[j]];
        pass = reach[p].test(digit_sum);
      }
      if (pass) {
        for (std::size_t j = 0; j < dims; ++j) target += tlists[j][tidx[j]] * bpow[j + 1];
        pending.push_back(target);
        if (pending.size() >= opt.chunk) {
          if (auto hit = flush()) return hit;
        }
      }
      // advance the tuple odometer
      std::size_t j = 0;
      for (; j < dims; ++j) {
        if (++tidx[j] < tlists[j].size()) break;
        tidx[j] = 0;
      }
      tuples_left = (j < dims);
    }
    if (auto hit = flush()) return hit;
    for (const auto& r : reach) m.track_free(static_cast<std::int64_t>(r.bits.size()));

    // advance the combo odometer
    std::size_t j = 0;
    for (; j < dims; ++j) {
      if (++choice[j] < dim_begin[j + 1]) break;
      choice[j] = dim_begin[j];
    }
    if (j == dims) break;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Knapsack: maximize v(X) subject to w(X) <= t, via binary search on the
// value threshold; each decision is a two-dimensional box query (weight in
// [-sum|w|, t], value in [threshold, sum max(v,0)]).
// ---------------------------------------------------------------------------

struct KnapsackInstance {
  std::vector<std::int64_t> w;
  std::vector<std::int64_t> v;
  std::int64_t t = 0;
};

struct KnapsackResult {
  bool feasible = false;
  std::vector<std::int64_t> chosen;  // sorted 1-based indices
  std::int64_t value = 0;
  RunMetrics metrics;
};

inline KnapsackResult knapsack_solve(const KnapsackInstance& inst, std::uint64_t seed = 1) {
  const std::size_t n = inst.w.size();
  if (n == 0 || inst.v.size() != n) throw std::invalid_argument("knapsack_solve: bad instance");
  KnapsackResult res;
  RunMetrics& m = res.metrics;

  std::int64_t lo_w = 0, hi_v = 0, lo_v = 0;
  for (std::size_t i = 0; i < n; ++i) {
    lo_w -= std::abs(inst.w[i]);
    hi_v += std::max<std::int64_t>(inst.v[i], 0);
    lo_v += std::min<std::int64_t>(inst.v[i], 0);
  }

  std::uint64_t decision_no = 0;
  auto decide = [&](std::int64_t v0) {
    BoxSystem sys{{inst.w, inst.v}, {{lo_w, inst.t}, {v0, hi_v}}};
    BoxOptions bopt;
    bopt.seed = derive_subseed(seed, "knapsack") ^ ++decision_no;
    return box_decide(sys, bopt, m);
  };
  auto value_of = [&](const std::vector<std::int64_t>& xs) {
    std::int64_t s = 0;
    for (std::int64_t i : xs) s += inst.v[static_cast<std::size_t>(i - 1)];
    return s;
  };

  auto first = decide(lo_v);
  if (!first.has_value()) return res;  // not even the relaxed value box is reachable
  res.feasible = true;
  res.chosen = *first;
  std::int64_t best = value_of(*first), hi = hi_v;
  while (best < hi) {
    std::int64_t mid = best + (hi - best + 1) / 2;
    auto got = decide(mid);
    if (got.has_value()) {
      std::int64_t val = value_of(*got);
      if (val < mid) throw std::logic_error("knapsack_solve: witness below threshold");
      best = val;
      res.chosen = *got;
    } else {
      hi = mid - 1;
    }
  }
  res.value = best;
  std::int64_t wsum = 0;
  for (std::int64_t i : res.chosen) wsum += inst.w[static_cast<std::size_t>(i - 1)];
  if (wsum > inst.t) throw std::logic_error("knapsack_solve: witness violates the budget");
  return res;
}

// ---------------------------------------------------------------------------
// 0/1 linear programming: minimize <v,x> subject to <a_j,x> <= u_j, via
// binary search on the objective with one box dimension per constraint.
// ---------------------------------------------------------------------------

struct BipConstraint {
  std::vector<std::int64_t> a;
  std::int64_t u = 0;
};

struct BipInstance {
  std::vector<std::int64_t> v;
  std::vector<BipConstraint> cons;
};

struct BipResult {
  bool feasible = false;
  std::vector<int> x;  // 0/1 assignment
  std::int64_t objective = 0;
  RunMetrics metrics;
};

inline BipResult bip_solve(const BipInstance& inst, std::uint64_t seed = 1) {
  const std::size_t n = inst.v.size();
  if (n == 0) throw std::invalid_argument("bip_solve: empty instance");
  if (inst.cons.size() > 3) throw std::invalid_argument("bip_solve: more than 3 constraints");
  BipResult res;
  RunMetrics& m = res.metrics;

  std::int64_t lo_v = 0, hi_v = 0;
  for (std::int64_t c : inst.v) {
    lo_v += std::min<std::int64_t>(c, 0);
    hi_v += std::max<std::int64_t>(c, 0);
  }

  std::uint64_t decision_no = 0;
  auto decide = [&](std::int64_t theta) {
    BoxSystem sys;
    for (const auto& con : inst.cons) {
      if (con.a.size() != n) throw std::invalid_argument("bip_solve: ragged constraint");
      std::int64_t lo_att = 0;
      for (std::int64_t c : con.a) lo_att += std::min<std::int64_t>(c, 0);
      sys.omegas.push_back(con.a);
      sys.boxes.push_back({lo_att, con.u});
    }
    sys.omegas.push_back(inst.v);
    sys.boxes.push_back({lo_v, theta});
    BoxOptions bopt;
    bopt.seed = derive_subseed(seed, "bip") ^ ++decision_no;
    return box_decide(sys, bopt, m);
  };
  auto objective_of = [&](const std::vector<std::int64_t>& xs) {
    std::int64_t s = 0;
    for (std::int64_t i : xs) s += inst.v[static_cast<std::size_t>(i - 1)];
    return s;
  };

  auto first = decide(hi_v);
  if (!first.has_value()) return res;
  res.feasible = true;
  std::vector<std::int64_t> best_set = *first;
  std::int64_t best = objective_of(*first), lo = lo_v;
  while (lo < best) {
    std::int64_t mid = lo + (best - lo) / 2;
    auto got = decide(mid);
    if (got.has_value()) {
      std::int64_t obj = objective_of(*got);
      if (obj > mid) throw std::logic_error("bip_solve: witness above threshold");
      best = obj;
      best_set = *got;
    } else {
      lo = mid + 1;
    }
  }
  res.objective = best;
  res.x.assign(n, 0);
  for (std::int64_t i : best_set) res.x[static_cast<std::size_t>(i - 1)] = 1;
  for (const auto& con : inst.cons) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (res.x[i]) s += con.a[i];
    if (s > con.u) throw std::logic_error("bip_solve: witness violates a constraint");
  }
  return res;
}

}  // namespace lowspace
