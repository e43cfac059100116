#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <unordered_map>
#include <vector>

#include "lowspace/metrics.hpp"

namespace lowspace {

struct BudgetExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Result of exact rho-shape recovery from a single start vertex:
// mu = tail length, lambda = cycle length, entry = first cycle vertex reached.
// When mu >= 1 the two distinct in-neighbors of entry on the walk are reported
// (tail predecessor and cycle predecessor); when mu = 0 the start lies on the
// cycle and no colliding pair exists along this walk.
struct CycleInfo {
  std::int64_t mu = 0;
  std::int64_t lambda = 0;
  std::int64_t entry = 0;
  bool has_colliding_pair = false;
  std::int64_t pair_tail = 0;   // f^(mu-1)(start)
  std::int64_t pair_cycle = 0;  // f^(mu+lambda-1)(start)
};

// Two-pointer cycle finding with O(1) tracked words and <= ~5(mu+lambda) step
// evaluations.  Throws BudgetExhausted if step_budget evaluations are exceeded.
template <class F>
CycleInfo floyd_find(std::int64_t n, F&& f, std::int64_t start, std::uint64_t step_budget,
                     RunMetrics* m = nullptr) {
  if (start < 1 || start > n) throw std::invalid_argument("floyd_find: start out of range");
  std::uint64_t used = 0;
  auto eval = [&](std::int64_t v) {
    if (used >= step_budget) throw BudgetExhausted("floyd_find: step budget exhausted");
    ++used;
    if (m) ++m->step_evals;
    std::int64_t r = f(v);
    if (r < 1 || r > n) throw std::out_of_range("floyd_find: step function left the domain");
    return r;
  };

  std::int64_t tortoise = eval(start);
  std::int64_t hare = eval(tortoise);
  while (tortoise != hare) {
    tortoise = eval(tortoise);
    hare = eval(eval(hare));
  }

  CycleInfo info;
  std::int64_t slow = start;
  std::int64_t prev_slow = -1;
  while (slow != hare) {
    prev_slow = slow;
    slow = eval(slow);
    hare = eval(hare);
    ++info.mu;
  }
  info.entry = slow;

  info.lambda = 1;
  std::int64_t cur = eval(info.entry);
  while (cur != info.entry) {
    cur = eval(cur);
    ++info.lambda;
  }

  if (info.mu >= 1) {
    info.has_colliding_pair = true;
    info.pair_tail = prev_slow;
    std::int64_t cyc = info.entry;
    for (std::int64_t i = 1; i < info.lambda; ++i) cyc = eval(cyc);
    info.pair_cycle = cyc;
  }
  return info;
}

struct CollisionEntry {
  std::int64_t vertex = 0;
  std::vector<std::int64_t> preds;  // sorted, distinct in-neighbors inside the explored region
};

struct CollisionReport {
  std::vector<CollisionEntry> entries;  // vertices with >= 2 known in-neighbors, sorted by vertex
  std::int64_t region_size = 0;         // exact number of vertices reachable from committed starts
  std::int64_t walks_committed = 0;     // length of the committed start prefix
  bool truncated = false;               // a walk would have pushed the region past the cap
  bool aborted = false;                 // step-budget safety net fired
  std::uint64_t steps_used = 0;
};

struct CollideOptions {
  double c_t = 32.0;                     // step-budget constant
  std::uint64_t step_budget_override = 0;  // 0 = derive from c_t
};

namespace detail {

// Multi-start collision explorer.
//
// Starts are processed in order; each walk runs until it hits a marked vertex
// (any earlier start, or a recorded collision vertex) or detects its own cycle
// via power-of-two checkpointing.  Tracked state is O(#starts):
//   marked    - starts so far plus collision vertices,
//   segments  - explored paths as (start, length, end) with every endpoint
//               marked and no marked vertex in any interior,
//   preds_of  - known in-neighbors of marked collision/stop vertices.
// When a walk stops on a marked vertex, replaying it against each segment that
// terminates there locates the exact first merge vertex; the crossed segment is
// split so the interior invariant is preserved.  A walk that would push the
// region size past the cap is discarded and exploration stops, so the committed
// region is exactly the reachable set of the longest start prefix that fits.
template <class F>
class CollideEngine {
 public:
  CollideEngine(std::int64_t n, F& f, const std::vector<std::int64_t>& starts, std::int64_t cap,
                const CollideOptions& opt, RunMetrics* m)
      : n_(n), f_(f), starts_(starts), cap_(cap), m_(m), tracked_(m, 24) {
    std::int64_t s = static_cast<std::int64_t>(starts_.size());
    if (opt.step_budget_override != 0) {
      budget_ = opt.step_budget_override;
    } else {
      double logn = std::max(1.0, std::log2(static_cast<double>(std::max<std::int64_t>(n_, 2))));
      double width = std::min(static_cast<double>(s), logn);
      double b = opt.c_t * static_cast<double>(cap_) * std::log2(static_cast<double>(s) + 1.0) * width;
      budget_ = static_cast<std::uint64_t>(std::ceil(std::max(b, 64.0)));
    }
  }

  CollisionReport run() {
    for (std::int64_t k : starts_) {
      if (k < 1 || k > n_) throw std::invalid_argument("collide: start out of range");
      if (stop_) break;
      mark(k);
      process_walk(k);
      if (!stop_) ++report_.walks_committed;
    }
    finish();
    return std::move(report_);
  }

 private:
  struct Segment {
    std::int64_t start, len, end;
  };

  std::int64_t eval(std::int64_t v) {
    ++steps_;
    if (m_) ++m_->step_evals;
    std::int64_t r = f_(v);
    if (r < 1 || r > n_) throw std::out_of_range("collide: step function left the domain");
    return r;
  }

  // marked_ stays tiny (at most 2 * #starts entries), so a sorted vector with
  // binary search beats hashing in the per-step membership test.
  bool is_marked(std::int64_t v) const {
    auto pos = std::lower_bound(marked_.begin(), marked_.end(), v);
    return pos != marked_.end() && *pos == v;
  }

  void mark(std::int64_t v) {
    auto pos = std::lower_bound(marked_.begin(), marked_.end(), v);
    if (pos == marked_.end() || *pos != v) {
      marked_.insert(pos, v);
      tracked_.grow(1);
    }
  }

  void preds_add(std::int64_t v, std::int64_t p) {
    auto [it, fresh] = preds_of_.try_emplace(v);
    if (fresh) tracked_.grow(2);
    auto& vec = it->second;
    auto pos = std::lower_bound(vec.begin(), vec.end(), p);
    if (pos == vec.end() || *pos != p) {
      vec.insert(pos, p);
      tracked_.grow(1);
    }
  }

  void add_segment(std::int64_t s, std::int64_t l, std::int64_t e) {
    segments_.push_back({s, l, e});
    tracked_.grow(3);
  }

  // Replace segment idx by its two halves around the interior vertex v at
  // position qpos; v must already be marked by the caller.
  void split_segment(std::size_t idx, std::int64_t qpos, std::int64_t v) {
    Segment old = segments_[idx];
    segments_[idx] = {old.start, qpos, v};
    segments_.push_back({v, old.len - qpos, old.end});
    tracked_.grow(3);
  }

  struct Replay {
    std::int64_t a = 0;       // merge position on the fresh walk
    std::int64_t qpos = 0;    // merge position on the segment
    std::int64_t meet = 0;    // merge vertex
    std::int64_t p_pred = -1; // walk predecessor of meet (valid iff a >= 1)
    std::int64_t q_pred = -1; // segment predecessor of meet (valid iff qpos >= 1)
    std::size_t seg = 0;
  };

  // Re-walk the fresh path (length c from k) against segment idx, which ends at
  // the stop vertex.  Both paths share their suffix, so after aligning the
  // longer one the first pointer equality is the exact first common vertex.
  Replay replay_against(std::int64_t k, std::int64_t c, std::size_t idx) {
    const Segment& q = segments_[idx];
    Replay r;
    r.seg = idx;
    std::int64_t pa = k, qb = q.start;
    std::int64_t off_p = 0, off_q = 0;
    if (c >= q.len) {
      off_p = c - q.len;
      for (std::int64_t i = 0; i < off_p; ++i) {
        r.p_pred = pa;
        pa = eval(pa);
      }
    } else {
      off_q = q.len - c;
      for (std::int64_t i = 0; i < off_q; ++i) {
        r.q_pred = qb;
        qb = eval(qb);
      }
    }
    std::int64_t ls = 0;
    while (pa != qb) {
      r.p_pred = pa;
      r.q_pred = qb;
      pa = eval(pa);
      qb = eval(qb);
      ++ls;
    }
    r.meet = pa;
    r.a = off_p + ls;
    r.qpos = off_q + ls;
    return r;
  }

  void overflow_stop() {
    report_.truncated = true;
    stop_ = true;
  }

  void process_walk(std::int64_t k) {
    // Walk caps: a committable merge stops within region + remainder <= 2*cap
    // steps, and power-of-two cycle detection fires within 2*max(mu,lambda) +
    // lambda <= 3*cap steps, so exceeding hard_cap proves the walk cannot fit.
    const std::int64_t hard_cap = 3 * cap_ + 3;
    std::int64_t cur = k, c = 0;
    std::int64_t checkpoint = k, cp_step = 0, next_power = 1;
    for (;;) {
      if (steps_ >= budget_) {
        report_.aborted = true;
        if (m_) ++m_->aborts;
        stop_ = true;
        return;
      }
      if (c >= hard_cap) {
        overflow_stop();
        return;
      }
      std::int64_t nxt = eval(cur);
      ++c;
      if (is_marked(nxt)) {
        commit_marked_hit(k, c, nxt, cur);
        return;
      }
      if (nxt == checkpoint) {
        commit_self_cycle(k, c - cp_step);
        return;
      }
      if (c == next_power) {
        checkpoint = nxt;
        cp_step = c;
        next_power <<= 1;
      }
      cur = nxt;
    }
  }

  // The walk closed on itself: recover (mu, lambda, entry) exactly and commit
  // the tail and cycle as two segments meeting at the entry vertex.
  void commit_self_cycle(std::int64_t k, std::int64_t lambda) {
    std::int64_t p2 = k;
    for (std::int64_t i = 0; i < lambda; ++i) p2 = eval(p2);
    std::int64_t p1 = k, prev1 = -1, prev2 = -1, mu = 0;
    while (p1 != p2) {
      prev1 = p1;
      prev2 = p2;
      p1 = eval(p1);
      p2 = eval(p2);
      ++mu;
    }
    if (mu == 0) throw std::logic_error("collide: start on own cycle must stop as a marked hit");
    if (report_.region_size + mu + lambda > cap_) {
      overflow_stop();
      return;
    }
    std::int64_t entry = p1;
    preds_add(entry, prev1);
    preds_add(entry, prev2);
    mark(entry);
    add_segment(k, mu, entry);
    add_segment(entry, lambda, entry);
    report_.region_size += mu + lambda;
  }

  // The walk stopped on marked vertex w after c steps, with last as the final
  // predecessor.  Replay against every segment ending at w; the smallest merge
  // position identifies the true first contact with the explored region.
  void commit_marked_hit(std::int64_t k, std::int64_t c, std::int64_t w, std::int64_t last) {
    Replay best;
    best.a = c;
    best.meet = w;
    best.p_pred = last;
    best.qpos = -1;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      if (segments_[i].end != w) continue;
      Replay r = replay_against(k, c, i);
      if (r.a < best.a) best = r;
    }

    if (best.a == 0) {
      // The start itself lies inside the region; expose it as a segment
      // boundary so interiors stay free of marked vertices, and record its
      // now-terminal in-segment predecessor.  Nothing new is explored.
      if (best.qpos > 0) {
        preds_add(k, best.q_pred);
        split_segment(best.seg, best.qpos, k);
      }
      return;
    }
    if (report_.region_size + best.a > cap_) {
      overflow_stop();
      return;
    }
    if (best.a < c) {
      // First contact inside a segment interior: record both in-neighbors of
      // the merge vertex and split the crossed segment around it.
      preds_add(best.meet, best.p_pred);
      preds_add(best.meet, best.q_pred);
      mark(best.meet);
      split_segment(best.seg, best.qpos, best.meet);
      add_segment(k, best.a, best.meet);
    } else {
      // First contact is the stop vertex itself.
      preds_add(w, last);
      add_segment(k, c, w);
    }
    report_.region_size += best.a;
  }

  void finish() {
    report_.steps_used = steps_;
    for (auto& [v, preds] : preds_of_) {
      if (preds.size() >= 2) report_.entries.push_back({v, preds});
    }
    std::sort(report_.entries.begin(), report_.entries.end(),
              [](const CollisionEntry& a, const CollisionEntry& b) { return a.vertex < b.vertex; });
  }

  std::int64_t n_;
  F& f_;
  const std::vector<std::int64_t>& starts_;
  std::int64_t cap_;
  RunMetrics* m_;
  TrackedAlloc tracked_;
  std::uint64_t budget_ = 0;
  std::uint64_t steps_ = 0;
  bool stop_ = false;
  std::vector<std::int64_t> marked_;
  std::vector<Segment> segments_;
  std::unordered_map<std::int64_t, std::vector<std::int64_t>> preds_of_;
  CollisionReport report_;
};

}  // namespace detail

// Explores the union of walks from `starts` under step function f over [1, n],
// subject to the region cap, and reports every explored vertex with at least
// two known in-neighbors together with those in-neighbors.  Tracked memory is
// O(|starts|) words; the committed region is exactly the reachable set of the
// longest prefix of starts whose union fits within cap.
template <class F>
CollisionReport collide(std::int64_t n, F&& f, const std::vector<std::int64_t>& starts,
                        std::int64_t cap, const CollideOptions& opt = {},
                        RunMetrics* m = nullptr) {
  if (cap < 1) throw std::invalid_argument("collide: cap must be >= 1");
  if (static_cast<std::int64_t>(starts.size()) > cap)
    throw std::invalid_argument("collide: more starts than the region cap");
  detail::CollideEngine<F> engine(n, f, starts, cap, opt, m);
  return engine.run();
}

// Full-memory reference walk: emits vertices of the walks from each start in
// order, cutting a walk immediately after emitting an element whose associated
// z-value already occurred at a strictly earlier position of the trace, and
// truncating the whole trace at cap elements.  Linear memory by design; used
// to pin down the exact sequence semantics the sublinear engine must match.
template <class F, class Z>
std::vector<std::int64_t> walk_trace(std::int64_t n, F&& f, Z&& z_at,
                                     const std::vector<std::int64_t>& starts, std::int64_t cap,
                                     RunMetrics* m = nullptr) {
  std::vector<std::int64_t> trace;
  std::unordered_set<std::int64_t> seen;
  for (std::int64_t k : starts) {
    if (k < 1 || k > n) throw std::invalid_argument("walk_trace: start out of range");
    std::int64_t cur = k;
    for (;;) {
      if (static_cast<std::int64_t>(trace.size()) >= cap) return trace;
      std::int64_t zv = z_at(cur);
      trace.push_back(cur);
      if (seen.count(zv) != 0) break;
      seen.insert(zv);
      if (m) ++m->step_evals;
      cur = f(cur);
      if (cur < 1 || cur > n) throw std::out_of_range("walk_trace: step function left the domain");
    }
  }
  return trace;
}

}  // namespace lowspace
