#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "lowspace/collide.hpp"
#include "lowspace/lists.hpp"
#include "lowspace/metrics.hpp"
#include "lowspace/rand_oracle.hpp"
#include "lowspace/rng.hpp"

namespace lowspace {

enum class LdOutcome {
  kFound,           // verified cross pair x_i == y_j
  kNoWithinBudget,  // no pair found before the step budget ran out (one-sided)
};

struct LdOptions {
  std::int64_t s = 1;                      // walk seeds per restart (space knob)
  std::optional<std::int64_t> p_bound;     // bound on pseudo-solutions p(x) + p(y)
  std::uint64_t step_budget = 0;           // 0 = derive from c_budget
  double c_budget = 4.0;                   // derived budget: c * n * sqrt(p/s) * log2(n)^2
  double c_collide = 32.0;                 // walk-engine step-budget constant
  OracleMode oracle_mode = OracleMode::kPrf;
  std::uint64_t seed = 1;
};

struct LdResult {
  LdOutcome outcome = LdOutcome::kNoWithinBudget;
  std::int64_t i = 0;         // witness index into x (valid iff kFound)
  std::int64_t j = 0;         // witness index into y (valid iff kFound)
  std::int64_t value = 0;     // the common value
  std::int64_t p_used = 0;    // pseudo-solution bound actually used
  bool p_measured = false;    // p_used was measured exhaustively, not supplied
  std::int64_t s_used = 0;    // seeds per restart after clamping
  std::int64_t walk_cap = 0;  // region cap per restart
  RunMetrics metrics;
};

// Searches for a common value between two length-n lists using O(s) tracked
// words.  Each restart interleaves the lists with a fresh random selector,
// walks the functional graph v -> oracle(z_v) from s random starts under a
// region cap of about (n/2) * sqrt(s/p), and inspects every reported collision
// vertex for a pair of in-neighbors carrying equal z-values on opposite sides.
// A reported pair is always verified against the lists; absence of a pair
// within the step budget is one-sided evidence only.
inline LdResult ld_search(const IntegerList& x, const IntegerList& y, const LdOptions& opt = {}) {
  LdResult res;
  RunMetrics& m = res.metrics;
  const std::int64_t n = x.size();
  if (y.size() != n) throw std::invalid_argument("ld_search: list lengths differ");
  if (n == 0) return res;

  std::int64_t p = 0;
  if (opt.p_bound.has_value()) {
    p = *opt.p_bound;
    if (p < 1) throw std::invalid_argument("ld_search: p_bound must be >= 1");
  } else {
    p = pair_pseudo_solution_count(x, y);
    res.p_measured = true;
  }
  res.p_used = p;

  // Diagonal pre-check; also the only place an i == j witness can come from.
  for (std::int64_t i = 1; i <= n; ++i) {
    std::int64_t xv = x.access(i, &m);
    if (xv == y.access(i, &m)) {
      res.outcome = LdOutcome::kFound;
      res.i = i;
      res.j = i;
      res.value = xv;
      res.s_used = 0;
      res.walk_cap = 0;
      return res;
    }
  }

  // More than n^2/p seeds cannot pay off; more seeds than the region cap
  // cannot even start.
  std::int64_t s = std::max<std::int64_t>(opt.s, 1);
  std::int64_t s_max = std::max<std::int64_t>(1, (n * n) / p);
  if (s > s_max) {
    s = s_max;
    ++m.clamps;
  }
  std::int64_t cap = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(
             0.5 * static_cast<double>(n) *
             std::sqrt(static_cast<double>(s) / static_cast<double>(p)))));
  if (s > cap) {
    s = cap;
    ++m.clamps;
  }
  res.s_used = s;
  res.walk_cap = cap;

  double log_n = std::max(1.0, std::log2(static_cast<double>(n)));
  std::uint64_t budget = opt.step_budget;
  if (budget == 0) {
    budget = static_cast<std::uint64_t>(std::ceil(
        opt.c_budget * static_cast<double>(n) *
        std::sqrt(static_cast<double>(p) / static_cast<double>(s)) * log_n * log_n));
  }

  const std::uint64_t oracle_seed = derive_subseed(opt.seed, "ld-oracle");
  SeededRng rng(derive_subseed(opt.seed, "ld-search"));

  auto z_at = [&](std::int64_t i, const MergeSelector& sel) {
    return merged_access(x, y, sel, i, &m);
  };

  while (m.steps() < budget) {
    ++m.restarts;
    // A fresh hash per restart is essential: with a frozen hash the walk graph
    // barely changes between restarts, and an instance whose sole pair lacks a
    // short return path under that one hash stays invisible forever.
    HashOracle oracle(mix64(oracle_seed ^ m.restarts), n, opt.oracle_mode);
    MergeSelector sel = MergeSelector::sample(rng, n);
    std::vector<std::int64_t> starts(static_cast<std::size_t>(s));
    for (auto& k : starts) k = rng.range(1, n);

    auto f = [&](std::int64_t v) { return oracle.eval(z_at(v, sel), nullptr); };
    CollideOptions copt;
    copt.c_t = opt.c_collide;
    CollisionReport rep = collide(n, f, starts, cap, copt, &m);

    TrackedAlloc scan(&m, 3 * s + 8);
    for (const CollisionEntry& e : rep.entries) {
      // side/index/value per in-neighbor; a true cross pair has equal z-values
      // on opposite sides (equal images alone may be oracle collisions).
      std::vector<std::tuple<int, std::int64_t, std::int64_t>> info;
      info.reserve(e.preds.size());
      for (std::int64_t u : e.preds) {
        info.emplace_back(sel.side_of(u), u, z_at(u, sel));
      }
      for (std::size_t a = 0; a < info.size(); ++a) {
        for (std::size_t b = a + 1; b < info.size(); ++b) {
          auto [sa, ia, za] = info[a];
          auto [sb, ib, zb] = info[b];
          if (sa == sb || za != zb) continue;
          std::int64_t xi = (sa == 0) ? ia : ib;
          std::int64_t yj = (sa == 0) ? ib : ia;
          if (x.access(xi, &m) != y.access(yj, &m)) continue;  // defensive re-check
          res.outcome = LdOutcome::kFound;
          res.i = xi;
          res.j = yj;
          res.value = za;
          return res;
        }
      }
    }
  }
  return res;
}

// Decision-problem convenience wrapper: measures the pseudo-solution count
// exhaustively (flagged in the result) and runs the search with the derived
// default budget.
inline LdResult ld_decide(const IntegerList& x, const IntegerList& y, std::int64_t s,
                          std::uint64_t seed, OracleMode mode = OracleMode::kPrf) {
  LdOptions opt;
  opt.s = s;
  opt.seed = seed;
  opt.oracle_mode = mode;
  return ld_search(x, y, opt);
}

}  // namespace lowspace
