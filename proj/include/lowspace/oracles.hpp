#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lowspace/collide.hpp"

namespace lowspace {

// Reference implementations with linear (or worse) memory and exhaustive
// enumeration.  They exist to pin down exact expected outputs for the
// sublinear algorithms and to power independent witness verification; none of
// them respect the low-space accounting.

// Full-memory counterpart of collide(): explores complete forward orbits of
// the starts in order, keeps the whole region in memory, and reports exact
// in-neighbor sets.  Commits the longest start prefix whose region fits cap.
inline CollisionReport collide_region_oracle(std::int64_t n, const std::vector<std::int64_t>& f,
                                             const std::vector<std::int64_t>& starts,
                                             std::int64_t cap) {
  if (static_cast<std::int64_t>(f.size()) != n)
    throw std::invalid_argument("collide_region_oracle: table size mismatch");
  std::unordered_set<std::int64_t> region;
  CollisionReport rep;
  for (std::int64_t k : starts) {
    if (k < 1 || k > n) throw std::invalid_argument("collide_region_oracle: start out of range");
    std::vector<std::int64_t> added;
    std::int64_t cur = k;
    while (region.count(cur) == 0) {
      region.insert(cur);
      added.push_back(cur);
      cur = f[static_cast<std::size_t>(cur - 1)];
      if (cur < 1 || cur > n)
        throw std::out_of_range("collide_region_oracle: table entry out of range");
    }
    if (static_cast<std::int64_t>(region.size()) > cap) {
      for (std::int64_t v : added) region.erase(v);
      rep.truncated = true;
      break;
    }
    ++rep.walks_committed;
  }
  rep.region_size = static_cast<std::int64_t>(region.size());

  std::map<std::int64_t, std::vector<std::int64_t>> preds;
  for (std::int64_t u : region) preds[f[static_cast<std::size_t>(u - 1)]].push_back(u);
  for (auto& [v, ps] : preds) {
    if (ps.size() < 2) continue;
    std::sort(ps.begin(), ps.end());
    rep.entries.push_back({v, ps});
  }
  return rep;
}

// All cross pairs (i, j) with x_i == y_j, sorted lexicographically.
inline std::vector<std::pair<std::int64_t, std::int64_t>> ld_pairs_oracle(
    const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) {
  std::unordered_map<std::int64_t, std::vector<std::int64_t>> where;
  for (std::size_t j = 0; j < y.size(); ++j) where[y[j]].push_back(static_cast<std::int64_t>(j + 1));
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto it = where.find(x[i]);
    if (it == where.end()) continue;
    for (std::int64_t j : it->second) out.emplace_back(static_cast<std::int64_t>(i + 1), j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Same answer via sort-and-merge instead of hashing; used to cross-check the
// hash-based oracle against itself.
inline std::vector<std::pair<std::int64_t, std::int64_t>> ld_pairs_oracle_sorted(
    const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) {
  auto tag = [](const std::vector<std::int64_t>& v) {
    std::vector<std::pair<std::int64_t, std::int64_t>> t;  // (value, index)
    for (std::size_t i = 0; i < v.size(); ++i) t.emplace_back(v[i], static_cast<std::int64_t>(i + 1));
    std::sort(t.begin(), t.end());
    return t;
  };
  auto tx = tag(x), ty = tag(y);
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  std::size_t a = 0, b = 0;
  while (a < tx.size() && b < ty.size()) {
    if (tx[a].first < ty[b].first) {
      ++a;
    } else if (tx[a].first > ty[b].first) {
      ++b;
    } else {
      std::size_t b2 = b;
      while (b2 < ty.size() && ty[b2].first == tx[a].first) ++b2;
      for (std::size_t aa = a; aa < tx.size() && tx[aa].first == tx[a].first; ++aa)
        for (std::size_t bb = b; bb < b2; ++bb) out.emplace_back(tx[aa].second, ty[bb].second);
      while (a < tx.size() && tx[a].first == ty[b].first) ++a;
      b = b2;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Exact number of subsets of w summing to t, by gray-code enumeration of all
// 2^n subsets with O(1) incremental sum updates.  Also reports the witness
// with the smallest bitmask when one exists.
struct SubsetSumOracleResult {
  std::uint64_t count = 0;
  std::optional<std::uint64_t> min_mask;
};

inline SubsetSumOracleResult subset_sum_oracle(const std::vector<std::int64_t>& w, std::int64_t t) {
  if (w.size() > 26) throw std::invalid_argument("subset_sum_oracle: n too large for enumeration");
  SubsetSumOracleResult res;
  std::uint64_t total = std::uint64_t{1} << w.size();
  std::uint64_t gray = 0;
  std::int64_t sum = 0;
  if (sum == t) {
    res.count = 1;
    res.min_mask = 0;
  }
  for (std::uint64_t i = 1; i < total; ++i) {
    unsigned b = static_cast<unsigned>(std::countr_zero(i));
    std::uint64_t bit = std::uint64_t{1} << b;
    gray ^= bit;
    sum += (gray & bit) ? w[b] : -w[b];
    if (sum == t) {
      ++res.count;
      if (!res.min_mask || gray < *res.min_mask) res.min_mask = gray;
    }
  }
  return res;
}

// Independent recount by meet-in-the-middle (sorted half sums + binary search);
// exercises a different code path than the gray-code walk.
inline std::uint64_t subset_sum_count_mitm(const std::vector<std::int64_t>& w, std::int64_t t) {
  std::size_t h = w.size() / 2;
  std::vector<std::int64_t> left(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(h));
  std::vector<std::int64_t> right(w.begin() + static_cast<std::ptrdiff_t>(h), w.end());
  auto sums = [](const std::vector<std::int64_t>& part) {
    std::vector<std::int64_t> out(std::size_t{1} << part.size(), 0);
    for (std::size_t mask = 1; mask < out.size(); ++mask) {
      unsigned b = static_cast<unsigned>(std::countr_zero(mask));
      out[mask] = out[mask & (mask - 1)] + part[b];
    }
    return out;
  };
  std::vector<std::int64_t> ls = sums(left), rs = sums(right);
  std::sort(rs.begin(), rs.end());
  std::uint64_t count = 0;
  for (std::int64_t v : ls) {
    auto [lo, hi] = std::equal_range(rs.begin(), rs.end(), t - v);
    count += static_cast<std::uint64_t>(hi - lo);
  }
  return count;
}

// Exhaustive knapsack: maximize the value sum over subsets with weight sum
// <= t.  Returns nullopt when no subset (including the empty one) fits.
struct KnapsackOracleResult {
  std::int64_t best_value = 0;
  std::uint64_t best_mask = 0;
};

inline std::optional<KnapsackOracleResult> knapsack_oracle(const std::vector<std::int64_t>& w,
                                                           const std::vector<std::int64_t>& v,
                                                           std::int64_t t) {
  if (w.size() != v.size() || w.size() > 26)
    throw std::invalid_argument("knapsack_oracle: bad sizes");
  std::optional<KnapsackOracleResult> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << w.size()); ++mask) {
    std::int64_t ws = 0, vs = 0;
    for (std::size_t b = 0; b < w.size(); ++b) {
      if ((mask >> b) & 1) {
        ws += w[b];
        vs += v[b];
      }
    }
    if (ws > t) continue;
    if (!best || vs > best->best_value) best = {vs, mask};
  }
  return best;
}

// Exhaustive 0/1 linear program: minimize <v,x> subject to <a_j,x> <= u_j.
struct BipOracleResult {
  std::int64_t best_objective = 0;
  std::uint64_t best_mask = 0;
};

inline std::optional<BipOracleResult> bip_oracle(
    const std::vector<std::int64_t>& v,
    const std::vector<std::vector<std::int64_t>>& cons_a,
    const std::vector<std::int64_t>& cons_u) {
  if (v.size() > 26 || cons_a.size() != cons_u.size())
    throw std::invalid_argument("bip_oracle: bad sizes");
  std::optional<BipOracleResult> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << v.size()); ++mask) {
    bool ok = true;
    for (std::size_t j = 0; j < cons_a.size() && ok; ++j) {
      std::int64_t s = 0;
      for (std::size_t b = 0; b < v.size(); ++b)
        if ((mask >> b) & 1) s += cons_a[j][b];
      ok = s <= cons_u[j];
    }
    if (!ok) continue;
    std::int64_t obj = 0;
    for (std::size_t b = 0; b < v.size(); ++b)
      if ((mask >> b) & 1) obj += v[b];
    if (!best || obj < best->best_objective) best = {obj, mask};
  }
  return best;
}

// Exhaustive k-list search: indices (1-based, one per list) with entries
// summing to t, or nullopt.  Lexicographically first tuple for determinism.
inline std::optional<std::vector<std::int64_t>> ksum_oracle(
    const std::vector<std::vector<std::int64_t>>& lists, std::int64_t t) {
  double combos = 1.0;
  for (const auto& l : lists) combos *= static_cast<double>(l.size());
  if (combos > 2e8) throw std::invalid_argument("ksum_oracle: search space too large");
  std::vector<std::int64_t> choice(lists.size());
  auto rec = [&](auto&& self, std::size_t d, std::int64_t sum) -> bool {
    if (d == lists.size()) return sum == t;
    for (std::int64_t i = 1; i <= static_cast<std::int64_t>(lists[d].size()); ++i) {
      choice[d] = i;
      if (self(self, d + 1, sum + lists[d][static_cast<std::size_t>(i - 1)])) return true;
    }
    return false;
  };
  if (rec(rec, 0, 0)) return choice;
  return std::nullopt;
}

}  // namespace lowspace
