#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lowspace/metrics.hpp"
#include "lowspace/rng.hpp"

namespace lowspace {

// Read-only integer list with 1-based random access.  Entries may be stored
// explicitly or computed on demand (implicit lists over exponentially many
// subset sums), so algorithms must treat access() as the only interface and
// every read is charged to RunMetrics::list_accesses.  Explicit lists bypass
// the type-erased accessor; the walk engines sit in access() inner loops.
class IntegerList {
 public:
  IntegerList() = default;
  IntegerList(std::int64_t n, std::function<std::int64_t(std::int64_t)> at, bool implicit)
      : n_(n), at_(std::move(at)), implicit_(implicit) {}
  explicit IntegerList(std::shared_ptr<const std::vector<std::int64_t>> values)
      : n_(static_cast<std::int64_t>(values->size())),
        store_(std::move(values)),
        data_(store_->data()) {}

  std::int64_t size() const { return n_; }
  bool implicit() const { return implicit_; }

  std::int64_t access(std::int64_t i, RunMetrics* m = nullptr) const {
    if (i < 1 || i > n_) throw std::out_of_range("IntegerList::access: index out of range");
    if (m) ++m->list_accesses;
    if (data_ != nullptr) return data_[i - 1];
    return at_(i);
  }

 private:
  std::int64_t n_ = 0;
  std::function<std::int64_t(std::int64_t)> at_;
  bool implicit_ = false;
  std::shared_ptr<const std::vector<std::int64_t>> store_;
  const std::int64_t* data_ = nullptr;
};

inline IntegerList make_explicit_list(std::vector<std::int64_t> values) {
  return IntegerList(std::make_shared<const std::vector<std::int64_t>>(std::move(values)));
}

// Implicit list of all 2^|weights| signed subset sums:
//   entry(i) = offset + sign * sum of weights[b] over set bits b of (i - 1).
// Each access costs O(|weights|) arithmetic and O(1) extra words.
inline IntegerList make_subset_sum_list(std::vector<std::int64_t> weights, int sign,
                                        std::int64_t offset) {
  if (weights.size() > 62) throw std::invalid_argument("make_subset_sum_list: too many weights");
  if (sign != 1 && sign != -1) throw std::invalid_argument("make_subset_sum_list: sign must be +-1");
  auto store = std::make_shared<std::vector<std::int64_t>>(std::move(weights));
  std::int64_t n = std::int64_t{1} << store->size();
  return IntegerList(
      n,
      [store, sign, offset](std::int64_t i) {
        std::uint64_t mask = static_cast<std::uint64_t>(i - 1);
        std::int64_t sum = 0;
        while (mask != 0) {
          unsigned b = static_cast<unsigned>(std::countr_zero(mask));
          sum += (*store)[b];
          mask &= mask - 1;
        }
        return offset + sign * sum;
      },
      true);
}

// Random index-splitter used to interleave two lists into one sequence.
// A fresh draw keeps index i on the first list iff <r_mask, bin(i)> = r_b
// over GF(2); with probability exactly 1/4 a fixed pair (i, j) is split across
// the two lists with i kept and j swapped in.
struct MergeSelector {
  std::uint64_t r_mask = 0;
  int r_b = 0;

  static MergeSelector sample(SeededRng& rng, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("MergeSelector::sample: n must be >= 1");
    int width = std::bit_width(static_cast<std::uint64_t>(n));
    MergeSelector sel;
    sel.r_mask = rng.next() & ((width >= 64) ? ~0ULL : ((std::uint64_t{1} << width) - 1));
    sel.r_b = rng.coin() ? 1 : 0;
    return sel;
  }

  // 0 = take the first list at index i, 1 = take the second.
  int side_of(std::int64_t i) const {
    int parity = std::popcount(r_mask & static_cast<std::uint64_t>(i)) & 1;
    return parity == r_b ? 0 : 1;
  }
};

inline std::int64_t merged_access(const IntegerList& x, const IntegerList& y,
                                  const MergeSelector& sel, std::int64_t i,
                                  RunMetrics* m = nullptr) {
  return sel.side_of(i) == 0 ? x.access(i, m) : y.access(i, m);
}

// Number of (ordered) index pairs mapped to equal values:
//   p(list) = sum over values v of (multiplicity of v)^2, always >= n.
// Diagnostic helper, not part of the low-space accounting.
inline std::int64_t pseudo_solution_count(const IntegerList& list) {
  std::unordered_map<std::int64_t, std::int64_t> mult;
  mult.reserve(static_cast<std::size_t>(list.size()));
  for (std::int64_t i = 1; i <= list.size(); ++i) ++mult[list.access(i)];
  std::int64_t p = 0;
  for (const auto& [v, c] : mult) p += c * c;
  return p;
}

// Pair variant used to size walks over a merged sequence: p(x, y) = p(x) + p(y).
inline std::int64_t pair_pseudo_solution_count(const IntegerList& x, const IntegerList& y) {
  return pseudo_solution_count(x) + pseudo_solution_count(y);
}

}  // namespace lowspace
