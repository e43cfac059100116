#pragma once

#include <algorithm>
#include <cstdint>

namespace lowspace {

// Instrumentation counters threaded through every solver.
//
// step_evals counts step-function / hash-oracle evaluations; list_accesses counts
// reads of input lists.  Their sum is the unit in which all budgets are expressed,
// so scaling laws are measured in steps rather than wall clock.
//
// peak_tracked_words is the high-water mark of 64-bit words held in algorithm-owned
// working structures (marked-vertex indexes, walk records, transient scan tables).
// Inputs and emitted reports are not charged; they are bounded separately.
struct RunMetrics {
  std::uint64_t step_evals = 0;
  std::uint64_t list_accesses = 0;
  std::uint64_t field_ops = 0;  // modular multiplications in counting phases
  std::uint64_t restarts = 0;
  std::uint64_t retries = 0;   // witness-extraction retries, oracle fallbacks
  std::uint64_t aborts = 0;    // internal step-budget aborts
  std::uint64_t clamps = 0;    // parameter clamps (s against n^2/p, s against L)
  std::int64_t tracked_words = 0;
  std::int64_t peak_tracked_words = 0;
  double wall_time_s = 0.0;

  std::uint64_t steps() const { return step_evals + list_accesses; }

  void track_alloc(std::int64_t words) {
    tracked_words += words;
    peak_tracked_words = std::max(peak_tracked_words, tracked_words);
  }
  void track_free(std::int64_t words) { tracked_words -= words; }

  // Merge policy for batched runs: counters add, peaks take the max.
  void merge(const RunMetrics& o) {
    step_evals += o.step_evals;
    list_accesses += o.list_accesses;
    field_ops += o.field_ops;
    restarts += o.restarts;
    retries += o.retries;
    aborts += o.aborts;
    clamps += o.clamps;
    peak_tracked_words = std::max(peak_tracked_words, o.peak_tracked_words);
    wall_time_s += o.wall_time_s;
  }
};

// RAII helper so early returns cannot leak tracked words.
class TrackedAlloc {
 public:
  TrackedAlloc(RunMetrics* m, std::int64_t words) : m_(m), words_(words) {
    if (m_) m_->track_alloc(words_);
  }
  ~TrackedAlloc() {
    if (m_) m_->track_free(words_);
  }
  void grow(std::int64_t delta) {
    words_ += delta;
    if (m_) m_->track_alloc(delta);
  }
  TrackedAlloc(const TrackedAlloc&) = delete;
  TrackedAlloc& operator=(const TrackedAlloc&) = delete;

 private:
  RunMetrics* m_;
  std::int64_t words_;
};

}  // namespace lowspace
