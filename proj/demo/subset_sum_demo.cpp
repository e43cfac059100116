// Solves one random subset-sum instance with the combined strategy and prints
// which phase decided it, the witness, and the resource counters.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <vector>

#include "lowspace/generators.hpp"
#include "lowspace/subset_sum.hpp"

int main() {
  lowspace::GeneratorConfig cfg;
  cfg.family = "random-subset-sum";
  cfg.n = 22;
  cfg.bits = 22;
  cfg.seed = 2024;
  const lowspace::GeneratedInstance g = lowspace::generate_instance(cfg);
  const auto& w = g.instance.subset_sum.w;
  const std::int64_t t = g.instance.subset_sum.t;

  std::printf("weights (n=%zu):", w.size());
  for (std::int64_t wi : w) std::printf(" %" PRId64, wi);
  std::printf("\ntarget t = %" PRId64 "\n\n", t);

  lowspace::SssOptions opt;
  opt.seed = 5;
  const lowspace::SssResult r = lowspace::sss_solve(w, t, opt);

  const char* phase = "none";
  switch (r.solved_by) {
    case lowspace::SssPhase::kNone: phase = "none"; break;
    case lowspace::SssPhase::kQuick: phase = "quick scan"; break;
    case lowspace::SssPhase::kSmallRange: phase = "small-range counting"; break;
    case lowspace::SssPhase::kMitm: phase = "meet-in-the-middle walk"; break;
  }

  if (r.yes) {
    std::printf("decision: YES  (by %s)\n", phase);
    std::printf("witness indices:");
    std::int64_t sum = 0;
    for (std::int64_t i : r.witness) {
      std::printf(" %" PRId64, i);
      sum += w[static_cast<std::size_t>(i - 1)];
    }
    std::printf("\nwitness sum = %" PRId64 " (matches t: %s)\n", sum,
                sum == t ? "yes" : "NO");
  } else if (r.certified_no) {
    std::printf("decision: NO (certified by exact counting, by %s)\n", phase);
  } else {
    std::printf("decision: no solution found within budget (one-sided)\n");
  }

  std::printf("\ncounters: %" PRIu64 " steps, %" PRIu64 " field ops, %" PRIu64
              " restarts, peak %" PRId64 " tracked words\n",
              r.metrics.steps(), r.metrics.field_ops, r.metrics.restarts,
              r.metrics.peak_tracked_words);
  std::printf("the subset itself is recovered index by index, never stored as a table.\n");
  return 0;
}
