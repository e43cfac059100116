// Walks through one planted two-list search end to end: build two lists that
// share exactly one value, run the collision-walk search at a few space
// settings, and show how tracked memory and step counts move against s.

#include <algorithm>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <vector>

#include "lowspace/generators.hpp"
#include "lowspace/list_disjointness.hpp"
#include "lowspace/lists.hpp"

int main() {
  lowspace::GeneratorConfig cfg;
  cfg.family = "planted-ld";
  cfg.n = 1024;
  cfg.m = 4 * cfg.n;
  cfg.seed = 42;
  const lowspace::GeneratedInstance g = lowspace::generate_instance(cfg);
  const auto& x = g.instance.ld_x;
  const auto& y = g.instance.ld_y;

  std::printf("two lists of n=%lld values drawn from [1, %lld],\n", cfg.n, cfg.m);
  std::printf("with exactly one value planted in both (hidden at x[%lld], y[%lld])\n\n",
              g.truth.at("i").get<std::int64_t>(), g.truth.at("j").get<std::int64_t>());

  constexpr int kRuns = 7;
  std::printf("%6s %8s %14s %10s\n", "s", "found", "median steps", "words");
  for (std::int64_t s : {1, 4, 16, 64}) {
    std::vector<std::uint64_t> steps;
    std::int64_t words = 0;
    int found = 0;
    lowspace::LdResult first_hit;
    for (int run = 0; run < kRuns; ++run) {
      lowspace::LdOptions opt;
      opt.s = s;
      opt.seed = 100 + static_cast<std::uint64_t>(run);
      const lowspace::LdResult r = lowspace::ld_search(lowspace::make_explicit_list(x),
                                                       lowspace::make_explicit_list(y), opt);
      if (r.outcome == lowspace::LdOutcome::kFound) {
        if (found == 0) first_hit = r;
        ++found;
        steps.push_back(r.metrics.steps());
      }
      words = std::max(words, r.metrics.peak_tracked_words);
    }
    std::sort(steps.begin(), steps.end());
    const std::uint64_t med = steps.empty() ? 0 : steps[steps.size() / 2];
    std::printf("%6" PRId64 " %5d/%-2d %14" PRIu64 " %10" PRId64 "\n", s, found, kRuns, med,
                words);
    if (s == 1 && found > 0) {
      std::printf("       -> witness x[%" PRId64 "] = y[%" PRId64 "] = %" PRId64 "\n",
                  first_hit.i, first_hit.j, first_hit.value);
    }
  }

  std::printf("\ntracked words grow linearly with s while median steps fall:\n");
  std::printf("the same search runs in a fixed handful of machine words at s=1.\n");
  return 0;
}
