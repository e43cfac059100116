#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "lowspace/instances.hpp"
#include "lowspace/oracles.hpp"
#include "lowspace/rng.hpp"

namespace lowspace {

// Configuration for the deterministic instance generators.  Families:
//   random-ld          two uniform lists over [1, m]           (m default 4n)
//   planted-ld         collision-free uniform lists plus exactly one shared
//                      value                                   (m default 8n^2)
//   random-subset-sum  uniform weights, target = a random subset's sum, so
//                      the instance is YES by construction
//   planted-ksum       k uniform lists over [1, m] with a planted tuple;
//                      m must be a multiple of n               (m default 4n)
//   bip-random         uniform small coefficients with attainable bounds
struct GeneratorConfig {
  std::string family;
  std::int64_t n = 0;
  std::int64_t m = 0;      // list domain (0 = family default)
  int k = 2;               // number of ksum lists
  int d = 1;               // number of bip constraints
  std::int64_t range = 5;  // bip coefficients drawn from [-range, range]
  int bits = 0;            // subset-sum weight bits (0 = default min(n, 40))
  std::uint64_t seed = 1;
};

struct GeneratedInstance {
  Instance instance;
  nlohmann::ordered_json truth;  // ground-truth sidecar (plants, oracle answers)
};

inline GeneratedInstance generate_instance(const GeneratorConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("generator: n must be >= 1");
  const std::int64_t n = cfg.n;
  SeededRng rng(derive_subseed(cfg.seed, cfg.family.c_str()));
  GeneratedInstance out;
  nlohmann::ordered_json& truth = out.truth;
  truth["family"] = cfg.family;
  truth["n"] = n;
  truth["seed"] = cfg.seed;

  if (cfg.family == "random-ld") {
    const std::int64_t m = cfg.m > 0 ? cfg.m : 4 * n;
    out.instance.type = InstanceType::kLd;
    auto draw = [&] {
      std::vector<std::int64_t> v(static_cast<std::size_t>(n));
      for (auto& e : v) e = rng.range(1, m);
      return v;
    };
    out.instance.ld_x = draw();
    out.instance.ld_y = draw();
    truth["m"] = m;
    if (n <= 100000) {
      truth["solution_pairs"] =
          ld_pairs_oracle(out.instance.ld_x, out.instance.ld_y).size();
    }
    return out;
  }

  if (cfg.family == "planted-ld") {
    // Rejection keeps the lists collision-free before the plant, so the
    // planted pair is the unique shared value by construction.
    const std::int64_t m = cfg.m > 0 ? cfg.m : 8 * n * n;
    if (m < 2 * n) throw std::invalid_argument("planted-ld: domain too small for rejection");
    out.instance.type = InstanceType::kLd;
    std::unordered_set<std::int64_t> used;
    auto draw_fresh = [&] {
      for (;;) {
        std::int64_t v = rng.range(1, m);
        if (used.insert(v).second) return v;
      }
    };
    out.instance.ld_x.resize(static_cast<std::size_t>(n));
    out.instance.ld_y.resize(static_cast<std::size_t>(n));
    for (auto& e : out.instance.ld_x) e = draw_fresh();
    for (auto& e : out.instance.ld_y) e = draw_fresh();
    const std::int64_t i = rng.range(1, n);
    const std::int64_t j = rng.range(1, n);
    out.instance.ld_y[static_cast<std::size_t>(j - 1)] =
        out.instance.ld_x[static_cast<std::size_t>(i - 1)];
    truth["m"] = m;
    truth["i"] = i;
    truth["j"] = j;
    truth["value"] = out.instance.ld_x[static_cast<std::size_t>(i - 1)];
    return out;
  }

  if (cfg.family == "random-subset-sum") {
    const int bits = cfg.bits > 0 ? cfg.bits : static_cast<int>(std::min<std::int64_t>(n, 40));
    if (bits > 52) throw std::invalid_argument("random-subset-sum: bits must be <= 52");
    out.instance.type = InstanceType::kSubsetSum;
    auto& w = out.instance.subset_sum.w;
    w.resize(static_cast<std::size_t>(n));
    for (auto& e : w) e = rng.range(1, std::int64_t{1} << bits);
    std::vector<std::int64_t> subset;
    std::int64_t t = 0;
    for (std::int64_t idx = 1; idx <= n; ++idx) {
      if (rng.coin()) {
        subset.push_back(idx);
        t += w[static_cast<std::size_t>(idx - 1)];
      }
    }
    out.instance.subset_sum.t = t;
    truth["bits"] = bits;
    truth["subset"] = subset;
    return out;
  }

  if (cfg.family == "planted-ksum") {
    if (cfg.k < 2) throw std::invalid_argument("planted-ksum: k must be >= 2");
    const std::int64_t m = cfg.m > 0 ? cfg.m : 4 * n;
    if (m % n != 0) {
      throw std::invalid_argument("planted-ksum: m must be a multiple of n");
    }
    out.instance.type = InstanceType::kKsum;
    KSumInstance& inst = out.instance.ksum;
    inst.k = cfg.k;
    inst.m = m;
    inst.lists.resize(static_cast<std::size_t>(cfg.k));
    for (auto& w : inst.lists) {
      w.resize(static_cast<std::size_t>(n));
      for (auto& e : w) e = rng.range(1, m);
    }
    std::vector<std::int64_t> planted;
    std::int64_t t = 0;
    for (int j = 0; j < cfg.k; ++j) {
      const std::int64_t idx = rng.range(1, n);
      planted.push_back(idx);
      t += inst.lists[static_cast<std::size_t>(j)][static_cast<std::size_t>(idx - 1)];
    }
    inst.t = t;
    truth["m"] = m;
    truth["k"] = cfg.k;
    truth["indices"] = planted;
    return out;
  }

  if (cfg.family == "bip-random") {
    if (cfg.d < 0) throw std::invalid_argument("bip-random: d must be >= 0");
    if (cfg.range < 1) throw std::invalid_argument("bip-random: range must be >= 1");
    out.instance.type = InstanceType::kBip;
    BipInstance& inst = out.instance.bip;
    inst.v.resize(static_cast<std::size_t>(n));
    for (auto& e : inst.v) e = rng.range(-cfg.range, cfg.range);
    for (int c = 0; c < cfg.d; ++c) {
      BipConstraint con;
      con.a.resize(static_cast<std::size_t>(n));
      std::int64_t lo = 0, hi = 0;
      for (auto& e : con.a) {
        e = rng.range(-cfg.range, cfg.range);
        lo += std::min<std::int64_t>(e, 0);
        hi += std::max<std::int64_t>(e, 0);
      }
      con.u = rng.range(lo, hi);  // always attainable by some sign pattern
      inst.cons.push_back(std::move(con));
    }
    truth["d"] = cfg.d;
    truth["range"] = cfg.range;
    if (n <= 16) {
      std::vector<std::vector<std::int64_t>> cons_a;
      std::vector<std::int64_t> cons_u;
      for (const auto& c : inst.cons) {
        cons_a.push_back(c.a);
        cons_u.push_back(c.u);
      }
      auto best = bip_oracle(inst.v, cons_a, cons_u);
      truth["feasible"] = best.has_value();
      if (best) {
        truth["objective"] = best->best_objective;
        truth["mask"] = best->best_mask;
      }
    }
    return out;
  }

  throw std::invalid_argument("generator: unknown family \"" + cfg.family + "\"");
}

}  // namespace lowspace
