#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lowspace/generators.hpp"
#include "lowspace/instances.hpp"
#include "lowspace/ksum.hpp"
#include "lowspace/list_disjointness.hpp"
#include "lowspace/reductions.hpp"
#include "lowspace/subset_sum.hpp"

namespace lowspace {

// One benchmark suite: a generator family, a solver, and a parameter grid.
// The bench runs trials on a deterministic seed schedule derived from the
// master seed, so reruns reproduce every row exactly.
struct BenchSuite {
  std::string family;
  std::string algorithm;  // ld | subsetsum | ksum-random | ksum-mitm | knapsack | bip
  std::vector<std::int64_t> ns;
  std::vector<std::int64_t> ss = {1};
  int trials = 5;
  std::int64_t m = 0;
  int k = 2;
  int d = 1;
  std::int64_t range = 5;
  int bits = 0;
};

struct BenchResult {
  std::string csv;
  nlohmann::ordered_json summary;
};

// Least-squares slope of log2(y) on log2(x); the fitted scaling exponent.
inline double fit_log_log_slope(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 2) throw std::invalid_argument("fit_log_log_slope: need >= 2 points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pts) {
    if (x <= 0.0 || y <= 0.0) throw std::invalid_argument("fit_log_log_slope: positive data only");
    const double lx = std::log2(x);
    const double ly = std::log2(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(pts.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline std::vector<BenchSuite> parse_bench_suites(const nlohmann::ordered_json& j) {
  if (!j.is_object() || !j.contains("suites") || !j.at("suites").is_array()) {
    throw std::runtime_error("bench config needs a \"suites\" array");
  }
  std::vector<BenchSuite> out;
  for (const auto& sj : j.at("suites")) {
    BenchSuite s;
    s.family = sj.at("family").get<std::string>();
    s.algorithm = sj.at("algorithm").get<std::string>();
    s.ns = detail::int_values(sj.at("ns"), "\"ns\"");
    if (sj.contains("ss")) s.ss = detail::int_values(sj.at("ss"), "\"ss\"");
    if (sj.contains("trials")) s.trials = sj.at("trials").get<int>();
    if (sj.contains("m")) s.m = sj.at("m").get<std::int64_t>();
    if (sj.contains("k")) s.k = sj.at("k").get<int>();
    if (sj.contains("d")) s.d = sj.at("d").get<int>();
    if (sj.contains("range")) s.range = sj.at("range").get<std::int64_t>();
    if (sj.contains("bits")) s.bits = sj.at("bits").get<int>();
    if (s.ns.empty() || s.ss.empty() || s.trials < 1) {
      throw std::runtime_error("bench suite needs non-empty ns/ss and trials >= 1");
    }
    out.push_back(std::move(s));
  }
  return out;
}

namespace detail {

struct TrialOutcome {
  bool success = false;
  RunMetrics metrics;
};

inline TrialOutcome bench_run_one(const std::string& algorithm, const Instance& inst,
                                  std::int64_t s, std::uint64_t solver_seed) {
  TrialOutcome out;
  if (algorithm == "ld") {
    if (inst.type != InstanceType::kLd) throw std::runtime_error("ld needs an ld instance");
    LdOptions opt;
    opt.s = s;
    // Fixed bound instead of exhaustive measurement: collision-free planted
    // lists have p = 2n, so 3n covers them while staying in the low-space
    // regime the bench is meant to exercise.
    opt.p_bound = 3 * static_cast<std::int64_t>(inst.ld_x.size());
    opt.seed = solver_seed;
    LdResult r = ld_search(make_explicit_list(inst.ld_x), make_explicit_list(inst.ld_y), opt);
    out.success = r.outcome == LdOutcome::kFound;
    out.metrics = r.metrics;
    return out;
  }
  if (algorithm == "subsetsum") {
    if (inst.type != InstanceType::kSubsetSum) {
      throw std::runtime_error("subsetsum needs a subset_sum instance");
    }
    SssOptions opt;
    opt.seed = solver_seed;
    SssResult r = sss_solve(inst.subset_sum.w, inst.subset_sum.t, opt);
    out.success = r.yes || r.certified_no;
    out.metrics = r.metrics;
    return out;
  }
  if (algorithm == "ksum-random") {
    if (inst.type != InstanceType::kKsum) throw std::runtime_error("ksum needs a ksum instance");
    KSumOptions opt;
    opt.seed = solver_seed;
    KSumResult r = ksum_random_solve(inst.ksum, opt);
    out.success = r.found;
    out.metrics = r.metrics;
    return out;
  }
  if (algorithm == "ksum-mitm") {
    if (inst.type != InstanceType::kKsum) throw std::runtime_error("ksum needs a ksum instance");
    KSumMitmOptions opt;
    opt.s = s;
    opt.seed = solver_seed;
    KSumResult r = ksum_mitm_solve(inst.ksum, opt);
    out.success = r.found;
    out.metrics = r.metrics;
    return out;
  }
  if (algorithm == "knapsack") {
    if (inst.type != InstanceType::kKnapsack) {
      throw std::runtime_error("knapsack needs a knapsack instance");
    }
    KnapsackResult r = knapsack_solve(inst.knapsack, solver_seed);
    out.success = true;  // a decision (feasible or not) is the deliverable
    out.metrics = r.metrics;
    return out;
  }
  if (algorithm == "bip") {
    if (inst.type != InstanceType::kBip) throw std::runtime_error("bip needs a bip instance");
    BipResult r = bip_solve(inst.bip, solver_seed);
    out.success = true;
    out.metrics = r.metrics;
    return out;
  }
  throw std::runtime_error("unknown bench algorithm \"" + algorithm + "\"");
}

inline std::uint64_t lower_median(std::vector<std::uint64_t> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  return v[(v.size() - 1) / 2];
}

}  // namespace detail

inline const char* bench_csv_header() {
  return "family,algorithm,n,s,trials,successes,success_rate,median_step_evals,"
         "median_steps,median_field_ops,max_peak_words,errors";
}

inline BenchResult run_bench(const std::vector<BenchSuite>& suites, std::uint64_t master_seed) {
  BenchResult res;
  std::ostringstream csv;
  csv << bench_csv_header() << "\n";
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();

  struct FitKey {
    std::string family, algorithm;
    std::int64_t s;
  };
  std::vector<std::pair<FitKey, std::vector<std::pair<double, double>>>> fit_groups;
  auto fit_points = [&](const std::string& fam, const std::string& alg,
                        std::int64_t s) -> std::vector<std::pair<double, double>>& {
    for (auto& [key, pts] : fit_groups) {
      if (key.family == fam && key.algorithm == alg && key.s == s) return pts;
    }
    fit_groups.push_back({{fam, alg, s}, {}});
    return fit_groups.back().second;
  };

  for (const BenchSuite& suite : suites) {
    const std::uint64_t base =
        derive_subseed(master_seed, (suite.family + "/" + suite.algorithm).c_str());
    for (std::int64_t n : suite.ns) {
      for (std::int64_t s : suite.ss) {
        std::vector<std::uint64_t> evals, steps, fops;
        std::int64_t successes = 0, errors = 0, peak = 0;
        for (int trial = 0; trial < suite.trials; ++trial) {
          const std::uint64_t trial_seed = mix64(
              base ^ mix64(static_cast<std::uint64_t>(n) * 1000003ULL +
                           static_cast<std::uint64_t>(s) * 1009ULL +
                           static_cast<std::uint64_t>(trial)));
          try {
            GeneratorConfig cfg;
            cfg.family = suite.family;
            cfg.n = n;
            cfg.m = suite.m;
            cfg.k = suite.k;
            cfg.d = suite.d;
            cfg.range = suite.range;
            cfg.bits = suite.bits;
            cfg.seed = trial_seed;
            GeneratedInstance gen = generate_instance(cfg);
            detail::TrialOutcome t = detail::bench_run_one(
                suite.algorithm, gen.instance, s, derive_subseed(trial_seed, "solver"));
            if (t.success) ++successes;
            evals.push_back(t.metrics.step_evals);
            steps.push_back(t.metrics.steps());
            fops.push_back(t.metrics.field_ops);
            peak = std::max(peak, t.metrics.peak_tracked_words);
          } catch (const std::exception&) {
            ++errors;  // recorded per row; the run continues
          }
        }
        const std::uint64_t med_evals = detail::lower_median(evals);
        const std::uint64_t med_steps = detail::lower_median(steps);
        const std::uint64_t med_fops = detail::lower_median(fops);
        const double rate =
            suite.trials > 0 ? static_cast<double>(successes) / suite.trials : 0.0;
        char rate_buf[16];
        std::snprintf(rate_buf, sizeof(rate_buf), "%.4f", rate);
        csv << suite.family << ',' << suite.algorithm << ',' << n << ',' << s << ','
            << suite.trials << ',' << successes << ',' << rate_buf << ',' << med_evals
            << ',' << med_steps << ',' << med_fops << ',' << peak << ',' << errors << "\n";

        nlohmann::ordered_json row;
        row["family"] = suite.family;
        row["algorithm"] = suite.algorithm;
        row["n"] = n;
        row["s"] = s;
        row["trials"] = suite.trials;
        row["successes"] = successes;
        row["success_rate"] = rate;
        row["median_step_evals"] = med_evals;
        row["median_steps"] = med_steps;
        row["median_field_ops"] = med_fops;
        row["max_peak_words"] = peak;
        row["errors"] = errors;
        rows.push_back(std::move(row));

        if (med_steps > 0) {
          fit_points(suite.family, suite.algorithm, s)
              .emplace_back(static_cast<double>(n), static_cast<double>(med_steps));
        }
      }
    }
  }

  nlohmann::ordered_json fits = nlohmann::ordered_json::array();
  for (const auto& [key, pts] : fit_groups) {
    std::vector<double> xs;
    for (const auto& [x, y] : pts) xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.size() < 2) continue;
    nlohmann::ordered_json f;
    f["family"] = key.family;
    f["algorithm"] = key.algorithm;
    f["s"] = key.s;
    f["points"] = pts.size();
    f["beta"] = fit_log_log_slope(pts);
    fits.push_back(std::move(f));
  }

  res.csv = csv.str();
  res.summary["schema"] = "lowspace.bench.v1";
  res.summary["master_seed"] = master_seed;
  res.summary["rows"] = std::move(rows);
  res.summary["fits"] = std::move(fits);
  return res;
}

}  // namespace lowspace
