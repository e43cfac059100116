// Command-line front end: instance generation, solver dispatch, benchmark
// grids, and report verification.  Reports are JSON on stdout; exit codes are
// 0 = solved/decided, 2 = NO within budget (one-sided), 1 = error.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lowspace/bench.hpp"
#include "lowspace/generators.hpp"
#include "lowspace/instances.hpp"
#include "lowspace/ksum.hpp"
#include "lowspace/list_disjointness.hpp"
#include "lowspace/oracles.hpp"
#include "lowspace/reductions.hpp"
#include "lowspace/subset_sum.hpp"

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitError = 1;
constexpr int kExitNoWithinBudget = 2;

std::uint64_t parse_seed(const std::string& text) {
  std::size_t pos = 0;
  std::uint64_t v = std::stoull(text, &pos, 0);  // base 0: decimal or 0x-hex
  if (pos != text.size()) throw std::runtime_error("invalid seed: " + text);
  return v;
}

// Flag value if given, else LOWSPACE_SEED from the environment, else 1.
std::uint64_t resolve_seed(const std::string& flag_value) {
  if (!flag_value.empty()) return parse_seed(flag_value);
  if (const char* env = std::getenv("LOWSPACE_SEED")) return parse_seed(env);
  return 1;
}

class WallTimer {
 public:
  WallTimer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

nlohmann::ordered_json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return nlohmann::ordered_json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path + ": invalid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

void emit(const nlohmann::ordered_json& report) { std::cout << report.dump(2) << "\n"; }

// A list file is either a bare JSON array of integers or a full ld instance
// object; `field` picks "x" or "y" in the latter case.
std::vector<std::int64_t> load_list_file(const std::string& path, const char* field) {
  nlohmann::ordered_json j = load_json_file(path);
  if (j.is_array()) return lowspace::detail::int_values(j, path.c_str());
  lowspace::Instance inst = lowspace::instance_from_json(j);
  if (inst.type != lowspace::InstanceType::kLd) {
    throw std::runtime_error(path + ": expected a list array or an ld instance");
  }
  return std::string(field) == "x" ? inst.ld_x : inst.ld_y;
}

// --- solver runners (each prints one report and returns the exit code) ------

int run_ld(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y,
           std::int64_t s, std::int64_t p, std::uint64_t budget, std::uint64_t seed,
           bool with_oracle) {
  lowspace::Instance inst;
  inst.type = lowspace::InstanceType::kLd;
  inst.ld_x = x;
  inst.ld_y = y;

  lowspace::LdOptions opt;
  opt.s = s;
  if (p > 0) opt.p_bound = p;
  opt.step_budget = budget;
  opt.seed = seed;
  WallTimer timer;
  lowspace::LdResult r = lowspace::ld_search(lowspace::make_explicit_list(x),
                                             lowspace::make_explicit_list(y), opt);
  r.metrics.wall_time_s = timer.seconds();

  const bool found = r.outcome == lowspace::LdOutcome::kFound;
  nlohmann::ordered_json params;
  params["s"] = s;
  params["p_bound"] = r.p_used;
  params["p_measured"] = r.p_measured;
  params["step_budget"] = budget;
  params["s_used"] = r.s_used;
  params["walk_cap"] = r.walk_cap;
  nlohmann::ordered_json witness;
  if (found) {
    witness["i"] = r.i;
    witness["j"] = r.j;
    witness["value"] = r.value;
  }
  nlohmann::ordered_json report =
      lowspace::make_report("ld", lowspace::instance_digest(inst), seed, params,
                            found ? "found" : "no-within-budget", witness, r.metrics);
  int code = found ? kExitSolved : kExitNoWithinBudget;
  if (with_oracle) {
    const auto pairs = lowspace::ld_pairs_oracle(x, y);
    bool witness_ok = true;
    if (found) {
      witness_ok = std::find(pairs.begin(), pairs.end(), std::make_pair(r.i, r.j)) !=
                   pairs.end();
    }
    report["oracle"] = {{"pairs", pairs.size()}, {"witness_in_oracle", witness_ok}};
    if (!witness_ok) code = kExitError;
  }
  emit(report);
  return code;
}

int run_subsetsum(const lowspace::Instance& inst, const std::string& mode,
                  std::uint64_t seed, bool with_oracle) {
  lowspace::SssOptions opt;
  opt.seed = seed;
  if (mode == "auto") {
    opt.mode = lowspace::SssMode::kAuto;
  } else if (mode == "small-range") {
    opt.mode = lowspace::SssMode::kSmallRangeOnly;
  } else if (mode == "mitm") {
    opt.mode = lowspace::SssMode::kMitmOnly;
  } else {
    throw std::runtime_error("unknown subsetsum mode: " + mode);
  }
  const auto& w = inst.subset_sum.w;
  const std::int64_t t = inst.subset_sum.t;
  WallTimer timer;
  lowspace::SssResult r = lowspace::sss_solve(w, t, opt);
  r.metrics.wall_time_s = timer.seconds();

  const char* phase = "none";
  switch (r.solved_by) {
    case lowspace::SssPhase::kNone: phase = "none"; break;
    case lowspace::SssPhase::kQuick: phase = "quick"; break;
    case lowspace::SssPhase::kSmallRange: phase = "small-range"; break;
    case lowspace::SssPhase::kMitm: phase = "mitm"; break;
  }
  nlohmann::ordered_json params;
  params["mode"] = mode;
  params["phase"] = phase;
  params["small_count"] = r.small_count;
  params["mitm_p_bound"] = r.mitm_p_bound;
  params["mitm_budget"] = r.mitm_budget;
  const std::string outcome =
      r.yes ? "yes" : (r.certified_no ? "certified-no" : "no-within-budget");
  nlohmann::ordered_json witness;
  if (r.yes) witness["indices"] = r.witness;
  nlohmann::ordered_json report = lowspace::make_report(
      "subsetsum", lowspace::instance_digest(inst), seed, params, outcome, witness, r.metrics);
  int code = (r.yes || r.certified_no) ? kExitSolved : kExitNoWithinBudget;
  if (with_oracle && w.size() <= 26) {
    const auto oracle = lowspace::subset_sum_oracle(w, t);
    const bool oracle_yes = oracle.count > 0;
    bool agrees = true;
    if (r.yes && !oracle_yes) agrees = false;
    if (r.certified_no && oracle_yes) agrees = false;
    report["oracle"] = {{"count", oracle.count}, {"agrees", agrees}};
    if (!agrees) code = kExitError;
  }
  emit(report);
  return code;
}

int run_knapsack(const lowspace::Instance& inst, std::uint64_t seed, bool with_oracle) {
  WallTimer timer;
  lowspace::KnapsackResult r = lowspace::knapsack_solve(inst.knapsack, seed);
  r.metrics.wall_time_s = timer.seconds();
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  nlohmann::ordered_json witness;
  if (r.feasible) {
    witness["chosen"] = r.chosen;
    witness["value"] = r.value;
  }
  nlohmann::ordered_json report = lowspace::make_report(
      "knapsack", lowspace::instance_digest(inst), seed, params,
      r.feasible ? "optimum" : "infeasible-within-budget", witness, r.metrics);
  int code = r.feasible ? kExitSolved : kExitNoWithinBudget;
  if (with_oracle && inst.knapsack.w.size() <= 26) {
    const auto oracle =
        lowspace::knapsack_oracle(inst.knapsack.w, inst.knapsack.v, inst.knapsack.t);
    const bool agrees = oracle.has_value() == r.feasible &&
                        (!oracle || oracle->best_value == r.value);
    report["oracle"] = {{"feasible", oracle.has_value()},
                       {"best_value", oracle ? oracle->best_value : 0},
                       {"agrees", agrees}};
    if (!agrees) code = kExitError;
  }
  emit(report);
  return code;
}

int run_bip(const lowspace::Instance& inst, std::uint64_t seed, bool with_oracle) {
  WallTimer timer;
  lowspace::BipResult r = lowspace::bip_solve(inst.bip, seed);
  r.metrics.wall_time_s = timer.seconds();
  nlohmann::ordered_json params;
  params["constraints"] = inst.bip.cons.size();
  nlohmann::ordered_json witness;
  if (r.feasible) {
    witness["x"] = r.x;
    witness["objective"] = r.objective;
  }
  nlohmann::ordered_json report = lowspace::make_report(
      "bip", lowspace::instance_digest(inst), seed, params,
      r.feasible ? "optimum" : "infeasible-within-budget", witness, r.metrics);
  int code = r.feasible ? kExitSolved : kExitNoWithinBudget;
  if (with_oracle && inst.bip.v.size() <= 26) {
    std::vector<std::vector<std::int64_t>> cons_a;
    std::vector<std::int64_t> cons_u;
    for (const auto& c : inst.bip.cons) {
      cons_a.push_back(c.a);
      cons_u.push_back(c.u);
    }
    const auto oracle = lowspace::bip_oracle(inst.bip.v, cons_a, cons_u);
    const bool agrees = oracle.has_value() == r.feasible &&
                        (!oracle || oracle->best_objective == r.objective);
    report["oracle"] = {{"feasible", oracle.has_value()},
                       {"best_objective", oracle ? oracle->best_objective : 0},
                       {"agrees", agrees}};
    if (!agrees) code = kExitError;
  }
  emit(report);
  return code;
}

int run_ksum(const lowspace::Instance& inst, const std::string& mode, std::int64_t s,
             std::uint64_t seed, bool with_oracle) {
  WallTimer timer;
  lowspace::KSumResult r;
  if (mode == "random") {
    lowspace::KSumOptions opt;
    opt.seed = seed;
    r = lowspace::ksum_random_solve(inst.ksum, opt);
  } else if (mode == "mitm") {
    lowspace::KSumMitmOptions opt;
    opt.s = s;
    opt.seed = seed;
    r = lowspace::ksum_mitm_solve(inst.ksum, opt);
  } else {
    throw std::runtime_error("unknown ksum mode: " + mode);
  }
  r.metrics.wall_time_s = timer.seconds();
  nlohmann::ordered_json params;
  params["mode"] = mode;
  params["s"] = s;
  params["k"] = inst.ksum.k;
  params["fallback_prf"] = r.fallback_prf;
  params["tuples_tried"] = r.tuples_tried;
  nlohmann::ordered_json witness;
  if (r.found) witness["indices"] = r.indices;
  nlohmann::ordered_json report = lowspace::make_report(
      "ksum", lowspace::instance_digest(inst), seed, params,
      r.found ? "found" : "no-within-budget", witness, r.metrics);
  int code = r.found ? kExitSolved : kExitNoWithinBudget;
  if (with_oracle) {
    double combos = 1.0;
    for (const auto& l : inst.ksum.lists) combos *= static_cast<double>(l.size());
    if (combos <= 2e8) {
      const auto oracle = lowspace::ksum_oracle(inst.ksum.lists, inst.ksum.t);
      const bool consistent = !r.found || oracle.has_value();
      report["oracle"] = {{"has_solution", oracle.has_value()}, {"consistent", consistent}};
      if (!consistent) code = kExitError;
    }
  }
  emit(report);
  return code;
}

int dispatch_solve(const lowspace::Instance& inst, const std::string& mode, std::int64_t s,
                   std::int64_t p, std::uint64_t budget, std::uint64_t seed,
                   bool with_oracle) {
  switch (inst.type) {
    case lowspace::InstanceType::kLd:
      return run_ld(inst.ld_x, inst.ld_y, s, p, budget, seed, with_oracle);
    case lowspace::InstanceType::kSubsetSum:
      return run_subsetsum(inst, mode.empty() ? "auto" : mode, seed, with_oracle);
    case lowspace::InstanceType::kKnapsack:
      return run_knapsack(inst, seed, with_oracle);
    case lowspace::InstanceType::kBip:
      return run_bip(inst, seed, with_oracle);
    case lowspace::InstanceType::kKsum:
      return run_ksum(inst, mode.empty() ? "random" : mode, s, seed, with_oracle);
  }
  throw std::logic_error("dispatch_solve: unreachable");
}

// --- verify ------------------------------------------------------------------

void verify_witness_against_instance(const lowspace::Instance& inst,
                                     const nlohmann::ordered_json& witness,
                                     std::vector<std::string>& problems) {
  using lowspace::InstanceType;
  try {
    switch (inst.type) {
      case InstanceType::kLd: {
        const std::int64_t i = witness.at("i").get<std::int64_t>();
        const std::int64_t j = witness.at("j").get<std::int64_t>();
        if (inst.ld_x.at(static_cast<std::size_t>(i - 1)) !=
            inst.ld_y.at(static_cast<std::size_t>(j - 1))) {
          problems.push_back("ld witness indices do not share a value");
        }
        break;
      }
      case InstanceType::kSubsetSum: {
        std::int64_t sum = 0;
        for (const auto& idx : witness.at("indices")) {
          sum += inst.subset_sum.w.at(idx.get<std::size_t>() - 1);
        }
        if (sum != inst.subset_sum.t) problems.push_back("subset witness sums wrong");
        break;
      }
      case InstanceType::kKnapsack: {
        std::int64_t ws = 0, vs = 0;
        for (const auto& idx : witness.at("chosen")) {
          ws += inst.knapsack.w.at(idx.get<std::size_t>() - 1);
          vs += inst.knapsack.v.at(idx.get<std::size_t>() - 1);
        }
        if (ws > inst.knapsack.t) problems.push_back("knapsack witness exceeds budget");
        if (vs != witness.at("value").get<std::int64_t>()) {
          problems.push_back("knapsack witness value mismatch");
        }
        break;
      }
      case InstanceType::kBip: {
        const auto x = witness.at("x").get<std::vector<int>>();
        if (x.size() != inst.bip.v.size()) {
          problems.push_back("bip witness length mismatch");
          break;
        }
        std::int64_t obj = 0;
        for (std::size_t b = 0; b < x.size(); ++b) {
          if (x[b]) obj += inst.bip.v[b];
        }
        if (obj != witness.at("objective").get<std::int64_t>()) {
          problems.push_back("bip witness objective mismatch");
        }
        for (const auto& c : inst.bip.cons) {
          std::int64_t sum = 0;
          for (std::size_t b = 0; b < x.size(); ++b) {
            if (x[b]) sum += c.a[b];
          }
          if (sum > c.u) problems.push_back("bip witness violates a constraint");
        }
        break;
      }
      case InstanceType::kKsum: {
        std::int64_t sum = 0;
        int j = 0;
        for (const auto& idx : witness.at("indices")) {
          sum += inst.ksum.lists.at(static_cast<std::size_t>(j++))
                     .at(idx.get<std::size_t>() - 1);
        }
        if (sum != inst.ksum.t) problems.push_back("ksum witness sums wrong");
        break;
      }
    }
  } catch (const std::exception& e) {
    problems.push_back(std::string("witness is malformed: ") + e.what());
  }
}

void verify_truth_against_instance(const lowspace::Instance& inst,
                                   const nlohmann::ordered_json& truth,
                                   std::vector<std::string>& problems) {
  try {
    const std::string family = truth.at("family").get<std::string>();
    if (family == "planted-ld") {
      nlohmann::ordered_json w;
      w["i"] = truth.at("i");
      w["j"] = truth.at("j");
      verify_witness_against_instance(inst, w, problems);
    } else if (family == "random-subset-sum") {
      nlohmann::ordered_json w;
      w["indices"] = truth.at("subset");
      verify_witness_against_instance(inst, w, problems);
    } else if (family == "planted-ksum") {
      nlohmann::ordered_json w;
      w["indices"] = truth.at("indices");
      verify_witness_against_instance(inst, w, problems);
    }
  } catch (const std::exception& e) {
    problems.push_back(std::string("truth sidecar is malformed: ") + e.what());
  }
}

int run_verify(const std::string& in_path, const std::string& report_path,
               const std::string& truth_path) {
  std::vector<std::string> problems;
  lowspace::Instance inst = lowspace::load_instance(in_path);
  const std::string digest = lowspace::instance_digest(inst);

  if (!report_path.empty()) {
    nlohmann::ordered_json report = load_json_file(report_path);
    if (report.value("instance_digest", std::string()) != digest) {
      problems.push_back("report digest does not match the instance");
    }
    if (report.contains("witness") && report.at("witness").is_object() &&
        !report.at("witness").empty()) {
      verify_witness_against_instance(inst, report.at("witness"), problems);
    }
  }
  if (!truth_path.empty()) {
    verify_truth_against_instance(inst, load_json_file(truth_path), problems);
  }

  nlohmann::ordered_json verdict;
  verdict["instance_digest"] = digest;
  verdict["verified"] = problems.empty();
  verdict["problems"] = problems;
  emit(verdict);
  return problems.empty() ? kExitSolved : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-space collision-walk solvers: generators, solvers, benchmarks"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an instance (plus optional truth sidecar)");
  std::string g_family, g_out, g_truth, g_seed;
  lowspace::GeneratorConfig g_cfg;
  gen->add_option("--family", g_family,
                  "random-ld | planted-ld | random-subset-sum | planted-ksum | bip-random")
      ->required();
  gen->add_option("--n", g_cfg.n, "instance size")->required();
  gen->add_option("--m", g_cfg.m, "list domain (0 = family default)");
  gen->add_option("--k", g_cfg.k, "number of ksum lists");
  gen->add_option("--d", g_cfg.d, "number of bip constraints");
  gen->add_option("--range", g_cfg.range, "bip coefficient range");
  gen->add_option("--bits", g_cfg.bits, "subset-sum weight bits");
  gen->add_option("--out", g_out, "instance output file (default stdout)");
  gen->add_option("--truth", g_truth, "truth sidecar output file");
  gen->add_option("--seed", g_seed, "seed (decimal or 0x hex; env LOWSPACE_SEED)");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve any instance file, dispatching on type");
  std::string s_in, s_mode, s_seed;
  std::int64_t s_s = 1, s_p = 0;
  std::uint64_t s_budget = 0;
  bool s_oracle = false;
  solve->add_option("--in", s_in, "instance JSON file")->required();
  solve->add_option("--s", s_s, "space parameter");
  solve->add_option("--p", s_p, "pseudo-solution bound (ld; 0 = measure)");
  solve->add_option("--budget", s_budget, "step budget (0 = derived)");
  solve->add_option("--mode", s_mode, "type-specific mode");
  solve->add_option("--seed", s_seed, "seed");
  solve->add_flag("--oracle", s_oracle, "cross-check against the brute-force oracle");

  // ld
  auto* ld = app.add_subcommand("ld", "List disjointness on two explicit list files");
  std::string l_x, l_y, l_seed;
  std::int64_t l_s = 1, l_p = 0;
  std::uint64_t l_budget = 0;
  bool l_oracle = false;
  ld->add_option("--x", l_x, "first list (JSON array or ld instance)")->required();
  ld->add_option("--y", l_y, "second list")->required();
  ld->add_option("--s", l_s, "walk seeds per restart (space knob)")->required();
  ld->add_option("--p", l_p, "pseudo-solution bound (0 = measure, leaves low-space regime)");
  ld->add_option("--budget", l_budget, "step budget (0 = derived)");
  ld->add_option("--seed", l_seed, "seed");
  ld->add_flag("--oracle", l_oracle, "cross-check against the sorting oracle");

  // subsetsum
  auto* sss = app.add_subcommand("subsetsum", "Subset sum decision with witness");
  std::string ss_in, ss_mode = "auto", ss_seed;
  bool ss_oracle = false;
  sss->add_option("--in", ss_in, "instance JSON file")->required();
  sss->add_option("--mode", ss_mode, "auto | small-range | mitm")
      ->check(CLI::IsMember({"auto", "small-range", "mitm"}));
  sss->add_option("--seed", ss_seed, "seed");
  sss->add_flag("--oracle", ss_oracle, "cross-check against enumeration (n <= 26)");

  // knapsack
  auto* knap = app.add_subcommand("knapsack", "0/1 knapsack optimization");
  std::string k_in, k_seed;
  bool k_oracle = false;
  knap->add_option("--in", k_in, "instance JSON file")->required();
  knap->add_option("--seed", k_seed, "seed");
  knap->add_flag("--oracle", k_oracle, "cross-check against enumeration (n <= 26)");

  // bip
  auto* bip = app.add_subcommand("bip", "0/1 integer program minimization");
  std::string b_in, b_seed;
  bool b_oracle = false;
  bip->add_option("--in", b_in, "instance JSON file")->required();
  bip->add_option("--seed", b_seed, "seed");
  bip->add_flag("--oracle", b_oracle, "cross-check against enumeration (n <= 26)");

  // ksum
  auto* ksum = app.add_subcommand("ksum", "k-Sum over k lists");
  std::string ks_in, ks_mode = "random", ks_seed;
  std::int64_t ks_s = 1;
  bool ks_oracle = false;
  ksum->add_option("--in", ks_in, "instance JSON file")->required();
  ksum->add_option("--s", ks_s, "space parameter (mitm mode)");
  ksum->add_option("--mode", ks_mode, "random | mitm")
      ->check(CLI::IsMember({"random", "mitm"}));
  ksum->add_option("--seed", ks_seed, "seed");
  ksum->add_flag("--oracle", ks_oracle, "cross-check against enumeration");

  // bench
  auto* bench = app.add_subcommand("bench", "Run benchmark suites from a config file");
  std::string be_suite, be_csv, be_summary, be_seed;
  bench->add_option("--suite", be_suite, "suite config JSON")->required();
  bench->add_option("--csv", be_csv, "CSV output file")->required();
  bench->add_option("--summary", be_summary, "summary JSON file (default stdout)");
  bench->add_option("--seed", be_seed, "master seed");

  // verify
  auto* verify = app.add_subcommand("verify", "Check a report/truth file against an instance");
  std::string v_in, v_report, v_truth;
  verify->add_option("--in", v_in, "instance JSON file")->required();
  verify->add_option("--report", v_report, "report JSON to check");
  verify->add_option("--truth", v_truth, "truth sidecar to check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*gen) {
      g_cfg.family = g_family;
      g_cfg.seed = resolve_seed(g_seed);
      lowspace::GeneratedInstance g = lowspace::generate_instance(g_cfg);
      const std::string text = lowspace::instance_to_json(g.instance).dump(2) + "\n";
      if (g_out.empty()) {
        std::cout << text;
      } else {
        write_text_file(g_out, text);
      }
      if (!g_truth.empty()) write_text_file(g_truth, g.truth.dump(2) + "\n");
      return kExitSolved;
    }
    if (*solve) {
      return dispatch_solve(lowspace::load_instance(s_in), s_mode, s_s, s_p, s_budget,
                            resolve_seed(s_seed), s_oracle);
    }
    if (*ld) {
      return run_ld(load_list_file(l_x, "x"), load_list_file(l_y, "y"), l_s, l_p, l_budget,
                    resolve_seed(l_seed), l_oracle);
    }
    if (*sss) {
      lowspace::Instance inst = lowspace::load_instance(ss_in);
      if (inst.type != lowspace::InstanceType::kSubsetSum) {
        throw std::runtime_error("subsetsum expects a subset_sum instance");
      }
      return run_subsetsum(inst, ss_mode, resolve_seed(ss_seed), ss_oracle);
    }
    if (*knap) {
      lowspace::Instance inst = lowspace::load_instance(k_in);
      if (inst.type != lowspace::InstanceType::kKnapsack) {
        throw std::runtime_error("knapsack expects a knapsack instance");
      }
      return run_knapsack(inst, resolve_seed(k_seed), k_oracle);
    }
    if (*bip) {
      lowspace::Instance inst = lowspace::load_instance(b_in);
      if (inst.type != lowspace::InstanceType::kBip) {
        throw std::runtime_error("bip expects a bip instance");
      }
      return run_bip(inst, resolve_seed(b_seed), b_oracle);
    }
    if (*ksum) {
      lowspace::Instance inst = lowspace::load_instance(ks_in);
      if (inst.type != lowspace::InstanceType::kKsum) {
        throw std::runtime_error("ksum expects a ksum instance");
      }
      return run_ksum(inst, ks_mode, ks_s, resolve_seed(ks_seed), ks_oracle);
    }
    if (*bench) {
      const auto suites = lowspace::parse_bench_suites(load_json_file(be_suite));
      lowspace::BenchResult res = lowspace::run_bench(suites, resolve_seed(be_seed));
      write_text_file(be_csv, res.csv);
      const std::string summary = res.summary.dump(2) + "\n";
      if (be_summary.empty()) {
        std::cout << summary;
      } else {
        write_text_file(be_summary, summary);
      }
      return kExitSolved;
    }
    if (*verify) {
      return run_verify(v_in, v_report, v_truth);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
