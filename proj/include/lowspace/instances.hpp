#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lowspace/ksum.hpp"
#include "lowspace/metrics.hpp"
#include "lowspace/reductions.hpp"

namespace lowspace {

// Tagged union of every instance shape the tools understand.  JSON is the
// wire format; the "type" field drives dispatch.
enum class InstanceType { kLd, kSubsetSum, kKnapsack, kBip, kKsum };

struct Instance {
  InstanceType type = InstanceType::kSubsetSum;
  std::vector<std::int64_t> ld_x, ld_y;  // kLd
  SubsetSumInstance subset_sum;          // kSubsetSum
  KnapsackInstance knapsack;             // kKnapsack
  BipInstance bip;                       // kBip
  KSumInstance ksum;                     // kKsum
};

inline const char* instance_type_name(InstanceType t) {
  switch (t) {
    case InstanceType::kLd: return "ld";
    case InstanceType::kSubsetSum: return "subset_sum";
    case InstanceType::kKnapsack: return "knapsack";
    case InstanceType::kBip: return "bip";
    case InstanceType::kKsum: return "ksum";
  }
  throw std::logic_error("instance_type_name: unreachable");
}

inline InstanceType instance_type_from_name(const std::string& name) {
  if (name == "ld") return InstanceType::kLd;
  if (name == "subset_sum") return InstanceType::kSubsetSum;
  if (name == "knapsack") return InstanceType::kKnapsack;
  if (name == "bip") return InstanceType::kBip;
  if (name == "ksum") return InstanceType::kKsum;
  throw std::runtime_error("unknown instance type: " + name);
}

// Canonical serialization: fixed key order per type, so the digest of an
// instance does not depend on how its source file ordered the keys.
inline nlohmann::ordered_json instance_to_json(const Instance& inst) {
  nlohmann::ordered_json j;
  j["type"] = instance_type_name(inst.type);
  switch (inst.type) {
    case InstanceType::kLd:
      j["x"] = inst.ld_x;
      j["y"] = inst.ld_y;
      break;
    case InstanceType::kSubsetSum:
      j["w"] = inst.subset_sum.w;
      j["t"] = inst.subset_sum.t;
      break;
    case InstanceType::kKnapsack:
      j["w"] = inst.knapsack.w;
      j["v"] = inst.knapsack.v;
      j["t"] = inst.knapsack.t;
      break;
    case InstanceType::kBip: {
      j["objective"] = inst.bip.v;
      nlohmann::ordered_json cons = nlohmann::ordered_json::array();
      for (const BipConstraint& c : inst.bip.cons) {
        nlohmann::ordered_json cj;
        cj["a"] = c.a;
        cj["u"] = c.u;
        cons.push_back(std::move(cj));
      }
      j["constraints"] = std::move(cons);
      break;
    }
    case InstanceType::kKsum:
      j["lists"] = inst.ksum.lists;
      j["t"] = inst.ksum.t;
      j["m"] = inst.ksum.m;
      break;
  }
  return j;
}

namespace detail {

inline void require_field(const nlohmann::ordered_json& j, const char* key) {
  if (!j.contains(key)) {
    throw std::runtime_error(std::string("instance is missing field \"") + key + "\"");
  }
}

inline std::vector<std::int64_t> int_values(const nlohmann::ordered_json& a, const char* what) {
  if (!a.is_array()) {
    throw std::runtime_error(std::string(what) + " must be an array");
  }
  std::vector<std::int64_t> out;
  out.reserve(a.size());
  for (const auto& v : a) {
    if (!v.is_number_integer()) {
      throw std::runtime_error(std::string(what) + " must hold integers");
    }
    out.push_back(v.get<std::int64_t>());
  }
  return out;
}

inline std::vector<std::int64_t> int_array(const nlohmann::ordered_json& j, const char* key) {
  require_field(j, key);
  return int_values(j.at(key), (std::string("field \"") + key + "\"").c_str());
}

inline std::int64_t int_field(const nlohmann::ordered_json& j, const char* key) {
  require_field(j, key);
  const auto& v = j.at(key);
  if (!v.is_number_integer()) {
    throw std::runtime_error(std::string("field \"") + key + "\" must be an integer");
  }
  return v.get<std::int64_t>();
}

}  // namespace detail

inline Instance instance_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw std::runtime_error("instance must be a JSON object");
  detail::require_field(j, "type");
  if (!j.at("type").is_string()) throw std::runtime_error("\"type\" must be a string");
  Instance inst;
  inst.type = instance_type_from_name(j.at("type").get<std::string>());
  switch (inst.type) {
    case InstanceType::kLd:
      inst.ld_x = detail::int_array(j, "x");
      inst.ld_y = detail::int_array(j, "y");
      if (inst.ld_x.size() != inst.ld_y.size()) {
        throw std::runtime_error("ld instance lists must have equal length");
      }
      break;
    case InstanceType::kSubsetSum:
      inst.subset_sum.w = detail::int_array(j, "w");
      inst.subset_sum.t = detail::int_field(j, "t");
      break;
    case InstanceType::kKnapsack:
      inst.knapsack.w = detail::int_array(j, "w");
      inst.knapsack.v = detail::int_array(j, "v");
      inst.knapsack.t = detail::int_field(j, "t");
      if (inst.knapsack.w.size() != inst.knapsack.v.size()) {
        throw std::runtime_error("knapsack weights and values must have equal length");
      }
      break;
    case InstanceType::kBip: {
      inst.bip.v = detail::int_array(j, "objective");
      detail::require_field(j, "constraints");
      const auto& cons = j.at("constraints");
      if (!cons.is_array()) throw std::runtime_error("\"constraints\" must be an array");
      for (const auto& cj : cons) {
        BipConstraint c;
        c.a = detail::int_array(cj, "a");
        c.u = detail::int_field(cj, "u");
        if (c.a.size() != inst.bip.v.size()) {
          throw std::runtime_error("bip constraint length must match the objective");
        }
        inst.bip.cons.push_back(std::move(c));
      }
      break;
    }
    case InstanceType::kKsum: {
      detail::require_field(j, "lists");
      const auto& lists = j.at("lists");
      if (!lists.is_array() || lists.size() < 2) {
        throw std::runtime_error("ksum needs an array of at least two lists");
      }
      for (const auto& l : lists) {
        inst.ksum.lists.push_back(detail::int_values(l, "each ksum list"));
      }
      inst.ksum.k = static_cast<int>(inst.ksum.lists.size());
      inst.ksum.t = detail::int_field(j, "t");
      inst.ksum.m = j.contains("m") ? detail::int_field(j, "m") : 0;
      break;
    }
  }
  return inst;
}

inline Instance instance_from_text(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("invalid JSON: ") + e.what());
  }
  return instance_from_json(j);
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return instance_from_text(buf.str());
}

// FNV-1a over the canonical dump: a stable 64-bit content digest.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string instance_digest(const Instance& inst) {
  const std::uint64_t h = fnv1a64(instance_to_json(inst).dump());
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

// --- Reports -----------------------------------------------------------------

inline nlohmann::ordered_json metrics_to_json(const RunMetrics& m) {
  nlohmann::ordered_json j;
  j["step_evals"] = m.step_evals;
  j["list_accesses"] = m.list_accesses;
  j["field_ops"] = m.field_ops;
  j["restarts"] = m.restarts;
  j["retries"] = m.retries;
  j["aborts"] = m.aborts;
  j["clamps"] = m.clamps;
  j["peak_tracked_words"] = m.peak_tracked_words;
  j["wall_time_s"] = m.wall_time_s;
  return j;
}

// One fixed report shape for every solver run.  Rerunning with the same
// (instance, seed, parameters) yields a byte-identical report except for the
// wall_time_s metric.
inline nlohmann::ordered_json make_report(const std::string& algorithm,
                                          const std::string& digest, std::uint64_t seed,
                                          const nlohmann::ordered_json& params,
                                          const std::string& outcome,
                                          const nlohmann::ordered_json& witness,
                                          const RunMetrics& metrics) {
  nlohmann::ordered_json j;
  j["schema"] = "lowspace.report.v1";
  j["instance_digest"] = digest;
  j["seed"] = seed;
  j["algorithm"] = algorithm;
  j["params"] = params;
  j["outcome"] = outcome;
  j["witness"] = witness;
  j["metrics"] = metrics_to_json(metrics);
  return j;
}

// Zeroes the only field allowed to differ between identical-seed reruns.
inline void strip_wall_time(nlohmann::ordered_json& report) {
  if (report.contains("metrics") && report["metrics"].contains("wall_time_s")) {
    report["metrics"]["wall_time_s"] = 0.0;
  }
}

}  // namespace lowspace
