// Copyright 2026 The Rolegraph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Run parameters: a fixed registry of `section.key` knobs with defaults,
// overridable from an INI config file and then from command-line flags.

#ifndef ROLEGRAPH_TOOLS_PARAMS_H_
#define ROLEGRAPH_TOOLS_PARAMS_H_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "rolegraph/csv.h"
#include "rolegraph/errors.h"

namespace rolegraph::cli {

enum class KnobType { kInt, kDouble, kBool, kString, kIntList, kDoubleList, kStringList };

struct Knob {
  const char* key;
  KnobType type;
  const char* default_value;
  const char* help;
};

// Every parameter that can influence an output. Thread counts are absent on
// purpose: results do not depend on them.
inline const std::vector<Knob>& Knobs() {
  static const std::vector<Knob> knobs = {
      {"run.seed", KnobType::kInt, "0", "top-level seed; stage seeds derive from it"},
      {"census.memory_budget_mib", KnobType::kInt, "8192", "orbit counter memory cap"},
      {"embed.methods", KnobType::kStringList, "graphwave,rolx", "native embedding methods"},
      {"embed.import", KnobType::kStringList, "", "external embedding CSVs to include"},
      {"graphwave.scales", KnobType::kDoubleList, "0.5,1.5", "heat kernel scales"},
      {"graphwave.sample_points", KnobType::kInt, "32", "characteristic function samples"},
      {"graphwave.t_max", KnobType::kDouble, "100", "largest sample point"},
      {"graphwave.method", KnobType::kString, "auto", "auto, exact or chebyshev"},
      {"graphwave.chebyshev_order", KnobType::kInt, "30", "polynomial order"},
      {"rolx.rank", KnobType::kInt, "16", "number of RolX factors"},
      {"rolx.depth", KnobType::kInt, "2", "ReFeX recursion depth"},
      {"rolx.prune_threshold", KnobType::kDouble, "0.99", "ReFeX correlation cutoff"},
      {"rolx.max_iterations", KnobType::kInt, "500", "NMF iteration cap"},
      {"cluster.k_min", KnobType::kInt, "2", "smallest k in the sweep"},
      {"cluster.k_max", KnobType::kInt, "19", "largest k in the sweep"},
      {"cluster.k", KnobType::kInt, "3", "k of the role assignment"},
      {"cluster.method", KnobType::kString, "", "embedding to assign roles from; empty: the first"},
      {"cluster.max_iterations", KnobType::kInt, "300", "k-means iteration cap"},
      {"cluster.sample_cap", KnobType::kInt, "20000", "silhouette node sample cap"},
      {"explain.trees", KnobType::kInt, "200", "random forest size"},
      {"explain.min_leaf", KnobType::kInt, "5", "minimum leaf size"},
      {"explain.holdout", KnobType::kDouble, "0.2", "holdout fraction"},
      {"explain.repeats", KnobType::kInt, "10", "permutation importance repeats"},
      {"explain.top", KnobType::kInt, "10", "orbits in the importance listing"},
      {"explain.effect_orbits", KnobType::kIntList, "3,27", "orbits with effect curves"},
      {"explain.effect_kinds", KnobType::kStringList, "ale", "ale and/or pdp"},
      {"explain.bins", KnobType::kInt, "32", "effect curve quantile bins"},
      {"explain.keep_roles", KnobType::kIntList, "", "roles for a sub-population refit"},
      {"idr.direction", KnobType::kString, "citing", "citing, cited or all"},
      {"idr.distance", KnobType::kString, "uniform", "uniform or cocitation_cosine"},
      {"idr.unordered_pairs", KnobType::kBool, "false", "halve the ordered-pair sum"},
      {"idr.bins", KnobType::kInt, "10", "log-degree bins"},
      {"idr.min_per_role", KnobType::kInt, "50", "values per role for a bin to count"},
      {"generate.templates", KnobType::kStringList, "barbell:5:1", "template list"},
      {"generate.copies", KnobType::kInt, "20", "copies of every template"},
      {"generate.noise_edges", KnobType::kInt, "0", "random extra edges"},
      {"generate.disciplines", KnobType::kInt, "8", "synthetic discipline labels; 0 for none"},
  };
  return knobs;
}

inline const Knob& FindKnob(std::string_view key) {
  for (const auto& k : Knobs()) {
    if (key == k.key) return k;
  }
  throw InvalidArgument("unknown parameter '" + std::string(key) + "'");
}

inline std::vector<std::string> SplitList(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      out.emplace_back(Trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!Trim(current).empty() || !out.empty()) out.emplace_back(Trim(current));
  return out;
}

inline void ValidateValue(const Knob& knob, const std::string& value) {
  const auto fail = [&](const char* what) {
    throw InvalidArgument("parameter " + std::string(knob.key) + " = '" + value +
                          "' is not " + what);
  };
  switch (knob.type) {
    case KnobType::kInt:
      if (!ParseInt(value)) fail("an integer");
      break;
    case KnobType::kDouble:
      if (!ParseDouble(value)) fail("a number");
      break;
    case KnobType::kBool:
      if (value != "true" && value != "false") fail("true or false");
      break;
    case KnobType::kString:
      break;
    case KnobType::kIntList:
      for (const auto& item : SplitList(value)) {
        if (!ParseInt(item)) fail("a comma-separated integer list");
      }
      break;
    case KnobType::kDoubleList:
      for (const auto& item : SplitList(value)) {
        if (!ParseDouble(item)) fail("a comma-separated number list");
      }
      break;
    case KnobType::kStringList:
      break;
  }
}

class Params {
 public:
  Params() {
    for (const auto& k : Knobs()) values_[k.key] = k.default_value;
  }

  void Set(std::string_view key, std::string value) {
    const Knob& knob = FindKnob(key);
    value = std::string(Trim(value));
    ValidateValue(knob, value);
    values_[knob.key] = std::move(value);
  }

  // `key=value`.
  void SetAssignment(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument("expected key=value, got '" + std::string(assignment) + "'");
    }
    Set(Trim(assignment.substr(0, eq)), std::string(assignment.substr(eq + 1)));
  }

  // INI file: `[section]` headers and `key = value` lines. Keys outside a
  // section belong to `run`.
  void LoadConfig(std::istream& in, const std::string& origin) {
    std::vector<CLI::ConfigItem> items;
    try {
      items = CLI::ConfigINI().from_config(in);
    } catch (const CLI::Error& e) {
      throw ParseError(origin + ": " + e.what());
    }
    for (const auto& item : items) {
      if (item.name == "++" || item.name == "--") continue;
      std::string key;
      for (const auto& p : item.parents) key += p + ".";
      key = item.parents.empty() ? "run." + item.name : key + item.name;
      std::string value;
      for (size_t i = 0; i < item.inputs.size(); ++i) {
        if (i > 0) value += ',';
        value += item.inputs[i];
      }
      try {
        Set(key, value);
      } catch (const InvalidArgument& e) {
        throw InvalidArgument(origin + ": " + e.what());
      }
    }
  }

  const std::string& Get(std::string_view key) const {
    const auto it = values_.find(std::string(key));
    if (it == values_.end()) throw InvalidArgument("unknown parameter '" + std::string(key) + "'");
    return it->second;
  }
  int64_t GetInt(std::string_view key) const { return *ParseInt(Get(key)); }
  double GetDouble(std::string_view key) const { return *ParseDouble(Get(key)); }
  bool GetBool(std::string_view key) const { return Get(key) == "true"; }
  std::vector<std::string> GetList(std::string_view key) const { return SplitList(Get(key)); }
  std::vector<int64_t> GetIntList(std::string_view key) const {
    std::vector<int64_t> out;
    for (const auto& s : GetList(key)) out.push_back(*ParseInt(s));
    return out;
  }
  std::vector<double> GetDoubleList(std::string_view key) const {
    std::vector<double> out;
    for (const auto& s : GetList(key)) out.push_back(*ParseDouble(s));
    return out;
  }

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace rolegraph::cli

#endif  // ROLEGRAPH_TOOLS_PARAMS_H_
