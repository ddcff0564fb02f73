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

// rolegraph: command-line front end.

#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "commands.h"
#include "params.h"
#include "rolegraph/parallel.h"

namespace {

using rolegraph::cli::Invocation;
using rolegraph::cli::Params;

struct Options {
  std::string out;
  std::string config;
  std::string replay;
  std::optional<int64_t> seed;
  int threads = rolegraph::DefaultThreadCount();
  std::vector<std::string> sets;
  std::map<std::string, std::string> inputs;      // role -> path
  std::map<std::string, std::string> overrides;   // knob -> value
  std::vector<std::string> embeddings;            // validate inputs
};

// Input file flag bound to a role.
void AddInput(CLI::App* cmd, Options& o, const std::string& flag,
              const std::string& role, const std::string& help) {
  cmd->add_option_function<std::string>(
         flag, [&o, role](const std::string& path) { o.inputs[role] = path; }, help)
      ->type_name("FILE");
}

// Flag overriding one registry knob.
void AddKnob(CLI::App* cmd, Options& o, const std::string& flag, const std::string& key) {
  const auto& knob = rolegraph::cli::FindKnob(key);
  cmd->add_option_function<std::string>(
         flag, [&o, key](const std::string& v) { o.overrides[key] = v; },
         fmt::format("{} (sets {}, default '{}')", knob.help, key, knob.default_value))
      ->type_name("VALUE");
}

CLI::App* AddCommand(CLI::App& app, Options& o, const std::string& name,
                     const std::string& help) {
  CLI::App* cmd = app.add_subcommand(name, help);
  cmd->add_option("-o,--out", o.out, "output directory")->required()->type_name("DIR");
  cmd->add_option("-c,--config", o.config, "INI config with [section] key = value")
      ->type_name("FILE");
  cmd->add_option("--seed", o.seed, "top-level seed (sets run.seed)");
  cmd->add_option("--threads", o.threads,
                  "worker threads (default $ROLEGRAPH_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--set", o.sets, "override any parameter, key=value (repeatable)")
      ->type_name("KEY=VALUE");
  cmd->add_option("--replay", o.replay,
                  "rerun the command recorded in a manifest; only --out and "
                  "--threads may accompany it")
      ->type_name("MANIFEST");
  return cmd;
}

void ListParams() {
  for (const auto& k : rolegraph::cli::Knobs()) {
    fmt::print("{:<26} {:<16} {}\n", k.key,
               std::string("'") + k.default_value + "'", k.help);
  }
}

Invocation BuildInvocation(const std::string& command, const Options& o) {
  if (!o.replay.empty()) {
    if (!o.config.empty() || o.seed || !o.sets.empty() || !o.inputs.empty() ||
        !o.overrides.empty() || !o.embeddings.empty()) {
      throw rolegraph::InvalidArgument(
          "--replay takes inputs and parameters from the manifest; only --out "
          "and --threads may be given");
    }
    Invocation inv = rolegraph::cli::InvocationFromManifest(o.replay, o.out, o.threads);
    if (inv.command != command) {
      throw rolegraph::InvalidArgument("manifest records command '" + inv.command +
                                       "', not '" + command + "'");
    }
    return inv;
  }
  Invocation inv;
  inv.command = command;
  inv.out_dir = o.out;
  inv.threads = o.threads;
  inv.inputs = o.inputs;
  if (!o.config.empty()) {
    auto in = rolegraph::OpenForRead(o.config);
    inv.params.LoadConfig(in, o.config);
  }
  for (const auto& s : o.sets) inv.params.SetAssignment(s);
  for (const auto& [key, value] : o.overrides) inv.params.Set(key, value);
  if (o.seed) inv.params.Set("run.seed", std::to_string(*o.seed));
  if (!o.embeddings.empty()) {
    std::string joined;
    for (const auto& e : o.embeddings) joined += (joined.empty() ? "" : ",") + e;
    inv.params.Set("embed.import", joined);
  }
  return inv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structural role discovery: graphlet orbit census, role "
               "embeddings, clustering, surrogate explanations and "
               "interdisciplinarity by role."};
  app.set_version_flag("--version", std::string(ROLEGRAPH_VERSION));
  bool list_params = false;
  app.add_flag("--list-params", list_params, "print every parameter and its default");
  app.require_subcommand(0, 1);
  Options o;

  auto* census = AddCommand(app, o, "census", "count graphlet orbits per node");
  AddInput(census, o, "-g,--graph", "graph", "edge list");
  AddInput(census, o, "-n,--nodes", "nodes", "node table (fixes ids, keeps isolated nodes)");

  auto* embed = AddCommand(app, o, "embed", "compute structural role embeddings");
  AddInput(embed, o, "-g,--graph", "graph", "edge list");
  AddInput(embed, o, "-n,--nodes", "nodes", "node table");
  AddKnob(embed, o, "--methods", "embed.methods");

  auto* cluster = AddCommand(app, o, "cluster", "k-means role assignment of one embedding");
  AddInput(cluster, o, "-e,--embedding", "embedding", "embedding CSV");
  AddInput(cluster, o, "--truth", "truth", "reference roles for an NMI report");
  AddKnob(cluster, o, "-k,--k", "cluster.k");

  auto* validate = AddCommand(app, o, "validate", "silhouette sweep over k and embeddings");
  AddInput(validate, o, "--orbits", "orbits", "orbit CSV");
  validate->add_option("-e,--embedding", o.embeddings, "embedding CSV (repeatable)")
      ->type_name("FILE");
  AddInput(validate, o, "--truth", "truth", "reference roles for NMI per k");
  AddKnob(validate, o, "--k-min", "cluster.k_min");
  AddKnob(validate, o, "--k-max", "cluster.k_max");

  auto* explain = AddCommand(app, o, "explain", "surrogate importance and effect curves");
  AddInput(explain, o, "--orbits", "orbits", "orbit CSV");
  AddInput(explain, o, "-r,--roles", "roles", "role CSV (id,role)");
  AddKnob(explain, o, "--keep-roles", "explain.keep_roles");
  AddKnob(explain, o, "--effect-orbits", "explain.effect_orbits");

  auto* idr = AddCommand(app, o, "idr", "Rao-Stirling interdisciplinarity by role");
  AddInput(idr, o, "-g,--graph", "graph", "edge list");
  AddInput(idr, o, "-n,--nodes", "nodes", "node table with a category column");
  AddInput(idr, o, "-r,--roles", "roles", "role CSV (id,role)");
  AddKnob(idr, o, "--direction", "idr.direction");
  AddKnob(idr, o, "--distance", "idr.distance");

  auto* generate = AddCommand(app, o, "generate", "planted graph with known roles");
  AddKnob(generate, o, "--templates", "generate.templates");
  AddKnob(generate, o, "--copies", "generate.copies");
  AddKnob(generate, o, "--noise-edges", "generate.noise_edges");
  AddKnob(generate, o, "--disciplines", "generate.disciplines");

  auto* pipeline = AddCommand(app, o, "pipeline", "every stage end to end");
  AddInput(pipeline, o, "-g,--graph", "graph", "edge list");
  AddInput(pipeline, o, "-n,--nodes", "nodes", "node table with discipline labels");
  AddInput(pipeline, o, "--truth", "truth", "reference roles for NMI reports");
  AddKnob(pipeline, o, "--methods", "embed.methods");
  AddKnob(pipeline, o, "-k,--k", "cluster.k");
  AddKnob(pipeline, o, "--method", "cluster.method");
  AddKnob(pipeline, o, "--keep-roles", "explain.keep_roles");
  AddKnob(pipeline, o, "--direction", "idr.direction");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  if (list_params) {
    ListParams();
    return 0;
  }
  const auto chosen = app.get_subcommands();
  if (chosen.empty()) {
    fmt::print(stderr, "{}", app.help());
    return 2;
  }
  const std::string command = chosen.front()->get_name();
  Invocation inv;
  try {
    inv = BuildInvocation(command, o);
  } catch (const std::exception& e) {
    fmt::print(stderr, "rolegraph {}: {}\n", command, e.what());
    return 2;
  }
  return rolegraph::cli::Execute(inv);
}
