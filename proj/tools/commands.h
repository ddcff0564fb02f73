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

// Subcommand implementations. Every command runs inside a RunDirectory that
// records inputs, parameters, seeds and outputs into a manifest, and leaves a
// FAILED marker naming the stage when something goes wrong.

#ifndef ROLEGRAPH_TOOLS_COMMANDS_H_
#define ROLEGRAPH_TOOLS_COMMANDS_H_

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "manifest.h"
#include "params.h"
#include "rolegraph/clustering.h"
#include "rolegraph/diversity.h"
#include "rolegraph/embedding.h"
#include "rolegraph/errors.h"
#include "rolegraph/explain.h"
#include "rolegraph/graph.h"
#include "rolegraph/graphwave.h"
#include "rolegraph/orbits.h"
#include "rolegraph/planted.h"
#include "rolegraph/random.h"
#include "rolegraph/rolx.h"

namespace rolegraph::cli {

namespace fs = std::filesystem;

// Seed streams under run.seed, one per randomized stage.
enum SeedStream : uint64_t {
  kRolxStream = 1,
  kClusterStream = 2,
  kForestStream = 3,
  kImportanceStream = 4,
  kSubpopulationStream = 5,
  kGenerateStream = 6,
  kDisciplineStream = 7,
};

struct Invocation {
  std::string command;
  std::map<std::string, std::string> inputs;  // role -> path
  Params params;
  std::string out_dir;
  int threads = 1;
};

class RunDirectory {
 public:
  explicit RunDirectory(const Invocation& inv) : inv_(inv) {
    manifest_.command = inv.command;
    manifest_.params = inv.params.values();
    manifest_.threads = inv.threads;
    manifest_.started_at = UtcTimestamp();
    if (inv.out_dir.empty()) throw InvalidArgument("no output directory given");
    fs::create_directories(inv.out_dir);
  }

  // Digests every input (embedding imports included), then clears what an
  // earlier run left in the directory.
  void Begin() {
    for (const auto& [role, path] : inv_.inputs) {
      manifest_.inputs[role] = {path, Sha256File(path)};
    }
    const auto imports = inv_.params.GetList("embed.import");
    for (size_t i = 0; i < imports.size(); ++i) {
      manifest_.inputs["import_" + std::to_string(i)] = {imports[i],
                                                         Sha256File(imports[i])};
    }
    ClearPreviousRun();
  }

  const Params& params() const { return inv_.params; }
  int threads() const { return inv_.threads; }
  const Manifest& manifest() const { return manifest_; }
  nlohmann::ordered_json& stats() { return manifest_.stats; }

  std::optional<std::string> input(const std::string& role) const {
    const auto it = inv_.inputs.find(role);
    if (it == inv_.inputs.end()) return std::nullopt;
    return it->second;
  }
  std::string RequireInput(const std::string& role) const {
    auto path = input(role);
    if (!path) throw InvalidArgument("missing required input: " + role);
    return *path;
  }

  void Stage(std::string name) {
    stage_ = std::move(name);
    fmt::print(stderr, "[{}] {}\n", inv_.command, stage_);
  }
  const std::string& stage() const { return stage_; }

  void Note(const std::string& message) const {
    fmt::print(stderr, "[{}] {}: {}\n", inv_.command, stage_, message);
  }

  uint64_t Seed(const std::string& name, SeedStream stream) {
    const uint64_t s =
        DeriveSeed(static_cast<uint64_t>(params().GetInt("run.seed")), stream);
    manifest_.seeds[name] = s;
    return s;
  }

  // Writes one output file, refusing to overwrite any input.
  void Write(const std::string& name,
             const std::function<void(std::ostream&)>& writer) {
    const fs::path path = fs::path(inv_.out_dir) / name;
    if (const auto role = InputAt(path)) {
      throw InvalidArgument("output " + path.string() + " would overwrite the " +
                            *role + " input");
    }
    auto out = OpenForWrite(path.string());
    writer(out);
    out.close();
    if (!out) throw Error("failed writing '" + path.string() + "'");
    manifest_.outputs.push_back(name);
  }

  void Finish() {
    manifest_.status = "ok";
    manifest_.finished_at = UtcTimestamp();
    WriteManifest(manifest_, ManifestPath());
  }

  void Fail(const std::string& message) {
    manifest_.status = "failed";
    manifest_.failed_stage = stage_.empty() ? "setup" : stage_;
    manifest_.error = message;
    manifest_.finished_at = UtcTimestamp();
    std::ofstream marker(fs::path(inv_.out_dir) / kFailedMarker);
    marker << "stage: " << manifest_.failed_stage << "\nerror: " << message << '\n';
    try {
      WriteManifest(manifest_, ManifestPath());
    } catch (const Error&) {
      // The marker is the primary failure signal.
    }
  }

 private:
  std::string ManifestPath() const {
    return (fs::path(inv_.out_dir) / kManifestName).string();
  }

  std::optional<std::string> InputAt(const fs::path& path) const {
    if (!fs::exists(path)) return std::nullopt;
    for (const auto& [role, file] : manifest_.inputs) {
      std::error_code ec;
      if (fs::equivalent(path, file.path, ec)) return role;
    }
    return std::nullopt;
  }

  // Removes the marker and the files listed by an earlier manifest, so the
  // directory only ever describes one run. Inputs are never removed.
  void ClearPreviousRun() {
    const fs::path dir(inv_.out_dir);
    fs::remove(dir / kFailedMarker);
    const fs::path old = dir / kManifestName;
    if (!fs::exists(old)) return;
    try {
      auto in = OpenForRead(old.string());
      const auto j = nlohmann::json::parse(in);
      for (const auto& name : j.at("outputs")) {
        const fs::path p = dir / name.get<std::string>();
        if (p.parent_path() == dir && !InputAt(p)) fs::remove(p);
      }
    } catch (const std::exception&) {
      // An unreadable manifest is simply replaced.
    }
    fs::remove(old);
  }

  const Invocation& inv_;
  Manifest manifest_;
  std::string stage_;
};

// Input loading -------------------------------------------------------------

inline LoadedGraph LoadGraphInputs(RunDirectory& run) {
  run.Stage("load");
  std::optional<NodeTable> nodes;
  if (auto path = run.input("nodes")) nodes = LoadNodeTable(*path);
  LoadedGraph g = LoadEdgeList(run.RequireInput("graph"),
                               nodes ? IdPolicy::kStrict : IdPolicy::kCreate,
                               nodes ? &*nodes : nullptr);
  for (const auto& w : g.warnings) run.Note("warning: " + w);
  const Components components = ConnectedComponents(g.graph);
  auto& s = run.stats()["graph"];
  s["nodes"] = g.graph.node_count();
  s["edges"] = g.graph.edge_count();
  s["components"] = components.count;
  s["self_loops_dropped"] = g.self_loops;
  s["duplicate_edges_collapsed"] = g.duplicate_edges;
  s["citation_arcs"] = g.links.arc_count();
  run.Note(fmt::format("{} nodes, {} edges, {} connected component(s)",
                       g.graph.node_count(), g.graph.edge_count(),
                       components.count));
  return g;
}

inline NodeTable TableFromIds(const std::vector<std::string>& ids) {
  NodeTable t;
  for (const auto& id : ids) t.Add(id);
  return t;
}

inline OrbitTable LoadOrbits(const std::string& path) {
  auto in = OpenForRead(path);
  try {
    return ReadOrbitCsv(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline RoleAssignment LoadRoles(const std::string& path, const NodeTable& nodes) {
  auto in = OpenForRead(path);
  RoleTable table;
  try {
    table = ReadRolesCsv(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
  return AlignRoles(table, nodes, path);
}

// Stages ----------------------------------------------------------------------

inline OrbitMatrix CensusStage(RunDirectory& run, const LoadedGraph& g) {
  run.Stage("census");
  OrbitCountOptions options;
  options.threads = run.threads();
  options.memory_budget_bytes = run.params().GetInt("census.memory_budget_mib") << 20;
  OrbitMatrix counts = CountOrbits(g.graph, options);
  run.Write("orbits.csv", [&](std::ostream& out) { WriteOrbitCsv(counts, g.nodes, out); });
  return counts;
}

inline HeatKernelMethod ParseHeatKernelMethod(const std::string& text) {
  if (text == "auto") return HeatKernelMethod::kAuto;
  if (text == "exact") return HeatKernelMethod::kExact;
  if (text == "chebyshev") return HeatKernelMethod::kChebyshev;
  throw InvalidArgument("unknown graphwave.method '" + text +
                        "' (expected auto, exact or chebyshev)");
}

inline std::vector<EmbeddingMatrix> EmbedStage(RunDirectory& run,
                                               const LoadedGraph& g) {
  run.Stage("embed");
  const Params& p = run.params();
  std::vector<EmbeddingMatrix> out;
  const auto methods = p.GetList("embed.methods");
  for (const auto& method : methods) {
    if (method == "graphwave") {
      GraphWaveOptions o;
      o.scales = p.GetDoubleList("graphwave.scales");
      o.sample_points = static_cast<int>(p.GetInt("graphwave.sample_points"));
      o.t_max = p.GetDouble("graphwave.t_max");
      o.dimension = 2 * static_cast<int>(o.scales.size()) * o.sample_points;
      o.method = ParseHeatKernelMethod(p.Get("graphwave.method"));
      o.chebyshev_order = static_cast<int>(p.GetInt("graphwave.chebyshev_order"));
      o.threads = run.threads();
      out.push_back(GraphWaveEmbed(g.graph, o));
    } else if (method == "rolx") {
      RolxOptions o;
      o.rank = static_cast<int>(p.GetInt("rolx.rank"));
      o.refex.depth = static_cast<int>(p.GetInt("rolx.depth"));
      o.refex.prune_threshold = p.GetDouble("rolx.prune_threshold");
      o.nmf.max_iterations = static_cast<int>(p.GetInt("rolx.max_iterations"));
      o.nmf.seed = run.Seed("rolx", kRolxStream);
      RolxResult r = RolxEmbed(g.graph, o);
      run.stats()["rolx"] = {{"features", r.features.names},
                             {"nmf_iterations", r.factorization.iterations},
                             {"nmf_converged", r.factorization.converged}};
      if (r.warning) run.Note("warning: NMF stopped at the iteration cap");
      out.push_back(std::move(r.embedding));
    } else {
      throw InvalidArgument("unknown embedding method '" + method +
                            "' (native: graphwave, rolx; others via embed.import)");
    }
  }
  for (const auto& path : p.GetList("embed.import")) {
    out.push_back(ImportEmbedding(path, g.nodes));
  }
  std::set<std::string> tags;
  for (const auto& e : out) {
    CheckFinite(e);
    if (!tags.insert(e.method_tag).second) {
      throw InvalidArgument("two embeddings share the method tag '" + e.method_tag + "'");
    }
    run.Write("embedding_" + e.method_tag + ".csv",
              [&](std::ostream& os) { WriteEmbeddingCsv(e, g.nodes, os); });
  }
  if (out.empty()) throw InvalidArgument("no embeddings requested");
  return out;
}

inline SweepOptions SweepOptionsFrom(const RunDirectory& run) {
  const Params& p = run.params();
  SweepOptions o;
  o.k_min = static_cast<int>(p.GetInt("cluster.k_min"));
  o.k_max = static_cast<int>(p.GetInt("cluster.k_max"));
  o.kmeans.max_iterations = static_cast<int>(p.GetInt("cluster.max_iterations"));
  o.kmeans.threads = run.threads();
  o.silhouette.sample_cap = p.GetInt("cluster.sample_cap");
  o.silhouette.threads = run.threads();
  return o;
}

inline void ValidateStage(RunDirectory& run, std::span<const EmbeddingMatrix> embeddings,
                          const OrbitMatrix& counts,
                          const std::optional<RoleAssignment>& truth) {
  run.Stage("validate");
  const SweepOptions options = SweepOptionsFrom(run);
  const uint64_t seed = run.Seed("cluster", kClusterStream);
  const auto rows = SilhouetteSweep(embeddings, LogTransform(counts), seed, options);
  run.Write("sweep.csv", [&](std::ostream& out) {
    out << "# distance=euclidean features=log1p_orbits seed=" << seed << '\n';
    WriteSweepCsv(rows, out);
  });
  if (!truth) return;
  run.Write("recovery.csv", [&](std::ostream& out) {
    out << "method,k,nmi\n";
    for (const auto& e : embeddings) {
      for (int k = options.k_min; k <= options.k_max; ++k) {
        const auto fit = KMeans(e, k, seed, options.kmeans);
        out << EscapeCsvField(e.method_tag) << ',' << k << ','
            << FormatDouble(NormalizedMutualInformation(fit.assignment.labels,
                                                        truth->labels))
            << '\n';
      }
    }
  });
}

inline const EmbeddingMatrix& ChooseEmbedding(const RunDirectory& run,
                                              std::span<const EmbeddingMatrix> embeddings) {
  const std::string& wanted = run.params().Get("cluster.method");
  if (wanted.empty()) return embeddings.front();
  for (const auto& e : embeddings) {
    if (e.method_tag == wanted) return e;
  }
  throw InvalidArgument("cluster.method '" + wanted + "' is not among the embeddings");
}

inline RoleAssignment ClusterStage(RunDirectory& run, const EmbeddingMatrix& embedding,
                                   const NodeTable& nodes,
                                   const std::optional<RoleAssignment>& truth) {
  run.Stage("cluster");
  const SweepOptions options = SweepOptionsFrom(run);
  const int k = static_cast<int>(run.params().GetInt("cluster.k"));
  const uint64_t seed = run.Seed("cluster", kClusterStream);
  const KMeansResult fit = KMeans(embedding, k, seed, options.kmeans);
  if (fit.degenerate) {
    run.Note(fmt::format("warning: only {} of {} clusters are non-empty",
                         fit.k_effective, k));
  }
  std::vector<int64_t> sizes(k, 0);
  for (int32_t l : fit.assignment.labels) ++sizes[l];
  auto& s = run.stats()["roles"];
  s["method"] = embedding.method_tag;
  s["k"] = k;
  s["k_effective"] = fit.k_effective;
  s["sizes"] = sizes;
  s["kmeans_iterations"] = fit.iterations;
  s["kmeans_converged"] = fit.converged;
  if (truth) {
    s["nmi_vs_truth"] =
        NormalizedMutualInformation(fit.assignment.labels, truth->labels);
  }
  run.Write("roles.csv",
            [&](std::ostream& out) { WriteRolesCsv(fit.assignment, nodes, out); });
  return fit.assignment;
}

inline ForestOptions ForestOptionsFrom(const RunDirectory& run) {
  const Params& p = run.params();
  ForestOptions o;
  o.trees = static_cast<int>(p.GetInt("explain.trees"));
  o.min_leaf = static_cast<int>(p.GetInt("explain.min_leaf"));
  o.holdout_fraction = p.GetDouble("explain.holdout");
  o.threads = run.threads();
  return o;
}

// Importance listing and CSV plus one effect-curve file per requested orbit.
inline void ExplainOutputs(RunDirectory& run, const RandomForest& forest,
                           const DenseMatrix& features, std::span<const int32_t> roles,
                           double threshold, const std::string& suffix,
                           nlohmann::ordered_json& stats) {
  const Params& p = run.params();
  const ImportanceReport report =
      PermutationImportance(forest, features, roles,
                            static_cast<int>(p.GetInt("explain.repeats")),
                            run.Seed("importance", kImportanceStream), run.threads());
  stats["holdout_accuracy"] = forest.holdout_accuracy;
  stats["top_orbit"] = report.rows.front().feature;
  run.Write("importance" + suffix + ".csv",
            [&](std::ostream& out) { WriteImportanceCsv(report, out); });
  run.Write("importance" + suffix + ".txt", [&](std::ostream& out) {
    WriteImportanceListing(report, static_cast<int>(p.GetInt("explain.top")), out);
  });

  std::vector<EffectKind> kinds;
  for (const auto& k : p.GetList("explain.effect_kinds")) {
    if (k == "ale") {
      kinds.push_back(EffectKind::kAle);
    } else if (k == "pdp") {
      kinds.push_back(EffectKind::kPdp);
    } else {
      throw InvalidArgument("unknown effect kind '" + k + "' (expected ale or pdp)");
    }
  }
  const int bins = static_cast<int>(p.GetInt("explain.bins"));
  nlohmann::ordered_json skipped = nlohmann::ordered_json::array();
  for (const int64_t orbit : p.GetIntList("explain.effect_orbits")) {
    if (orbit < 0 || orbit >= features.cols()) {
      throw InvalidArgument(fmt::format("effect orbit {} out of range", orbit));
    }
    double lo = features(0, orbit), hi = lo;
    for (int64_t r = 0; r < features.rows(); ++r) {
      lo = std::min(lo, features(r, orbit));
      hi = std::max(hi, features(r, orbit));
    }
    if (lo == hi) {
      run.Note(fmt::format("orbit {} is constant; no effect curve", orbit));
      skipped.push_back(orbit);
      continue;
    }
    std::vector<EffectCurve> curves;
    for (EffectKind kind : kinds) {
      auto part = EffectCurves(forest, features, static_cast<int>(orbit), kind, bins,
                               run.threads());
      for (auto& c : part) curves.push_back(std::move(c));
    }
    run.Write(fmt::format("effects{}_o{}.csv", suffix, orbit), [&](std::ostream& out) {
      WriteEffectCurveCsv(curves, threshold, out);
    });
  }
  stats["constant_effect_orbits"] = skipped;
}

inline void ExplainStage(RunDirectory& run, const OrbitMatrix& counts,
                         const RoleAssignment& roles) {
  run.Stage("explain");
  const LogOrbitMatrix features = LogTransform(counts);
  const double threshold = Orbit3Threshold(counts);
  const ForestOptions options = ForestOptionsFrom(run);
  const RandomForest forest =
      TrainSurrogate(features, roles.labels, run.Seed("forest", kForestStream), options);
  auto& stats = run.stats()["explain"];
  stats["orbit3_threshold"] = threshold;
  ExplainOutputs(run, forest, features, roles.labels, threshold, "", stats);

  const auto keep = run.params().GetIntList("explain.keep_roles");
  if (keep.empty()) return;
  run.Stage("explain-subpopulation");
  const std::set<int32_t> keep_set(keep.begin(), keep.end());
  const SubpopulationFit fit =
      RefitOnSubpopulation(features, roles.labels, keep_set,
                           run.Seed("subpopulation_forest", kSubpopulationStream),
                           options);
  auto& sub = run.stats()["explain_subpopulation"];
  sub["keep_roles"] = keep;
  sub["rows"] = fit.rows.size();
  ExplainOutputs(run, fit.forest, fit.features, fit.roles, threshold, "_subpop", sub);
}

inline void IdrStage(RunDirectory& run, const LoadedGraph& g,
                     const RoleAssignment& roles) {
  run.Stage("idr");
  const Params& p = run.params();
  const Direction direction = ParseDirection(p.Get("idr.direction"));
  const bool has_arcs = !g.links.empty();
  const DisciplineDistanceMatrix dmat = DisciplineDistance(
      g.nodes, g.graph, ParseDistanceMode(p.Get("idr.distance")),
      has_arcs ? &g.links : nullptr);
  DiversityOptions o;
  o.direction = direction;
  o.unordered_pairs = p.GetBool("idr.unordered_pairs");
  o.threads = run.threads();
  const DiversityReport report = ComputeDiversity(
      g.graph, g.nodes, dmat, roles.labels, has_arcs ? &g.links : nullptr, o);
  const BinnedIdrTable table =
      BinnedIdrReport(report, static_cast<int>(p.GetInt("idr.bins")),
                      static_cast<int>(p.GetInt("idr.min_per_role")));
  int64_t included = 0;
  for (const auto& c : table.cells) included += c.included ? 1 : 0;
  auto& s = run.stats()["idr"];
  s["disciplines"] = dmat.disciplines.size();
  s["zero_degree_excluded"] = table.zero_degree_excluded;
  s["without_idr"] = table.without_idr;
  s["included_cells"] = included;
  run.Write("idr.csv", [&](std::ostream& out) { WriteDiversityCsv(report, g.nodes, out); });
  run.Write("idr_binned.csv", [&](std::ostream& out) { WriteBinnedCsv(table, out); });
  run.Write("idr_values.csv",
            [&](std::ostream& out) { WriteBinnedValuesCsv(table, out); });
}

// Commands --------------------------------------------------------------------

inline void RunCensus(RunDirectory& run) {
  const LoadedGraph g = LoadGraphInputs(run);
  CensusStage(run, g);
}

inline void RunEmbed(RunDirectory& run) {
  const LoadedGraph g = LoadGraphInputs(run);
  EmbedStage(run, g);
}

inline void RunCluster(RunDirectory& run) {
  run.Stage("load");
  const std::string path = run.RequireInput("embedding");
  auto in = OpenForRead(path);
  EmbeddingTable table;
  try {
    table = ReadEmbeddingCsv(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
  const NodeTable nodes = TableFromIds(table.ids);
  EmbeddingMatrix e{table.vectors, table.method_tag.empty()
                                       ? fs::path(path).stem().string()
                                       : table.method_tag};
  std::optional<RoleAssignment> truth;
  if (auto t = run.input("truth")) truth = LoadRoles(*t, nodes);
  ClusterStage(run, e, nodes, truth);
}

inline void RunValidate(RunDirectory& run) {
  run.Stage("load");
  const OrbitTable orbits = LoadOrbits(run.RequireInput("orbits"));
  const NodeTable nodes = TableFromIds(orbits.ids);
  std::vector<EmbeddingMatrix> embeddings;
  for (const auto& path : run.params().GetList("embed.import")) {
    embeddings.push_back(ImportEmbedding(path, nodes));
  }
  std::optional<RoleAssignment> truth;
  if (auto t = run.input("truth")) truth = LoadRoles(*t, nodes);
  ValidateStage(run, embeddings, orbits.counts, truth);
}

inline void RunExplain(RunDirectory& run) {
  run.Stage("load");
  const OrbitTable orbits = LoadOrbits(run.RequireInput("orbits"));
  const NodeTable nodes = TableFromIds(orbits.ids);
  const RoleAssignment roles = LoadRoles(run.RequireInput("roles"), nodes);
  ExplainStage(run, orbits.counts, roles);
}

inline void RunIdr(RunDirectory& run) {
  const LoadedGraph g = LoadGraphInputs(run);
  const RoleAssignment roles = LoadRoles(run.RequireInput("roles"), g.nodes);
  IdrStage(run, g, roles);
}

inline void RunGenerate(RunDirectory& run) {
  run.Stage("generate");
  const Params& p = run.params();
  std::vector<StructuralTemplate> templates;
  for (const auto& t : p.GetList("generate.templates")) {
    templates.push_back(StructuralTemplate::Parse(t));
  }
  PlantedGraph planted = GeneratePlantedGraph(
      templates, static_cast<int>(p.GetInt("generate.copies")),
      p.GetInt("generate.noise_edges"), run.Seed("generate", kGenerateStream));
  const int disciplines = static_cast<int>(p.GetInt("generate.disciplines"));
  if (disciplines > 0) {
    AssignSyntheticDisciplines(planted, disciplines,
                               run.Seed("disciplines", kDisciplineStream));
  }
  RoleAssignment truth;
  truth.labels = planted.true_role;
  truth.k = static_cast<int32_t>(planted.role_names.size());
  std::vector<int64_t> counts(truth.k, 0);
  for (int32_t r : truth.labels) ++counts[r];
  auto& s = run.stats()["planted"];
  s["nodes"] = planted.graph.node_count();
  s["edges"] = planted.graph.edge_count();
  s["role_names"] = planted.role_names;
  s["role_counts"] = counts;
  run.Write("graph.txt", [&](std::ostream& out) {
    WriteEdgeList(planted.graph, planted.nodes, out);
  });
  run.Write("nodes.csv", [&](std::ostream& out) { WriteNodeTable(planted.nodes, out); });
  run.Write("truth.csv",
            [&](std::ostream& out) { WriteRolesCsv(truth, planted.nodes, out); });
}

inline void RunPipeline(RunDirectory& run) {
  const LoadedGraph g = LoadGraphInputs(run);
  std::optional<RoleAssignment> truth;
  if (auto t = run.input("truth")) truth = LoadRoles(*t, g.nodes);
  const OrbitMatrix counts = CensusStage(run, g);
  const std::vector<EmbeddingMatrix> embeddings = EmbedStage(run, g);
  ValidateStage(run, embeddings, counts, truth);
  const RoleAssignment roles =
      ClusterStage(run, ChooseEmbedding(run, embeddings), g.nodes, truth);
  ExplainStage(run, counts, roles);
  if (g.nodes.DistinctCategories().empty()) {
    run.Stage("idr");
    run.Note("skipped: the node table carries no discipline categories");
    run.stats()["idr"] = "skipped: no categories";
    return;
  }
  IdrStage(run, g, roles);
}

inline const std::map<std::string, std::function<void(RunDirectory&)>>& Commands() {
  static const std::map<std::string, std::function<void(RunDirectory&)>> commands = {
      {"census", RunCensus},     {"embed", RunEmbed},     {"cluster", RunCluster},
      {"validate", RunValidate}, {"explain", RunExplain}, {"idr", RunIdr},
      {"generate", RunGenerate}, {"pipeline", RunPipeline},
  };
  return commands;
}

// Runs one command and returns the process exit code. Errors are reported
// on stderr with the failing stage.
inline int Execute(const Invocation& inv) {
  std::optional<RunDirectory> run;
  try {
    const auto it = Commands().find(inv.command);
    if (it == Commands().end()) throw InvalidArgument("unknown command " + inv.command);
    run.emplace(inv);
    run->Begin();
    it->second(*run);
    run->Finish();
    return 0;
  } catch (const std::exception& e) {
    const std::string stage = run && !run->stage().empty() ? run->stage() : "setup";
    fmt::print(stderr, "rolegraph {}: error in stage {}: {}\n", inv.command, stage,
               e.what());
    if (run) run->Fail(e.what());
    return 1;
  }
}

// Rebuilds an invocation from a manifest. Inputs must still hash to the
// recorded digests.
inline Invocation InvocationFromManifest(const std::string& path, std::string out_dir,
                                         int threads) {
  const Manifest m = ReadManifest(path);
  Invocation inv;
  inv.command = m.command;
  inv.out_dir = std::move(out_dir);
  inv.threads = threads;
  for (const auto& [key, value] : m.params) inv.params.Set(key, value);
  for (const auto& [role, file] : m.inputs) {
    const std::string digest = Sha256File(file.path);
    if (digest != file.sha256) {
      throw InvalidArgument("input " + role + " (" + file.path +
                            ") changed since the manifest was written");
    }
    inv.inputs[role] = file.path;
  }
  return inv;
}

}  // namespace rolegraph::cli

#endif  // ROLEGRAPH_TOOLS_COMMANDS_H_
