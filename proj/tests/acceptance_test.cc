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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "commands.h"
#include "manifest.h"
#include "rolegraph/clustering.h"
#include "rolegraph/diversity.h"
#include "rolegraph/explain.h"
#include "rolegraph/forest.h"
#include "rolegraph/graphwave.h"
#include "rolegraph/orbit_oracle.h"
#include "rolegraph/orbits.h"
#include "rolegraph/planted.h"
#include "rolegraph/rolx.h"
#include "test_graphs.h"

namespace rolegraph {
namespace {

namespace fs = std::filesystem;
namespace tg = ::rolegraph::testing;

struct Outcome {
  bool pass;
  std::string detail;
};

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

int32_t RoleId(const PlantedGraph& p, const std::string& name) {
  const auto it = std::find(p.role_names.begin(), p.role_names.end(), name);
  if (it == p.role_names.end()) throw Error("no role named " + name);
  return static_cast<int32_t>(it - p.role_names.begin());
}

// Graphs for the orbit criteria: 30 random graphs plus small named ones.
std::vector<std::pair<std::string, Graph>> OrbitTestGraphs() {
  std::vector<std::pair<std::string, Graph>> graphs;
  const std::vector<std::pair<double, int>> families = {{0.02, 110}, {0.05, 60}, {0.1, 30}};
  uint64_t seed = 500;
  for (const auto& [p, n0] : families) {
    for (int i = 0; i < 10; ++i) {
      const int n = n0 + 10 * i;
      graphs.emplace_back(fmt::format("G({}, {})", n, p), tg::ErdosRenyi(n, p, seed++));
    }
  }
  graphs.emplace_back("K5", tg::Clique(5));
  graphs.emplace_back("C4", tg::Cycle(4));
  graphs.emplace_back("P4", tg::Path(4));
  graphs.emplace_back("star3", tg::Star(3));
  graphs.emplace_back("star7", tg::Star(7));
  graphs.emplace_back("barbell4", tg::Barbell(4));
  graphs.emplace_back("barbell5", tg::Barbell(5));
  const std::vector<StructuralTemplate> t = {StructuralTemplate::Barbell(5, 1),
                                             StructuralTemplate::Barbell(4, 3)};
  graphs.emplace_back("planted barbells", GeneratePlantedGraph(t, 3, 0, 1).graph);
  return graphs;
}

Outcome OrbitOracle() {
  const auto start = std::chrono::steady_clock::now();
  int mismatches = 0, compared = 0;
  std::string first;
  for (const auto& [name, g] : OrbitTestGraphs()) {
    ++compared;
    if (CountOrbits(g) != CountOrbitsBruteForce(g)) {
      ++mismatches;
      if (first.empty()) first = name;
    }
  }
  const double s = Seconds(start);
  return {mismatches == 0 && s < 60.0,
          fmt::format("{} graphs, {} mismatches{}, {:.1f} s", compared, mismatches,
                      first.empty() ? "" : " (first: " + first + ")", s)};
}

Outcome OrbitIdentities() {
  int failures = 0, compared = 0;
  for (const auto& [name, g] : OrbitTestGraphs()) {
    const OrbitMatrix c = CountOrbits(g);
    ++compared;
    const bool ok = c.ColumnSum(0) == 2 * g.edge_count() &&
                    c.ColumnSum(3) == 3 * tg::CountTrianglesNaive(g) &&
                    c.ColumnSum(1) == 2 * c.ColumnSum(2);
    failures += ok ? 0 : 1;
  }
  return {failures == 0, fmt::format("{} graphs, {} violations", compared, failures)};
}

// True when some automorphism of g maps u to v (backtracking search).
bool Automorphic(const Graph& g, NodeId u, NodeId v) {
  const int64_t n = g.node_count();
  std::vector<NodeId> image(n, -1);
  std::vector<bool> used(n, false);
  std::vector<NodeId> order;
  order.push_back(u);
  for (NodeId w = 0; w < n; ++w) {
    if (w != u) order.push_back(w);
  }
  std::function<bool(size_t)> extend = [&](size_t depth) {
    if (depth == order.size()) return true;
    const NodeId a = order[depth];
    for (NodeId b = 0; b < n; ++b) {
      if (used[b] || g.degree(a) != g.degree(b)) continue;
      if (depth == 0 && b != v) continue;
      bool consistent = true;
      for (size_t i = 0; i < depth && consistent; ++i) {
        consistent = g.HasEdge(a, order[i]) == g.HasEdge(b, image[order[i]]);
      }
      if (!consistent) continue;
      image[a] = b;
      used[b] = true;
      if (extend(depth + 1)) return true;
      used[b] = false;
    }
    image[a] = -1;
    return false;
  };
  return extend(0);
}

Outcome GraphWaveAutomorphisms() {
  const std::vector<std::pair<std::string, Graph>> graphs = {
      {"3-star", tg::Star(3)},
      {"10-node barbell", tg::Barbell(5)},
      {"two K5", tg::DisjointUnion(tg::Clique(5), tg::Clique(5))}};
  double worst = 0.0;
  int pairs = 0;
  for (const auto& [name, g] : graphs) {
    const EmbeddingMatrix e = GraphWaveEmbed(g);
    for (NodeId u = 0; u < g.node_count(); ++u) {
      for (NodeId v = u + 1; v < g.node_count(); ++v) {
        if (!Automorphic(g, u, v)) continue;
        ++pairs;
        for (int64_t c = 0; c < e.width(); ++c) {
          worst = std::max(worst, std::abs(e.vectors(u, c) - e.vectors(v, c)));
        }
      }
    }
  }
  return {pairs > 0 && worst < 1e-9,
          fmt::format("{} equivalent pairs, max difference {:.2e}", pairs, worst)};
}

Outcome RoleRecovery() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<StructuralTemplate> t = {StructuralTemplate::Barbell(5, 1)};
  const PlantedGraph p = GeneratePlantedGraph(t, 20, 0, 1);
  const EmbeddingMatrix gw = GraphWaveEmbed(p.graph);
  const double nmi_gw =
      NormalizedMutualInformation(KMeans(gw, 3, 5).assignment.labels, p.true_role);
  RolxOptions options;
  options.rank = 3;
  options.nmf.seed = 11;
  const EmbeddingMatrix rolx = RolxEmbed(p.graph, options).embedding;
  const double nmi_rolx =
      NormalizedMutualInformation(KMeans(rolx, 3, 5).assignment.labels, p.true_role);
  const double s = Seconds(start);
  return {nmi_gw >= 0.9 && nmi_rolx >= 0.7 && s < 120.0,
          fmt::format("{} nodes; GraphWave NMI {:.3f}, RolX NMI {:.3f}, {:.1f} s",
                      p.graph.node_count(), nmi_gw, nmi_rolx, s)};
}

Outcome SilhouetteSanity() {
  DenseMatrix x(4, 2);
  const double pts[4][2] = {{0, 0}, {0, 1}, {10, 10}, {10, 11}};
  for (int i = 0; i < 4; ++i) {
    x(i, 0) = pts[i][0];
    x(i, 1) = pts[i][1];
  }
  const std::vector<int32_t> labels = {0, 0, 1, 1};
  const double s_outer = 1.0 - 1.0 / ((std::sqrt(200.0) + std::sqrt(221.0)) / 2);
  const double s_inner = 1.0 - 1.0 / ((std::sqrt(181.0) + std::sqrt(200.0)) / 2);
  const double expected = (s_outer + s_inner) / 2;
  const double got = Silhouette(labels, x).score;
  bool ok = std::abs(got - expected) < 1e-6;
  double worst = 0.0;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    RandomEngine rng(100 + seed);
    DenseMatrix cloud(400, 5);
    for (double& v : cloud.data()) v = StandardNormal(rng);
    std::vector<int32_t> random(400);
    for (auto& l : random) l = static_cast<int32_t>(UniformIndex(rng, 3));
    worst = std::max(worst, std::abs(Silhouette(random, cloud).score));
  }
  ok = ok && worst <= 0.1;
  return {ok, fmt::format("4-point {:.6f} (expected {:.6f}); random labels max |s| {:.3f}",
                          got, expected, worst)};
}

Outcome SurrogateFidelity() {
  const OrbitMatrix counts = tg::IndependentOrbitCounts(2000, 13);
  const LogOrbitMatrix x = LogTransform(counts);
  std::vector<int32_t> y(x.rows());
  for (int64_t v = 0; v < x.rows(); ++v) y[v] = counts.at(v, 0) > 20 ? 1 : 0;
  const RandomForest forest = TrainSurrogate(x, y, 1);
  const ImportanceReport report = PermutationImportance(forest, x, y, 5, 2);

  RandomEngine rng(7);
  std::vector<int32_t> random(x.rows());
  for (auto& l : random) l = static_cast<int32_t>(UniformIndex(rng, 3));
  const RandomForest chance = TrainSurrogate(x, random, 4);
  const bool ok = forest.holdout_accuracy >= 0.99 && report.rows.front().feature == 0 &&
                  std::abs(chance.holdout_accuracy - 1.0 / 3) <= 0.05;
  return {ok, fmt::format("threshold accuracy {:.3f}, top orbit {}; random-label "
                          "accuracy {:.3f} (k = 3)",
                          forest.holdout_accuracy, report.rows.front().feature,
                          chance.holdout_accuracy)};
}

Outcome AleCorrectness() {
  constexpr double kCut = 4.3;
  RandomEngine rng(21);
  DenseMatrix x(2000, 3);
  for (double& v : x.data()) v = 10.0 * UniformReal(rng);
  std::vector<int32_t> y(x.rows());
  for (int64_t i = 0; i < x.rows(); ++i) y[i] = x(i, 1) > kCut ? 1 : 0;
  ForestOptions options;
  options.trees = 40;
  options.features_per_split = 3;
  const RandomForest forest = TrainRandomForest(x, y, 4, options);

  const EffectCurve c = EffectCurves(forest, x, 1, EffectKind::kAle, 32)[1];
  size_t jump = 1;
  for (size_t k = 1; k < c.grid.size(); ++k) {
    if (c.values[k] - c.values[k - 1] > c.values[jump] - c.values[jump - 1]) jump = k;
  }
  const double width = c.grid[jump] - c.grid[jump - 1];
  const bool step_ok = kCut >= c.grid[jump - 1] - width && kCut <= c.grid[jump] + width;

  double unused = 0.0;
  for (int f : {0, 2}) {
    for (const auto& t : forest.trees) {
      if (t.UsesFeature(f)) throw Error("feature assumed unused is split on");
    }
    for (const auto& curve : EffectCurves(forest, x, f, EffectKind::kAle)) {
      for (double v : curve.values) unused = std::max(unused, std::abs(v));
    }
  }

  std::vector<int32_t> noisy = y;
  for (auto& l : noisy) {
    if (UniformReal(rng) < 0.2) l = static_cast<int32_t>(UniformIndex(rng, 3));
  }
  ForestOptions noisy_options;
  noisy_options.trees = 30;
  const RandomForest noisy_forest = TrainRandomForest(x, noisy, 8, noisy_options);
  double centering = 0.0;
  for (int f = 0; f < 3; ++f) {
    for (const auto& curve : EffectCurves(noisy_forest, x, f, EffectKind::kAle, 16)) {
      double weighted = 0.0;
      for (size_t b = 0; b < curve.bin_counts.size(); ++b) {
        weighted += curve.bin_counts[b] * 0.5 * (curve.values[b] + curve.values[b + 1]);
      }
      centering = std::max(centering, std::abs(weighted));
    }
  }
  return {step_ok && unused <= 1e-12 && centering <= 1e-9,
          fmt::format("step in ({:.3f}, {:.3f}] for c = {}, bin width {:.3f}; unused "
                      "max |ALE| {:.1e}; centering residual {:.1e}",
                      c.grid[jump - 1], c.grid[jump], kCut, width, unused, centering)};
}

Outcome RaoStirlingExactness() {
  const auto idr = [](const std::vector<int>& counts) {
    int total = 0;
    for (int c : counts) total += c;
    const Graph g = tg::Star(total);
    NodeTable nodes;
    nodes.Add("hub");
    for (size_t i = 0; i < counts.size(); ++i) {
      for (int c = 0; c < counts[i]; ++c) {
        const NodeId v = nodes.Add(fmt::format("n{}_{}", i, c));
        nodes.set_category(v, "d" + std::to_string(i));
      }
    }
    const auto dmat = DisciplineDistance(nodes, g, DistanceMode::kUniform);
    DiversityOptions options;
    options.direction = Direction::kAll;
    return *RaoStirling(0, g, nodes, dmat, nullptr, options).idr;
  };
  RandomEngine rng(42);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> counts(2 + UniformIndex(rng, 6));
    int total = 0;
    for (int& c : counts) total += (c = 1 + static_cast<int>(UniformIndex(rng, 20)));
    double simpson = 1.0;
    for (int c : counts) simpson -= (static_cast<double>(c) / total) * (static_cast<double>(c) / total);
    worst = std::max(worst, std::abs(idr(counts) - simpson));
  }
  const double worked = idr({2, 1, 1});
  return {worst <= 1e-12 && worked == 0.625,
          fmt::format("Simpson identity max error {:.1e} over 100 vectors; "
                      "(0.5, 0.25, 0.25) -> {}", worst, worked)};
}

// Bridge centers hang off two 5-cliques; the lollipop's inner tail node has
// the same degree but hangs off one.
Outcome Orbit27Effect() {
  const std::vector<StructuralTemplate> t = {StructuralTemplate::Barbell(5, 3),
                                             StructuralTemplate::Lollipop(5, 3)};
  const PlantedGraph p = GeneratePlantedGraph(t, 20, 0, 1);
  const OrbitMatrix counts = CountOrbits(p.graph);
  const LogOrbitMatrix x = LogTransform(counts);
  const RandomForest forest = TrainSurrogate(x, p.true_role, 3);
  const double threshold = Orbit3Threshold(counts);
  const int32_t center = RoleId(p, "bridge-center");
  const auto curves = EffectCurves(forest, x, 27, EffectKind::kAle, 32);
  const EffectCurve* curve = nullptr;
  for (const auto& c : curves) {
    if (c.class_label == center) curve = &c;
  }
  if (curve == nullptr) throw Error("no bridge-center curve");
  std::optional<double> at_or_below;
  bool above_positive = true;
  int above = 0;
  std::string points;
  for (size_t k = 0; k < curve->grid.size(); ++k) {
    points += fmt::format(" {:.3f}:{:+.3f}", curve->grid[k], curve->values[k]);
    if (curve->grid[k] <= threshold) {
      at_or_below = curve->values[k];
    } else {
      ++above;
      above_positive = above_positive && curve->values[k] > 0.0;
    }
  }
  const bool ok = at_or_below && *at_or_below < 0.0 && above > 0 && above_positive;
  return {ok, fmt::format("threshold {:.3f}; bridge-center ALE on o27 (grid:value){}",
                          threshold, points)};
}

Outcome BridgeDiversity() {
  const std::vector<StructuralTemplate> t = {StructuralTemplate::Barbell(3, 1)};
  PlantedGraph p = GeneratePlantedGraph(t, 100, 0, 1);
  AssignSyntheticDisciplines(p, 8, 2);
  const int32_t center = RoleId(p, "bridge-center");
  std::vector<int32_t> roles(p.true_role.size());
  for (size_t v = 0; v < roles.size(); ++v) roles[v] = p.true_role[v] == center ? 1 : 0;
  const auto dmat = DisciplineDistance(p.nodes, p.graph, DistanceMode::kUniform);
  DiversityOptions options;
  options.direction = Direction::kAll;
  const DiversityReport report =
      ComputeDiversity(p.graph, p.nodes, dmat, roles, nullptr, options);
  // Oracle: a center sees two attachments of different disciplines.
  bool exact = true;
  for (size_t v = 0; v < roles.size(); ++v) {
    if (roles[v] == 1) exact = exact && report.scores[v].idr == 0.5;
  }
  const BinnedIdrTable table = BinnedIdrReport(report);
  int included = 0;
  bool exceeds = true;
  std::string medians;
  for (size_t i = 0; i + 1 < table.cells.size(); i += 2) {
    const BinnedCell& clique = table.cells[i];
    const BinnedCell& bridge = table.cells[i + 1];
    if (!clique.included) continue;
    ++included;
    exceeds = exceeds && bridge.median > clique.median;
    medians += fmt::format(" bin {}: {:.3f} vs {:.3f};", clique.bin, bridge.median,
                           clique.median);
  }
  return {exact && included > 0 && exceeds,
          fmt::format("{} included bin(s), bridge vs clique median:{}", included, medians)};
}

Outcome PipelineDeterminism() {
  const fs::path dir = fs::temp_directory_path() / "rolegraph_acceptance";
  fs::remove_all(dir);
  cli::Invocation gen;
  gen.command = "generate";
  gen.out_dir = (dir / "gen").string();
  gen.params.Set("generate.copies", "10");
  if (cli::Execute(gen) != 0) throw Error("generate failed");

  cli::Invocation run;
  run.command = "pipeline";
  run.out_dir = (dir / "first").string();
  run.inputs = {{"graph", (dir / "gen" / "graph.txt").string()},
                {"nodes", (dir / "gen" / "nodes.csv").string()}};
  run.params.Set("run.seed", "2024");
  run.params.Set("rolx.rank", "3");
  run.params.Set("cluster.k_max", "8");
  run.params.Set("explain.trees", "50");
  run.params.Set("explain.keep_roles", "0,1");
  run.params.Set("idr.direction", "all");
  run.threads = 1;
  if (cli::Execute(run) != 0) throw Error("pipeline failed");
  const cli::Invocation again = cli::InvocationFromManifest(
      (dir / "first" / cli::kManifestName).string(), (dir / "second").string(), 3);
  if (cli::Execute(again) != 0) throw Error("replayed pipeline failed");

  const auto manifest = cli::ReadManifest((dir / "first" / cli::kManifestName).string());
  auto in = OpenForRead((dir / "first" / cli::kManifestName).string());
  const auto outputs = nlohmann::json::parse(in).at("outputs");
  int identical = 0, csvs = 0;
  for (const auto& name : outputs) {
    const std::string n = name.get<std::string>();
    if (fs::path(n).extension() != ".csv") continue;
    ++csvs;
    identical += tg::ReadText(dir / "first" / n) == tg::ReadText(dir / "second" / n);
  }
  fs::remove_all(dir);
  return {csvs > 0 && identical == csvs,
          fmt::format("{} of {} CSVs byte-identical after replay (1 vs 3 threads)",
                      identical, csvs)};
}

}  // namespace
}  // namespace rolegraph

int main() {
  using rolegraph::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"orbit oracle equivalence", rolegraph::OrbitOracle},
      {"orbit identities", rolegraph::OrbitIdentities},
      {"GraphWave automorphism invariance", rolegraph::GraphWaveAutomorphisms},
      {"role recovery on planted barbells", rolegraph::RoleRecovery},
      {"silhouette sanity", rolegraph::SilhouetteSanity},
      {"surrogate fidelity", rolegraph::SurrogateFidelity},
      {"ALE correctness", rolegraph::AleCorrectness},
      {"Rao-Stirling exactness", rolegraph::RaoStirlingExactness},
      {"orbit 27 effect crosses at the orbit 3 threshold", rolegraph::Orbit27Effect},
      {"bridge role is more interdisciplinary", rolegraph::BridgeDiversity},
      {"pipeline replay determinism", rolegraph::PipelineDeterminism},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    fmt::print("{} {:>2}. {}: {}\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
               o.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
