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

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "rolegraph/diversity.h"
#include "rolegraph/random.h"
#include "test_graphs.h"

namespace rolegraph {
namespace {

using ::rolegraph::testing::MakeGraph;
using ::rolegraph::testing::Star;

// Hub 0 linked to one leaf per entry of `labels`; the hub itself is unlabeled.
struct Neighborhood {
  Graph graph;
  NodeTable nodes;
};

Neighborhood HubWithLabels(const std::vector<std::string>& labels) {
  Neighborhood n;
  n.graph = Star(static_cast<int>(labels.size()));
  n.nodes.Add("hub");
  for (size_t i = 0; i < labels.size(); ++i) {
    const NodeId v = n.nodes.Add("leaf" + std::to_string(i));
    if (!labels[i].empty()) n.nodes.set_category(v, labels[i]);
  }
  return n;
}

DiversityOptions AllDirections() {
  DiversityOptions options;
  options.direction = Direction::kAll;
  return options;
}

double Idr(const Neighborhood& n, DistanceMode mode = DistanceMode::kUniform) {
  const auto dmat = DisciplineDistance(n.nodes, n.graph, mode);
  return *RaoStirling(0, n.graph, n.nodes, dmat, nullptr, AllDirections()).idr;
}

TEST(DisciplineDistanceTest, UniformIsOneOffDiagonal) {
  const auto n = HubWithLabels({"a", "b", "c"});
  const auto d = DisciplineDistance(n.nodes, n.graph, DistanceMode::kUniform);
  ASSERT_EQ(d.disciplines, (std::vector<std::string>{"a", "b", "c"}));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(d.d(i, j), i == j ? 0.0 : 1.0);
  }
}

TEST(DisciplineDistanceTest, NeedsTwoDisciplines) {
  const auto n = HubWithLabels({"a", "a"});
  EXPECT_THROW(DisciplineDistance(n.nodes, n.graph, DistanceMode::kUniform),
               InvalidArgument);
}

TEST(DisciplineDistanceTest, CocitationCosineByHand) {
  // A1, A2 cite B1; C1 cites B1 and B2; B2 cites C1.
  NodeTable nodes;
  for (const char* id : {"A1", "A2", "B1", "B2", "C1"}) nodes.Add(id);
  const char* cats[] = {"A", "A", "B", "B", "C"};
  for (NodeId v = 0; v < 5; ++v) nodes.set_category(v, cats[v]);
  const std::vector<Edge> arcs = {{0, 2}, {1, 2}, {4, 2}, {4, 3}, {3, 4}};
  const Graph g = Graph::FromEdges(5, arcs);
  const CitationLinks links = CitationLinks::FromArcs(5, arcs);
  // Directed co-occurrence rows: A = (0, 2, 0), B = (0, 0, 1), C = (0, 2, 0).
  const auto directed =
      DisciplineDistance(nodes, g, DistanceMode::kCocitationCosine, &links);
  EXPECT_NEAR(directed.d(0, 2), 0.0, 1e-15);  // A and C cite identically
  EXPECT_NEAR(directed.d(0, 1), 1.0, 1e-15);
  EXPECT_NEAR(directed.d(1, 2), 1.0, 1e-15);
  // Undirected rows: A = (0, 2, 0), B = (2, 0, 3), C = (0, 3, 0).
  const auto undirected = DisciplineDistance(nodes, g, DistanceMode::kCocitationCosine);
  EXPECT_NEAR(undirected.d(0, 2), 0.0, 1e-15);
  EXPECT_NEAR(undirected.d(0, 1), 1.0, 1e-15);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(undirected.d(i, i), 0.0);
    for (int j = 0; j < 3; ++j) EXPECT_EQ(undirected.d(i, j), undirected.d(j, i));
  }
}

TEST(DisciplineDistanceTest, PartialOverlapCosine) {
  // Undirected: X1 - Y1, X2 - Z1, Y2 - Z2. Rows: X = (0,1,1), Y = (1,0,1),
  // Z = (1,1,0); every pair has cosine 1/2.
  NodeTable nodes;
  for (const char* id : {"X1", "X2", "Y1", "Y2", "Z1", "Z2"}) nodes.Add(id);
  const char* cats[] = {"X", "X", "Y", "Y", "Z", "Z"};
  for (NodeId v = 0; v < 6; ++v) nodes.set_category(v, cats[v]);
  const Graph g = MakeGraph(6, {{0, 2}, {1, 4}, {3, 5}});
  const auto d = DisciplineDistance(nodes, g, DistanceMode::kCocitationCosine);
  EXPECT_NEAR(d.d(0, 1), 0.5, 1e-15);
  EXPECT_NEAR(d.d(0, 2), 0.5, 1e-15);
  EXPECT_NEAR(d.d(1, 2), 0.5, 1e-15);
}

TEST(RaoStirlingTest, WorkedExamples) {
  EXPECT_EQ(Idr(HubWithLabels({"a", "a", "a", "b"})), 0.375);
  EXPECT_EQ(Idr(HubWithLabels({"a", "b"})), 0.5);
  EXPECT_EQ(Idr(HubWithLabels({"a", "a", "b", "c"})), 0.625);
}

TEST(RaoStirlingTest, SingleDisciplineIsZeroAndUnlabeledIsAbsent) {
  auto n = HubWithLabels({"a", "a", "", "b"});
  const auto dmat = DisciplineDistance(n.nodes, n.graph, DistanceMode::kUniform);
  const NodeId leaf = 1;
  const auto leaf_score = RaoStirling(leaf, n.graph, n.nodes, dmat, nullptr, AllDirections());
  EXPECT_FALSE(leaf_score.idr.has_value());  // its only neighbor, the hub, is unlabeled
  const auto hub = RaoStirling(0, n.graph, n.nodes, dmat, nullptr, AllDirections());
  EXPECT_EQ(hub.neighbors_used, 3);
  EXPECT_EQ(hub.unlabeled_neighbors, 1);
  EXPECT_NEAR(*hub.idr, 2 * (2.0 / 3) * (1.0 / 3), 1e-15);
  EXPECT_EQ(Idr(HubWithLabels({"a", "a", "a", "", "b"})), 0.375);
  EXPECT_EQ(*RaoStirling(0, HubWithLabels({"a", "a"}).graph, HubWithLabels({"a", "a"}).nodes,
                         dmat, nullptr, AllDirections()).idr,
            0.0);
}

TEST(RaoStirlingTest, SimpsonIdentityOnRandomProportions) {
  RandomEngine rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + static_cast<int>(UniformIndex(rng, 6));
    std::vector<std::string> labels;
    std::vector<int> counts(k);
    for (int i = 0; i < k; ++i) {
      counts[i] = 1 + static_cast<int>(UniformIndex(rng, 20));
      for (int c = 0; c < counts[i]; ++c) labels.push_back("d" + std::to_string(i));
    }
    const double total = static_cast<double>(labels.size());
    double simpson = 1.0;
    for (int c : counts) simpson -= (c / total) * (c / total);
    EXPECT_NEAR(Idr(HubWithLabels(labels)), simpson, 1e-12);
  }
}

TEST(RaoStirlingTest, DuplicatedNeighborhoodKeepsScore) {
  EXPECT_EQ(Idr(HubWithLabels({"a", "b", "b"})),
            Idr(HubWithLabels({"a", "b", "b", "a", "b", "b"})));
}

TEST(RaoStirlingTest, RelabelingDisciplinesKeepsScore) {
  const auto n1 = HubWithLabels({"a", "a", "b", "c", "c", "c"});
  const auto n2 = HubWithLabels({"z", "z", "x", "y", "y", "y"});
  EXPECT_DOUBLE_EQ(Idr(n1), Idr(n2));
}

TEST(RaoStirlingTest, BoundedByMaxDistanceTimesSimpson) {
  const auto n = HubWithLabels({"a", "b", "b", "c"});
  DisciplineDistanceMatrix d = DisciplineDistance(n.nodes, n.graph, DistanceMode::kUniform);
  d.d(0, 1) = d.d(1, 0) = 0.2;
  d.d(0, 2) = d.d(2, 0) = 0.7;
  d.d(1, 2) = d.d(2, 1) = 0.4;
  const double idr = *RaoStirling(0, n.graph, n.nodes, d, nullptr, AllDirections()).idr;
  const double simpson = 1 - (0.0625 + 0.25 + 0.0625);
  EXPECT_LE(idr, 0.7 * simpson + 1e-15);
  EXPECT_NEAR(idr, 2 * (0.25 * 0.5 * 0.2 + 0.25 * 0.25 * 0.7 + 0.5 * 0.25 * 0.4), 1e-15);
  DiversityOptions half = AllDirections();
  half.unordered_pairs = true;
  EXPECT_NEAR(*RaoStirling(0, n.graph, n.nodes, d, nullptr, half).idr, idr / 2, 1e-15);
}

TEST(RaoStirlingTest, DirectionSelectsCitingOrCitedPapers) {
  // 0 is cited by 1 (a) and 2 (b); 0 cites 3 (a).
  NodeTable nodes;
  for (const char* id : {"p", "q", "r", "s"}) nodes.Add(id);
  nodes.set_category(1, "a");
  nodes.set_category(2, "b");
  nodes.set_category(3, "a");
  const std::vector<Edge> arcs = {{1, 0}, {2, 0}, {0, 3}};
  const Graph g = Graph::FromEdges(4, arcs);
  const CitationLinks links = CitationLinks::FromArcs(4, arcs);
  const auto dmat = DisciplineDistance(nodes, g, DistanceMode::kUniform);
  DiversityOptions options;
  options.direction = Direction::kCiting;
  EXPECT_EQ(*RaoStirling(0, g, nodes, dmat, &links, options).idr, 0.5);
  options.direction = Direction::kCited;
  EXPECT_EQ(*RaoStirling(0, g, nodes, dmat, &links, options).idr, 0.0);
  options.direction = Direction::kAll;
  EXPECT_NEAR(*RaoStirling(0, g, nodes, dmat, &links, options).idr, 4.0 / 9, 1e-15);
  options.direction = Direction::kCiting;
  EXPECT_THROW(RaoStirling(0, g, nodes, dmat, nullptr, options), InvalidArgument);
}

DiversityReport SyntheticReport(const std::vector<int64_t>& degree,
                                const std::vector<int32_t>& role,
                                const std::vector<double>& idr) {
  DiversityReport r;
  r.degree = degree;
  r.role = role;
  for (double x : idr) {
    DiversityScore s;
    if (x >= 0) s.idr = x;
    r.scores.push_back(s);
  }
  r.direction = Direction::kAll;
  return r;
}

TEST(BinnedReportTest, EqualWidthLogDegreeBins) {
  std::vector<int64_t> degree;
  std::vector<int32_t> role;
  std::vector<double> idr;
  for (int i = 0; i < 300; ++i) {
    degree.push_back(1 + i % 100);
    role.push_back(i % 2);
    idr.push_back(0.01 * (i % 7));
  }
  degree.push_back(0);
  role.push_back(0);
  idr.push_back(0.3);
  const BinnedIdrTable t = BinnedIdrReport(SyntheticReport(degree, role, idr), 10, 5);
  ASSERT_EQ(t.edges.size(), 11u);
  EXPECT_EQ(t.edges.front(), 0.0);
  EXPECT_EQ(t.edges.back(), std::log(100.0));
  for (size_t i = 1; i < t.edges.size(); ++i) {
    EXPECT_GT(t.edges[i], t.edges[i - 1]);
    EXPECT_NEAR(t.edges[i] - t.edges[i - 1], std::log(100.0) / 10, 1e-12);
  }
  EXPECT_EQ(t.zero_degree_excluded, 1);
  int64_t placed = 0;
  for (const auto& c : t.cells) placed += static_cast<int64_t>(c.values.size());
  EXPECT_EQ(placed, 300);
  ASSERT_EQ(t.cells.size(), 20u);
  EXPECT_EQ(t.cells.back().bin, 9);
}

TEST(BinnedReportTest, SameDegreeGivesSingleBin) {
  const BinnedIdrTable t = BinnedIdrReport(
      SyntheticReport({3, 3, 3, 3}, {0, 1, 0, 1}, {0.1, 0.2, 0.3, 0.4}), 10, 1);
  ASSERT_EQ(t.cells.size(), 2u);
  EXPECT_EQ(t.cells[0].values, (std::vector<double>{0.1, 0.3}));
  EXPECT_TRUE(t.cells[0].included);
}

TEST(BinnedReportTest, InclusionNeedsMoreThanMinimumForEveryRole) {
  std::vector<int64_t> degree;
  std::vector<int32_t> role;
  std::vector<double> idr;
  const auto add = [&](int64_t d, int32_t r, int count) {
    for (int i = 0; i < count; ++i) {
      degree.push_back(d);
      role.push_back(r);
      idr.push_back(0.1);
    }
  };
  add(2, 0, 1000);
  add(2, 1, 1000);
  add(2, 2, 30);
  add(50, 0, 51);
  add(50, 1, 51);
  add(50, 2, 51);
  add(20, 0, 50);
  add(20, 1, 80);
  add(20, 2, 80);
  const BinnedIdrTable t = BinnedIdrReport(SyntheticReport(degree, role, idr), 10, 50);
  const auto included_at = [&](int64_t d) {
    const double x = std::log(static_cast<double>(d));
    for (const auto& c : t.cells) {
      if (x >= c.lo && (x < c.hi || c.bin == 9)) return c.included;
    }
    return false;
  };
  EXPECT_FALSE(included_at(2));   // role 2 has only 30
  EXPECT_TRUE(included_at(50));   // 51 each
  EXPECT_FALSE(included_at(20));  // exactly 50 is not more than 50
}

TEST(BinnedReportTest, QuartilesAndErrors) {
  const BinnedIdrTable t = BinnedIdrReport(
      SyntheticReport({4, 4, 4, 4, 4}, {0, 0, 0, 0, 1}, {0.4, 0.1, 0.3, 0.2, 0.0}), 3, 0);
  EXPECT_DOUBLE_EQ(t.cells[0].median, 0.25);
  EXPECT_DOUBLE_EQ(t.cells[0].q1, 0.175);
  EXPECT_DOUBLE_EQ(t.cells[0].q3, 0.325);
  EXPECT_THROW(BinnedIdrReport(SyntheticReport({0, 0}, {0, 1}, {0.1, 0.2})), InvalidArgument);
}

TEST(DiversityCsvTest, Formats) {
  auto n = HubWithLabels({"a", "b"});
  const auto dmat = DisciplineDistance(n.nodes, n.graph, DistanceMode::kUniform);
  const std::vector<int32_t> roles = {1, 0, 0};
  const DiversityReport r =
      ComputeDiversity(n.graph, n.nodes, dmat, roles, nullptr, AllDirections());
  std::ostringstream out;
  WriteDiversityCsv(r, n.nodes, out);
  EXPECT_EQ(out.str(),
            "id,idr,degree,role,neighbors_used,direction\n"
            "hub,0.5,2,1,2,all\nleaf0,,1,0,0,all\nleaf1,,1,0,0,all\n");
  const BinnedIdrTable t = BinnedIdrReport(r, 2, 0);
  std::ostringstream binned, values;
  WriteBinnedCsv(t, binned);
  WriteBinnedValuesCsv(t, values);
  EXPECT_NE(binned.str().find("bin,lo,hi,role,count,included,median,q1,q3\n"),
            std::string::npos);
  EXPECT_EQ(values.str(), "bin,role,idr\n1,1,0.5\n");
}

}  // namespace
}  // namespace rolegraph
