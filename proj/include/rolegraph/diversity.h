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

// Rao-Stirling diversity of node neighborhoods and its degree-binned
// comparison across roles.

#ifndef ROLEGRAPH_DIVERSITY_H_
#define ROLEGRAPH_DIVERSITY_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rolegraph/csv.h"
#include "rolegraph/errors.h"
#include "rolegraph/graph.h"
#include "rolegraph/matrix.h"
#include "rolegraph/parallel.h"

namespace rolegraph {

enum class DistanceMode { kUniform, kCocitationCosine };

inline DistanceMode ParseDistanceMode(std::string_view text) {
  if (text == "uniform") return DistanceMode::kUniform;
  if (text == "cocitation_cosine") return DistanceMode::kCocitationCosine;
  throw InvalidArgument("unknown distance mode '" + std::string(text) +
                        "' (expected uniform or cocitation_cosine)");
}

struct DisciplineDistanceMatrix {
  std::vector<std::string> disciplines;  // sorted
  DenseMatrix d;

  int Index(std::string_view label) const {
    const auto it = std::lower_bound(disciplines.begin(), disciplines.end(), label);
    if (it == disciplines.end() || *it != label) return -1;
    return static_cast<int>(it - disciplines.begin());
  }
};

// Uniform: 1 between distinct disciplines. Co-citation cosine: 1 minus the
// cosine similarity of the rows of the discipline co-occurrence matrix, where
// row i counts links from discipline-i nodes to each discipline. With
// citation links the arcs are used as given, otherwise every undirected edge
// counts in both directions.
inline DisciplineDistanceMatrix DisciplineDistance(
    const NodeTable& nodes, const Graph& graph, DistanceMode mode,
    const CitationLinks* links = nullptr) {
  DisciplineDistanceMatrix out;
  out.disciplines = nodes.DistinctCategories();
  const int64_t k = static_cast<int64_t>(out.disciplines.size());
  if (k < 2) {
    throw InvalidArgument("discipline distances need at least two "
                          "disciplines, found " + std::to_string(k));
  }
  out.d = DenseMatrix(k, k, 0.0);
  if (mode == DistanceMode::kUniform) {
    for (int64_t i = 0; i < k; ++i) {
      for (int64_t j = 0; j < k; ++j) out.d(i, j) = i == j ? 0.0 : 1.0;
    }
    return out;
  }
  std::vector<int> label(nodes.size(), -1);
  for (NodeId v = 0; v < nodes.size(); ++v) {
    if (const auto& c = nodes.category(v)) label[v] = out.Index(*c);
  }
  DenseMatrix co(k, k, 0.0);
  const auto count = [&](NodeId from, NodeId to) {
    if (label[from] >= 0 && label[to] >= 0) co(label[from], label[to]) += 1.0;
  };
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    if (links != nullptr && !links->empty()) {
      for (NodeId u : links->cites(v)) count(v, u);
    } else {
      for (NodeId u : graph.neighbors(v)) count(v, u);
    }
  }
  std::vector<double> norm(k, 0.0);
  for (int64_t i = 0; i < k; ++i) {
    for (int64_t j = 0; j < k; ++j) norm[i] += co(i, j) * co(i, j);
    norm[i] = std::sqrt(norm[i]);
  }
  for (int64_t i = 0; i < k; ++i) {
    for (int64_t j = 0; j < k; ++j) {
      if (i == j) continue;
      double similarity = 0.0;
      if (norm[i] > 0.0 && norm[j] > 0.0) {
        double dot = 0.0;
        for (int64_t c = 0; c < k; ++c) dot += co(i, c) * co(j, c);
        similarity = dot / (norm[i] * norm[j]);
      }
      out.d(i, j) = std::clamp(1.0 - similarity, 0.0, 1.0);
    }
  }
  for (int64_t i = 0; i < k; ++i) {  // exact symmetry
    for (int64_t j = i + 1; j < k; ++j) out.d(j, i) = out.d(i, j);
  }
  return out;
}

enum class Direction {
  kCiting,  // the papers that cite the node
  kCited,   // the papers the node cites
  kAll,     // undirected neighbors
};

inline const char* DirectionName(Direction d) {
  switch (d) {
    case Direction::kCiting:
      return "citing";
    case Direction::kCited:
      return "cited";
    case Direction::kAll:
      break;
  }
  return "all";
}

inline Direction ParseDirection(std::string_view text) {
  if (text == "citing") return Direction::kCiting;
  if (text == "cited") return Direction::kCited;
  if (text == "all") return Direction::kAll;
  throw InvalidArgument("unknown direction '" + std::string(text) +
                        "' (expected citing, cited or all)");
}

struct DiversityScore {
  std::optional<double> idr;  // absent without labeled neighbors
  int64_t neighbors_used = 0;
  int64_t unlabeled_neighbors = 0;
};

struct DiversityOptions {
  Direction direction = Direction::kCiting;
  bool unordered_pairs = false;  // halve the ordered-pair sum
  int threads = 1;
};

// D = sum over ordered pairs i != j of p_i p_j d_ij, with p the discipline
// shares among the node's labeled neighbors in the chosen direction.
inline DiversityScore RaoStirling(NodeId v, const Graph& graph,
                                  const NodeTable& nodes,
                                  const DisciplineDistanceMatrix& dmat,
                                  const CitationLinks* links,
                                  const DiversityOptions& options = {}) {
  std::span<const NodeId> neighbors;
  if (options.direction == Direction::kAll) {
    neighbors = graph.neighbors(v);
  } else {
    if (links == nullptr || links->empty()) {
      throw InvalidArgument(
          std::string("direction '") + DirectionName(options.direction) +
          "' needs citation directions in the edge list; use 'all' otherwise");
    }
    neighbors = options.direction == Direction::kCiting ? links->cited_by(v)
                                                        : links->cites(v);
  }
  DiversityScore out;
  std::map<int, int64_t> counts;
  for (NodeId u : neighbors) {
    const auto& c = nodes.category(u);
    if (!c) {
      ++out.unlabeled_neighbors;
      continue;
    }
    const int i = dmat.Index(*c);
    if (i < 0) {
      throw InvalidArgument("discipline '" + *c +
                            "' is missing from the distance matrix");
    }
    ++counts[i];
    ++out.neighbors_used;
  }
  if (out.neighbors_used == 0) return out;
  const double total = static_cast<double>(out.neighbors_used);
  double d = 0.0;
  for (const auto& [i, ci] : counts) {
    for (const auto& [j, cj] : counts) {
      if (i == j) continue;
      d += (static_cast<double>(ci) / total) * (static_cast<double>(cj) / total) *
           dmat.d(i, j);
    }
  }
  out.idr = options.unordered_pairs ? 0.5 * d : d;
  return out;
}

struct DiversityReport {
  std::vector<DiversityScore> scores;  // per node
  std::vector<int64_t> degree;         // undirected degree per node
  std::vector<int32_t> role;           // per node
  Direction direction = Direction::kCiting;
};

inline DiversityReport ComputeDiversity(const Graph& graph,
                                        const NodeTable& nodes,
                                        const DisciplineDistanceMatrix& dmat,
                                        std::span<const int32_t> roles,
                                        const CitationLinks* links,
                                        const DiversityOptions& options = {}) {
  const int64_t n = graph.node_count();
  if (static_cast<int64_t>(roles.size()) != n || nodes.size() != n) {
    throw InvalidArgument("graph, node table and roles are not aligned");
  }
  DiversityReport report;
  report.direction = options.direction;
  report.scores.resize(n);
  report.degree.resize(n);
  report.role.assign(roles.begin(), roles.end());
  ParallelFor(n, options.threads, [&](int64_t v) {
    report.scores[v] =
        RaoStirling(static_cast<NodeId>(v), graph, nodes, dmat, links, options);
    report.degree[v] = graph.degree(static_cast<NodeId>(v));
  });
  return report;
}

inline void WriteDiversityCsv(const DiversityReport& report,
                              const NodeTable& nodes, std::ostream& out) {
  out << "id,idr,degree,role,neighbors_used,direction\n";
  for (size_t v = 0; v < report.scores.size(); ++v) {
    const auto& s = report.scores[v];
    out << EscapeCsvField(nodes.id(static_cast<NodeId>(v))) << ','
        << (s.idr ? FormatDouble(*s.idr) : "") << ',' << report.degree[v] << ','
        << report.role[v] << ',' << s.neighbors_used << ','
        << DirectionName(report.direction) << '\n';
  }
}

// Linear-interpolation quantile of sorted data.
inline double SortedQuantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw InvalidArgument("quantile of empty data");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

struct BinnedCell {
  int bin = 0;
  double lo = 0.0;  // natural-log degree range [lo, hi)
  double hi = 0.0;
  int32_t role = 0;
  std::vector<double> values;  // sorted IDR values
  bool included = false;
  double median = 0.0, q1 = 0.0, q3 = 0.0;  // meaningful when values exist
};

struct BinnedIdrTable {
  std::vector<BinnedCell> cells;     // bin-major, then role
  std::vector<double> edges;         // bins + 1 edges in log-degree
  int64_t zero_degree_excluded = 0;
  int64_t without_idr = 0;           // nodes with degree > 0 but no IDR
  std::string log_base = "e";
};

// Bins nodes by natural-log degree into equal-width bins spanning the
// observed range (the last bin is closed). A bin is included when every role
// has more than min_per_role IDR values in it.
inline BinnedIdrTable BinnedIdrReport(const DiversityReport& report,
                                      int bins = 10, int min_per_role = 50) {
  if (bins < 1) throw InvalidArgument("need at least one degree bin");
  const int64_t n = static_cast<int64_t>(report.scores.size());
  BinnedIdrTable table;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int64_t v = 0; v < n; ++v) {
    if (report.degree[v] == 0) {
      ++table.zero_degree_excluded;
      continue;
    }
    const double x = std::log(static_cast<double>(report.degree[v]));
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  if (table.zero_degree_excluded == n) {
    throw InvalidArgument("every node has degree 0; nothing to bin");
  }
  const int used_bins = hi > lo ? bins : 1;
  const double width = (hi - lo) / used_bins;
  for (int b = 0; b <= used_bins; ++b) {
    table.edges.push_back(b == used_bins ? hi : lo + width * b);
  }
  int32_t roles = 0;
  for (int32_t r : report.role) roles = std::max(roles, r + 1);
  std::vector<std::vector<std::vector<double>>> values(
      used_bins, std::vector<std::vector<double>>(roles));
  for (int64_t v = 0; v < n; ++v) {
    if (report.degree[v] == 0) continue;
    if (!report.scores[v].idr) {
      ++table.without_idr;
      continue;
    }
    const double x = std::log(static_cast<double>(report.degree[v]));
    int b = width > 0.0 ? static_cast<int>(std::floor((x - lo) / width)) : 0;
    b = std::clamp(b, 0, used_bins - 1);
    values[b][report.role[v]].push_back(*report.scores[v].idr);
  }
  for (int b = 0; b < used_bins; ++b) {
    bool included = roles > 0;
    for (int32_t r = 0; r < roles; ++r) {
      included = included &&
                 static_cast<int64_t>(values[b][r].size()) > min_per_role;
    }
    for (int32_t r = 0; r < roles; ++r) {
      BinnedCell cell;
      cell.bin = b;
      cell.lo = table.edges[b];
      cell.hi = table.edges[b + 1];
      cell.role = r;
      cell.values = std::move(values[b][r]);
      std::sort(cell.values.begin(), cell.values.end());
      cell.included = included;
      if (!cell.values.empty()) {
        cell.median = SortedQuantile(cell.values, 0.5);
        cell.q1 = SortedQuantile(cell.values, 0.25);
        cell.q3 = SortedQuantile(cell.values, 0.75);
      }
      table.cells.push_back(std::move(cell));
    }
  }
  return table;
}

inline void WriteBinnedCsv(const BinnedIdrTable& table, std::ostream& out) {
  out << "# log_base=" << table.log_base
      << " zero_degree_excluded=" << table.zero_degree_excluded
      << " without_idr=" << table.without_idr << '\n';
  out << "bin,lo,hi,role,count,included,median,q1,q3\n";
  for (const auto& c : table.cells) {
    out << c.bin << ',' << FormatDouble(c.lo) << ',' << FormatDouble(c.hi) << ','
        << c.role << ',' << c.values.size() << ','
        << (c.included ? "true" : "false");
    if (c.values.empty()) {
      out << ",,,\n";
    } else {
      out << ',' << FormatDouble(c.median) << ',' << FormatDouble(c.q1) << ','
          << FormatDouble(c.q3) << '\n';
    }
  }
}

// Long format for box plots: one row per IDR value.
inline void WriteBinnedValuesCsv(const BinnedIdrTable& table, std::ostream& out) {
  out << "bin,role,idr\n";
  for (const auto& c : table.cells) {
    for (double x : c.values) {
      out << c.bin << ',' << c.role << ',' << FormatDouble(x) << '\n';
    }
  }
}

}  // namespace rolegraph

#endif  // ROLEGRAPH_DIVERSITY_H_
