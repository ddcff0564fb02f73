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

// Undirected simple graphs, node attribute tables and their text formats.

#ifndef ROLEGRAPH_GRAPH_H_
#define ROLEGRAPH_GRAPH_H_

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rolegraph/csv.h"
#include "rolegraph/errors.h"

namespace rolegraph {

using NodeId = int32_t;
using Edge = std::pair<NodeId, NodeId>;

// Immutable undirected simple graph in compressed sparse row form. Every
// neighbor list is sorted ascending, free of self-loops and duplicates.
class Graph {
 public:
  struct BuildStats {
    int64_t self_loops = 0;
    int64_t duplicate_edges = 0;
  };

  Graph() : offsets_(1, 0) {}

  // Endpoints must lie in [0, node_count). Self-loops are dropped and
  // repeated edges (in either orientation) collapse to one.
  static Graph FromEdges(int64_t node_count, std::span<const Edge> edges,
                         BuildStats* stats = nullptr) {
    if (node_count < 0) throw InvalidArgument("negative node count");
    std::vector<Edge> normalized;
    normalized.reserve(edges.size());
    BuildStats local;
    for (const auto& [a, b] : edges) {
      if (a < 0 || b < 0 || a >= node_count || b >= node_count) {
        throw InvalidArgument("edge endpoint out of range");
      }
      if (a == b) {
        ++local.self_loops;
        continue;
      }
      normalized.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(normalized.begin(), normalized.end());
    const auto last = std::unique(normalized.begin(), normalized.end());
    local.duplicate_edges = std::distance(last, normalized.end());
    normalized.erase(last, normalized.end());
    if (stats != nullptr) *stats = local;

    Graph g;
    g.edge_count_ = static_cast<int64_t>(normalized.size());
    g.offsets_.assign(node_count + 1, 0);
    for (const auto& [a, b] : normalized) {
      ++g.offsets_[a + 1];
      ++g.offsets_[b + 1];
    }
    for (int64_t v = 0; v < node_count; ++v) {
      g.offsets_[v + 1] += g.offsets_[v];
    }
    g.adjacency_.resize(2 * normalized.size());
    std::vector<int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [a, b] : normalized) {
      g.adjacency_[cursor[a]++] = b;
      g.adjacency_[cursor[b]++] = a;
    }
    for (int64_t v = 0; v < node_count; ++v) {
      std::sort(g.adjacency_.begin() + g.offsets_[v],
                g.adjacency_.begin() + g.offsets_[v + 1]);
    }
    return g;
  }

  int64_t node_count() const {
    return static_cast<int64_t>(offsets_.size()) - 1;
  }
  int64_t edge_count() const { return edge_count_; }

  int64_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v],
            static_cast<size_t>(degree(v))};
  }

  bool HasEdge(NodeId u, NodeId v) const {
    const auto nu = neighbors(u);
    return std::binary_search(nu.begin(), nu.end(), v);
  }

  int64_t MaxDegree() const {
    int64_t best = 0;
    for (NodeId v = 0; v < node_count(); ++v) best = std::max(best, degree(v));
    return best;
  }

  // All edges as (u, v) with u < v, in ascending order.
  std::vector<Edge> Edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < node_count(); ++u) {
      for (NodeId v : neighbors(u)) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  // Relabels node v as new_index[v]. new_index must be a permutation.
  Graph Permuted(std::span<const NodeId> new_index) const {
    if (static_cast<int64_t>(new_index.size()) != node_count()) {
      throw InvalidArgument("permutation size does not match node count");
    }
    std::vector<Edge> edges;
    edges.reserve(edge_count_);
    for (const auto& [u, v] : Edges()) {
      edges.emplace_back(new_index[u], new_index[v]);
    }
    return FromEdges(node_count(), edges);
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.adjacency_ == b.adjacency_;
  }

 private:
  std::vector<int64_t> offsets_;
  std::vector<NodeId> adjacency_;
  int64_t edge_count_ = 0;
};

struct Components {
  std::vector<int32_t> component;  // per node, numbered by lowest member
  int32_t count = 0;
};

inline Components ConnectedComponents(const Graph& graph) {
  Components out;
  out.component.assign(graph.node_count(), -1);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < graph.node_count(); ++s) {
    if (out.component[s] >= 0) continue;
    const int32_t c = out.count++;
    out.component[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (NodeId u : graph.neighbors(v)) {
        if (out.component[u] < 0) {
          out.component[u] = c;
          stack.push_back(u);
        }
      }
    }
  }
  return out;
}

// External identifiers and optional attributes, index-aligned with a Graph.
class NodeTable {
 public:
  int64_t size() const { return static_cast<int64_t>(ids_.size()); }

  // Appends a new node; duplicate ids are rejected.
  NodeId Add(std::string id) {
    if (index_.contains(id)) {
      throw InvalidArgument("duplicate node id '" + id + "'");
    }
    const NodeId v = static_cast<NodeId>(ids_.size());
    index_.emplace(id, v);
    ids_.push_back(std::move(id));
    categories_.emplace_back();
    for (auto& [key, column] : extra_) column.emplace_back();
    return v;
  }

  NodeId GetOrAdd(std::string_view id) {
    if (auto v = Find(id)) return *v;
    return Add(std::string(id));
  }

  std::optional<NodeId> Find(std::string_view id) const {
    const auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& id(NodeId v) const { return ids_[v]; }
  const std::vector<std::string>& ids() const { return ids_; }

  const std::optional<std::string>& category(NodeId v) const {
    return categories_[v];
  }
  void set_category(NodeId v, std::optional<std::string> category) {
    if (category && category->empty()) category.reset();
    categories_[v] = std::move(category);
  }

  // Sorted distinct category labels.
  std::vector<std::string> DistinctCategories() const {
    std::vector<std::string> out;
    for (const auto& c : categories_) {
      if (c) out.push_back(*c);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::optional<std::string> Attribute(NodeId v, std::string_view key) const {
    const auto it = extra_.find(std::string(key));
    if (it == extra_.end()) return std::nullopt;
    return it->second[v];
  }

  void SetAttribute(NodeId v, const std::string& key, std::string value) {
    auto [it, inserted] = extra_.try_emplace(key);
    if (inserted) it->second.resize(ids_.size());
    if (value.empty()) {
      it->second[v].reset();
    } else {
      it->second[v] = std::move(value);
    }
  }

  std::vector<std::string> AttributeKeys() const {
    std::vector<std::string> keys;
    for (const auto& [key, column] : extra_) keys.push_back(key);
    return keys;
  }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::optional<std::string>> categories_;
  std::map<std::string, std::vector<std::optional<std::string>>> extra_;
};

// Citation orientation retained next to the symmetrized Graph: an arc
// (s, t) means s cites t.
class CitationLinks {
 public:
  CitationLinks() = default;

  static CitationLinks FromArcs(int64_t node_count, std::vector<Edge> arcs) {
    std::erase_if(arcs, [](const Edge& e) { return e.first == e.second; });
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    CitationLinks links;
    links.arc_count_ = static_cast<int64_t>(arcs.size());
    links.out_ = BuildCsr(node_count, arcs, false);
    links.in_ = BuildCsr(node_count, arcs, true);
    return links;
  }

  bool empty() const { return arc_count_ == 0; }
  int64_t arc_count() const { return arc_count_; }

  // Papers cited by v.
  std::span<const NodeId> cites(NodeId v) const { return out_.Row(v); }
  // Papers citing v.
  std::span<const NodeId> cited_by(NodeId v) const { return in_.Row(v); }

 private:
  struct Csr {
    std::vector<int64_t> offsets{0};
    std::vector<NodeId> targets;
    std::span<const NodeId> Row(NodeId v) const {
      if (v + 1 >= static_cast<int64_t>(offsets.size())) return {};
      return {targets.data() + offsets[v],
              static_cast<size_t>(offsets[v + 1] - offsets[v])};
    }
  };

  static Csr BuildCsr(int64_t n, const std::vector<Edge>& arcs, bool reverse) {
    Csr csr;
    csr.offsets.assign(n + 1, 0);
    for (const auto& [s, t] : arcs) ++csr.offsets[(reverse ? t : s) + 1];
    for (int64_t v = 0; v < n; ++v) csr.offsets[v + 1] += csr.offsets[v];
    csr.targets.resize(arcs.size());
    std::vector<int64_t> cursor(csr.offsets.begin(), csr.offsets.end() - 1);
    for (const auto& [s, t] : arcs) {
      const NodeId from = reverse ? t : s;
      csr.targets[cursor[from]++] = reverse ? s : t;
    }
    for (int64_t v = 0; v < n; ++v) {
      std::sort(csr.targets.begin() + csr.offsets[v],
                csr.targets.begin() + csr.offsets[v + 1]);
    }
    return csr;
  }

  Csr out_;
  Csr in_;
  int64_t arc_count_ = 0;
};

enum class IdPolicy {
  kStrict,  // every edge endpoint must already be in the node table
  kCreate,  // unseen ids are appended in first-appearance order
};

struct LoadedGraph {
  Graph graph;
  NodeTable nodes;
  CitationLinks links;
  int64_t self_loops = 0;
  int64_t duplicate_edges = 0;
  std::vector<std::string> warnings;
};

// Parses an edge list: one edge per line as two whitespace-separated ids,
// `#` comments and blank lines ignored. An optional third token gives the
// citation orientation: `>` (first cites second, the default), `<`, or `-`
// (unknown). When `known` is given its order fixes the leading indices, and
// its nodes are kept even if no edge touches them.
inline LoadedGraph ParseEdgeList(std::istream& in, IdPolicy policy,
                                 const NodeTable* known = nullptr) {
  LoadedGraph out;
  if (known != nullptr) out.nodes = *known;
  if (policy == IdPolicy::kStrict && known == nullptr) {
    throw InvalidArgument("strict id policy requires a node table");
  }
  std::vector<Edge> edges;
  std::vector<Edge> arcs;
  std::string line;
  int64_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string_view body = Trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::istringstream tokens{std::string(body)};
    std::string a, b, direction, extra;
    if (!(tokens >> a >> b)) {
      throw ParseError("malformed edge line: expected two ids", line_number);
    }
    tokens >> direction;
    if (tokens >> extra) {
      throw ParseError("malformed edge line: too many tokens", line_number);
    }
    if (!direction.empty() && direction != ">" && direction != "<" &&
        direction != "-") {
      throw ParseError("malformed edge direction '" + direction + "'",
                       line_number);
    }
    NodeId u, v;
    if (policy == IdPolicy::kStrict) {
      const auto fu = out.nodes.Find(a);
      const auto fv = out.nodes.Find(b);
      if (!fu || !fv) {
        throw ParseError("unknown node id '" + (fu ? b : a) + "'",
                         line_number);
      }
      u = *fu;
      v = *fv;
    } else {
      u = out.nodes.GetOrAdd(a);
      v = out.nodes.GetOrAdd(b);
    }
    edges.emplace_back(u, v);
    if (direction.empty() || direction == ">") {
      arcs.emplace_back(u, v);
    } else if (direction == "<") {
      arcs.emplace_back(v, u);
    }
  }
  if (edges.empty()) throw ParseError("empty edge list");
  Graph::BuildStats stats;
  out.graph = Graph::FromEdges(out.nodes.size(), edges, &stats);
  out.links = CitationLinks::FromArcs(out.nodes.size(), std::move(arcs));
  out.self_loops = stats.self_loops;
  out.duplicate_edges = stats.duplicate_edges;
  if (stats.self_loops > 0) {
    out.warnings.push_back("dropped " + std::to_string(stats.self_loops) +
                           " self-loop(s)");
  }
  return out;
}

inline LoadedGraph LoadEdgeList(const std::string& path,
                                IdPolicy policy = IdPolicy::kCreate,
                                const NodeTable* known = nullptr) {
  auto in = OpenForRead(path);
  try {
    return ParseEdgeList(in, policy, known);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// Reads a CSV node table with an `id` column, an optional `category` column
// and any number of further attribute columns.
inline NodeTable ParseNodeTable(std::istream& in) {
  std::string line;
  int64_t line_number = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_number;
    const auto body = Trim(line);
    if (body.empty() || body.front() == '#') continue;
    header = SplitCsvLine(body, line_number);
    break;
  }
  if (header.empty()) throw ParseError("empty node table");
  const auto id_it = std::find(header.begin(), header.end(), "id");
  if (id_it == header.end()) {
    throw ParseError("node table header lacks an 'id' column", line_number);
  }
  const size_t id_col = id_it - header.begin();
  const auto cat_it = std::find(header.begin(), header.end(), "category");
  const std::optional<size_t> cat_col =
      cat_it == header.end() ? std::nullopt
                             : std::optional<size_t>(cat_it - header.begin());
  NodeTable table;
  while (std::getline(in, line)) {
    ++line_number;
    const auto body = Trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto fields = SplitCsvLine(body, line_number);
    if (fields.size() > header.size()) {
      throw ParseError("row has more cells than the header", line_number);
    }
    fields.resize(header.size());
    if (fields[id_col].empty()) throw ParseError("empty id", line_number);
    if (table.Find(fields[id_col])) {
      throw ParseError("duplicate id '" + fields[id_col] + "'", line_number);
    }
    const NodeId v = table.Add(fields[id_col]);
    for (size_t c = 0; c < header.size(); ++c) {
      if (c == id_col) continue;
      if (cat_col && c == *cat_col) {
        table.set_category(v, fields[c].empty()
                                  ? std::nullopt
                                  : std::optional<std::string>(fields[c]));
      } else {
        table.SetAttribute(v, header[c], fields[c]);
      }
    }
  }
  return table;
}

inline NodeTable LoadNodeTable(const std::string& path) {
  auto in = OpenForRead(path);
  try {
    return ParseNodeTable(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void WriteEdgeList(const Graph& graph, const NodeTable& nodes,
                          std::ostream& out) {
  out << "# source target\n";
  for (const auto& [u, v] : graph.Edges()) {
    out << nodes.id(u) << '\t' << nodes.id(v) << '\n';
  }
}

inline void WriteNodeTable(const NodeTable& nodes, std::ostream& out) {
  const auto keys = nodes.AttributeKeys();
  out << "id,category";
  for (const auto& k : keys) out << ',' << EscapeCsvField(k);
  out << '\n';
  for (NodeId v = 0; v < nodes.size(); ++v) {
    out << EscapeCsvField(nodes.id(v)) << ','
        << EscapeCsvField(nodes.category(v).value_or(""));
    for (const auto& k : keys) {
      out << ',' << EscapeCsvField(nodes.Attribute(v, k).value_or(""));
    }
    out << '\n';
  }
}

// Maps rows of an external table (identified by `ids`) onto the node order of
// `table`: result[v] is the row holding node v. Every node must appear exactly
// once and no unknown ids may be present; the error lists up to 10 offenders.
inline std::vector<int64_t> AlignIds(const std::vector<std::string>& ids,
                                     const NodeTable& table,
                                     std::string_view what) {
  constexpr size_t kListed = 10;
  std::vector<int64_t> row_of(table.size(), -1);
  std::vector<std::string> problems;
  size_t problem_count = 0;
  const auto note = [&](std::string message) {
    if (problems.size() < kListed) problems.push_back(std::move(message));
    ++problem_count;
  };
  for (size_t r = 0; r < ids.size(); ++r) {
    const auto v = table.Find(ids[r]);
    if (!v) {
      note("unknown id '" + ids[r] + "'");
    } else if (row_of[*v] >= 0) {
      note("duplicate id '" + ids[r] + "'");
    } else {
      row_of[*v] = static_cast<int64_t>(r);
    }
  }
  for (NodeId v = 0; v < table.size(); ++v) {
    if (row_of[v] < 0) note("missing id '" + table.id(v) + "'");
  }
  if (problem_count > 0) {
    std::string message = std::string(what) + " does not match the node set (" +
                          std::to_string(problem_count) + " mismatches): ";
    for (size_t i = 0; i < problems.size(); ++i) {
      if (i > 0) message += "; ";
      message += problems[i];
    }
    throw InvalidArgument(message);
  }
  return row_of;
}

}  // namespace rolegraph

#endif  // ROLEGRAPH_GRAPH_H_
