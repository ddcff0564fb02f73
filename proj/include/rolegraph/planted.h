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

// Synthetic graphs assembled from structural templates with known roles.

#ifndef ROLEGRAPH_PLANTED_H_
#define ROLEGRAPH_PLANTED_H_

#include <cstdint>
#include <map>
#include <span>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rolegraph/csv.h"
#include "rolegraph/errors.h"
#include "rolegraph/graph.h"
#include "rolegraph/random.h"

namespace rolegraph {

enum class TemplateKind { kChain, kStar, kClique, kBarbell, kLollipop };

struct StructuralTemplate {
  TemplateKind kind = TemplateKind::kClique;
  int size = 5;    // chain length, star leaves or clique size
  int bridge = 1;  // barbell bridge nodes or lollipop tail length

  static StructuralTemplate Chain(int length) {
    return {TemplateKind::kChain, length, 0};
  }
  static StructuralTemplate Star(int leaves) {
    return {TemplateKind::kStar, leaves, 0};
  }
  static StructuralTemplate Clique(int size) {
    return {TemplateKind::kClique, size, 0};
  }
  // Two cliques whose attachment nodes are joined through `bridge` nodes.
  static StructuralTemplate Barbell(int clique_size, int bridge) {
    return {TemplateKind::kBarbell, clique_size, bridge};
  }
  // A clique with a pendant chain of `tail` nodes.
  static StructuralTemplate Lollipop(int clique_size, int tail) {
    return {TemplateKind::kLollipop, clique_size, tail};
  }

  // Textual form: chain:L, star:K, clique:S, barbell:S:B, lollipop:S:T.
  std::string Name() const {
    switch (kind) {
      case TemplateKind::kChain:
        return "chain:" + std::to_string(size);
      case TemplateKind::kStar:
        return "star:" + std::to_string(size);
      case TemplateKind::kClique:
        return "clique:" + std::to_string(size);
      case TemplateKind::kBarbell:
        return "barbell:" + std::to_string(size) + ":" +
               std::to_string(bridge);
      case TemplateKind::kLollipop:
        return "lollipop:" + std::to_string(size) + ":" +
               std::to_string(bridge);
    }
    return "";
  }

  static StructuralTemplate Parse(std::string_view text) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
      if (c == ':') {
        parts.push_back(current);
        current.clear();
      } else {
        current.push_back(c);
      }
    }
    parts.push_back(current);
    const auto arg = [&](size_t i, int fallback) {
      if (i >= parts.size()) return fallback;
      const auto v = ParseInt(parts[i]);
      if (!v) {
        throw InvalidArgument("bad template parameter in '" +
                              std::string(text) + "'");
      }
      return static_cast<int>(*v);
    };
    const std::string& kind = parts[0];
    if (kind == "chain") return Chain(arg(1, 4));
    if (kind == "star") return Star(arg(1, 3));
    if (kind == "clique") return Clique(arg(1, 5));
    if (kind == "barbell") return Barbell(arg(1, 5), arg(2, 1));
    if (kind == "lollipop") return Lollipop(arg(1, 5), arg(2, 2));
    throw InvalidArgument("unknown template '" + std::string(text) + "'");
  }
};

struct TemplateInstance {
  int node_count = 0;
  std::vector<Edge> edges;
  std::vector<std::string> roles;  // per position
  std::vector<int> side;           // per position: clique it hangs off
};

namespace internal {

inline void AddClique(TemplateInstance& t, int first, int size) {
  for (int i = 0; i < size; ++i) {
    for (int j = i + 1; j < size; ++j) t.edges.emplace_back(first + i, first + j);
  }
}

inline std::string DistanceRole(const std::string& prefix, int d) {
  return prefix + "-" + std::to_string(d);
}

}  // namespace internal

inline TemplateInstance Instantiate(const StructuralTemplate& tpl) {
  TemplateInstance t;
  switch (tpl.kind) {
    case TemplateKind::kChain: {
      if (tpl.size < 2) throw InvalidArgument("chain length must be >= 2");
      t.node_count = tpl.size;
      for (int i = 0; i + 1 < tpl.size; ++i) t.edges.emplace_back(i, i + 1);
      for (int i = 0; i < tpl.size; ++i) {
        const int d = std::min(i, tpl.size - 1 - i);
        t.roles.push_back(d == 0   ? "chain-end"
                          : d == 1 ? "chain-interior"
                                   : internal::DistanceRole("chain-interior", d));
      }
      break;
    }
    case TemplateKind::kStar: {
      if (tpl.size < 2) throw InvalidArgument("star needs >= 2 leaves");
      t.node_count = tpl.size + 1;
      t.roles.push_back("star-center");
      for (int i = 1; i <= tpl.size; ++i) {
        t.edges.emplace_back(0, i);
        t.roles.push_back("star-leaf");
      }
      break;
    }
    case TemplateKind::kClique: {
      if (tpl.size < 2) throw InvalidArgument("clique size must be >= 2");
      t.node_count = tpl.size;
      internal::AddClique(t, 0, tpl.size);
      t.roles.assign(tpl.size, "clique-member");
      break;
    }
    case TemplateKind::kBarbell: {
      const int s = tpl.size;
      const int b = tpl.bridge;
      if (s < 3) throw InvalidArgument("barbell clique size must be >= 3");
      if (b < 0) throw InvalidArgument("negative barbell bridge");
      t.node_count = 2 * s + b;
      internal::AddClique(t, 0, s);
      internal::AddClique(t, s, s);
      t.roles.assign(2 * s, "clique-member");
      t.roles[0] = t.roles[s] = "clique-attachment";
      int prev = 0;
      const int center = (b + 1) / 2;  // largest distance to an attachment
      for (int i = 0; i < b; ++i) {
        const int node = 2 * s + i;
        t.edges.emplace_back(prev, node);
        prev = node;
        const int d = std::min(i + 1, b - i);
        t.roles.push_back(d == center ? "bridge-center"
                                      : internal::DistanceRole("bridge-inner", d));
      }
      t.edges.emplace_back(prev, s);
      break;
    }
    case TemplateKind::kLollipop: {
      const int s = tpl.size;
      const int tail = tpl.bridge;
      if (s < 3) throw InvalidArgument("lollipop clique size must be >= 3");
      if (tail < 1) throw InvalidArgument("lollipop tail must be >= 1");
      t.node_count = s + tail;
      internal::AddClique(t, 0, s);
      t.roles.assign(s, "clique-member");
      t.roles[0] = "tail-attachment";
      for (int i = 0; i < tail; ++i) {
        t.edges.emplace_back(i == 0 ? 0 : s + i - 1, s + i);
        t.roles.push_back(i + 1 == tail
                              ? "tail-end"
                              : internal::DistanceRole("tail-inner", i + 1));
      }
      break;
    }
  }
  t.side.assign(t.node_count, 0);
  if (tpl.kind == TemplateKind::kBarbell) {
    const int s = tpl.size;
    for (int i = s; i < 2 * s; ++i) t.side[i] = 1;
    for (int i = 0; i < tpl.bridge; ++i) {
      if (i + 1 > tpl.bridge - i) t.side[2 * s + i] = 1;
    }
  }
  return t;
}

struct PlantedGraph {
  Graph graph;
  NodeTable nodes;                      // ids "n0".."n{N-1}", attribute "role"
  std::vector<int32_t> true_role;       // per node
  std::vector<std::string> role_names;  // by role id
  std::vector<int64_t> copy;            // per node: template copy index
  std::vector<int> side;                // per node: clique it hangs off
};

// Lays out `copies` disjoint copies of every template (template-major), then
// adds `noise_edges` distinct random edges between non-adjacent nodes.
// Role ids follow first appearance of each role name.
inline PlantedGraph GeneratePlantedGraph(
    std::span<const StructuralTemplate> templates, int copies,
    int64_t noise_edges, uint64_t seed) {
  if (templates.empty()) throw InvalidArgument("empty template set");
  if (copies < 1) throw InvalidArgument("copies must be >= 1");
  if (noise_edges < 0) throw InvalidArgument("negative noise edge count");
  PlantedGraph out;
  std::vector<Edge> edges;
  std::map<std::string, int32_t> role_ids;
  int64_t offset = 0;
  int64_t copy_index = 0;
  for (const auto& tpl : templates) {
    const TemplateInstance inst = Instantiate(tpl);
    for (int c = 0; c < copies; ++c) {
      for (const auto& [a, b] : inst.edges) {
        edges.emplace_back(static_cast<NodeId>(offset + a),
                           static_cast<NodeId>(offset + b));
      }
      for (int i = 0; i < inst.node_count; ++i) {
        const auto& name = inst.roles[i];
        auto [it, inserted] = role_ids.try_emplace(
            name, static_cast<int32_t>(out.role_names.size()));
        if (inserted) out.role_names.push_back(name);
        out.true_role.push_back(it->second);
        const NodeId v = out.nodes.Add("n" + std::to_string(offset + i));
        out.nodes.SetAttribute(v, "role", name);
        out.copy.push_back(copy_index);
        out.side.push_back(inst.side[i]);
      }
      ++copy_index;
      offset += inst.node_count;
    }
  }
  const int64_t n = offset;
  std::set<Edge> present;
  for (const auto& [a, b] : edges) present.emplace(std::min(a, b), std::max(a, b));
  const int64_t capacity = n * (n - 1) / 2 - static_cast<int64_t>(present.size());
  if (noise_edges > capacity) {
    throw InvalidArgument("more noise edges requested than non-edges exist");
  }
  RandomEngine rng(seed);
  for (int64_t added = 0; added < noise_edges;) {
    const auto a = static_cast<NodeId>(UniformIndex(rng, n));
    const auto b = static_cast<NodeId>(UniformIndex(rng, n));
    if (a == b) continue;
    const Edge e(std::min(a, b), std::max(a, b));
    if (!present.insert(e).second) continue;
    edges.push_back(e);
    ++added;
  }
  out.graph = Graph::FromEdges(n, edges);
  return out;
}

// Labels every node with a discipline "d0".."d{count-1}". Each template
// copy draws a random start label; side 1 of a barbell takes the next label,
// so the two halves of a barbell always differ.
inline void AssignSyntheticDisciplines(PlantedGraph& planted, int count,
                                       uint64_t seed) {
  if (count < 2) throw InvalidArgument("need at least two disciplines");
  RandomEngine rng(seed);
  std::vector<int> start;
  for (NodeId v = 0; v < planted.nodes.size(); ++v) {
    const auto c = static_cast<size_t>(planted.copy[v]);
    while (start.size() <= c) {
      start.push_back(static_cast<int>(UniformIndex(rng, count)));
    }
    const int label = (start[c] + planted.side[v]) % count;
    planted.nodes.set_category(v, "d" + std::to_string(label));
  }
}

}  // namespace rolegraph

#endif  // ROLEGRAPH_PLANTED_H_
