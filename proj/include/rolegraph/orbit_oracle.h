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

// Reference orbit census by exhaustive enumeration. Every connected induced
// subgraph on 2..5 nodes is visited exactly once (ESU expansion), matched
// against the graphlet templates and each member credited with its orbit.
// Slow, and meant as the ground truth for CountOrbits.

#ifndef ROLEGRAPH_ORBIT_ORACLE_H_
#define ROLEGRAPH_ORBIT_ORACLE_H_

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "rolegraph/errors.h"
#include "rolegraph/graph.h"
#include "rolegraph/graphlets.h"
#include "rolegraph/orbits.h"

namespace rolegraph {

// Orbit of each position for every labeled graph on k nodes, keyed by its
// adjacency code. Bit PairBit(i, j) of a code is set iff i ~ j.
class GraphletClassifier {
 public:
  static const GraphletClassifier& Get() {
    static const GraphletClassifier kInstance;
    return kInstance;
  }

  static int PairBit(int i, int j) {
    // Pairs ordered (0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...
    if (i > j) std::swap(i, j);
    return j * (j - 1) / 2 + i;
  }

  // Orbits of positions 0..k-1, or nullptr when the graph is disconnected.
  const std::array<int8_t, 5>* Lookup(int k, uint32_t code) const {
    const auto& entry = tables_[k][code];
    return entry[0] < 0 ? nullptr : &entry;
  }

  // Template id for a connected labeled graph, -1 otherwise.
  int GraphletId(int k, uint32_t code) const { return graphlet_[k][code]; }

 private:
  GraphletClassifier() {
    for (int k = 2; k <= 5; ++k) {
      const size_t size = size_t{1} << (k * (k - 1) / 2);
      tables_[k].assign(size, {-1, -1, -1, -1, -1});
      graphlet_[k].assign(size, -1);
    }
    for (const auto& tpl : GraphletTemplates()) {
      const int k = tpl.nodes;
      std::array<int, 5> perm{};
      std::iota(perm.begin(), perm.begin() + k, 0);
      do {
        uint32_t code = 0;
        for (const auto& [u, v] : tpl.edges) {
          code |= uint32_t{1} << PairBit(perm[u], perm[v]);
        }
        std::array<int8_t, 5> orbits{-1, -1, -1, -1, -1};
        for (int p = 0; p < k; ++p) orbits[perm[p]] = static_cast<int8_t>(tpl.orbit[p]);
        auto& entry = tables_[k][code];
        if (entry[0] >= 0 && entry != orbits) {
          throw std::logic_error("graphlet template G" +
                                 std::to_string(tpl.id) +
                                 " assigns different orbits to automorphic "
                                 "positions");
        }
        entry = orbits;
        graphlet_[k][code] = tpl.id;
      } while (std::next_permutation(perm.begin(), perm.begin() + k));
    }
  }

  std::array<std::vector<std::array<int8_t, 5>>, 6> tables_;
  std::array<std::vector<int>, 6> graphlet_;
};

namespace internal {

class SubgraphEnumerator {
 public:
  SubgraphEnumerator(const Graph& g, OrbitMatrix& out)
      : g_(g), out_(out), classifier_(GraphletClassifier::Get()) {}

  void Run() {
    for (NodeId v = 0; v < g_.node_count(); ++v) {
      root_ = v;
      std::vector<NodeId> extension;
      for (NodeId u : g_.neighbors(v)) {
        if (u > v) extension.push_back(u);
      }
      members_.assign(1, v);
      Extend(extension);
    }
  }

 private:
  bool InClosedNeighborhood(NodeId u) const {
    for (NodeId m : members_) {
      if (m == u || g_.HasEdge(m, u)) return true;
    }
    return false;
  }

  void Record() {
    const int k = static_cast<int>(members_.size());
    uint32_t code = 0;
    for (int j = 1; j < k; ++j) {
      for (int i = 0; i < j; ++i) {
        if (g_.HasEdge(members_[i], members_[j])) {
          code |= uint32_t{1} << GraphletClassifier::PairBit(i, j);
        }
      }
    }
    const auto* orbits = classifier_.Lookup(k, code);
    if (orbits == nullptr) {
      throw std::logic_error("enumerated a disconnected subgraph");
    }
    for (int i = 0; i < k; ++i) ++out_.at(members_[i], (*orbits)[i]);
  }

  void Extend(std::vector<NodeId> extension) {
    if (members_.size() >= 2) Record();
    if (members_.size() == 5) return;
    while (!extension.empty()) {
      const NodeId w = extension.back();
      extension.pop_back();
      std::vector<NodeId> next = extension;
      for (NodeId u : g_.neighbors(w)) {
        if (u <= root_) continue;
        if (InClosedNeighborhood(u)) continue;
        if (std::find(next.begin(), next.end(), u) != next.end()) continue;
        next.push_back(u);
      }
      members_.push_back(w);
      Extend(std::move(next));
      members_.pop_back();
    }
  }

  const Graph& g_;
  OrbitMatrix& out_;
  const GraphletClassifier& classifier_;
  NodeId root_ = 0;
  std::vector<NodeId> members_;
};

}  // namespace internal

inline constexpr int64_t kDefaultOracleMaxNodes = 300;

inline OrbitMatrix CountOrbitsBruteForce(
    const Graph& graph, int64_t max_nodes = kDefaultOracleMaxNodes) {
  if (graph.node_count() > max_nodes) {
    throw InvalidArgument("brute-force census limited to " +
                          std::to_string(max_nodes) + " nodes, graph has " +
                          std::to_string(graph.node_count()));
  }
  OrbitMatrix out(graph.node_count());
  internal::SubgraphEnumerator(graph, out).Run();
  return out;
}

}  // namespace rolegraph

#endif  // ROLEGRAPH_ORBIT_ORACLE_H_
