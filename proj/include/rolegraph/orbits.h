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

// Graphlet orbit census: for every node, how often it occupies each of the
// 73 automorphism orbits of the connected graphlets on 2 to 5 nodes.
//
// Orbit numbering is the standard one for graphlets G0..G29: 0 is the edge,
// 1-3 the three-node graphlets, 4-14 the four-node ones and 15-72 the
// five-node ones. The counter follows the combinatorial approach of
// enumerating only the four-node graphlets around each node plus complete
// five-cliques, then recovering every five-node orbit from a triangular
// system of linear relations between overlapping extension counts.

#ifndef ROLEGRAPH_ORBITS_H_
#define ROLEGRAPH_ORBITS_H_

#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rolegraph/csv.h"
#include "rolegraph/errors.h"
#include "rolegraph/graph.h"
#include "rolegraph/matrix.h"
#include "rolegraph/parallel.h"

namespace rolegraph {

inline constexpr int kOrbitCount = 73;

// Per-node orbit counts, N x 73, row-major.
class OrbitMatrix {
 public:
  OrbitMatrix() = default;
  explicit OrbitMatrix(int64_t node_count)
      : node_count_(node_count), counts_(node_count * kOrbitCount, 0) {}

  int64_t node_count() const { return node_count_; }

  int64_t& at(int64_t v, int orbit) { return counts_[v * kOrbitCount + orbit]; }
  int64_t at(int64_t v, int orbit) const {
    return counts_[v * kOrbitCount + orbit];
  }

  std::span<int64_t> row(int64_t v) {
    return {counts_.data() + v * kOrbitCount, kOrbitCount};
  }
  std::span<const int64_t> row(int64_t v) const {
    return {counts_.data() + v * kOrbitCount, kOrbitCount};
  }

  int64_t ColumnSum(int orbit) const {
    int64_t total = 0;
    for (int64_t v = 0; v < node_count_; ++v) total += at(v, orbit);
    return total;
  }

  int64_t ColumnMax(int orbit) const {
    int64_t best = 0;
    for (int64_t v = 0; v < node_count_; ++v) best = std::max(best, at(v, orbit));
    return best;
  }

  friend bool operator==(const OrbitMatrix&, const OrbitMatrix&) = default;

 private:
  int64_t node_count_ = 0;
  std::vector<int64_t> counts_;
};

// log(1 + count) features, N x 73.
using LogOrbitMatrix = DenseMatrix;

inline LogOrbitMatrix LogTransform(const OrbitMatrix& counts) {
  LogOrbitMatrix out(counts.node_count(), kOrbitCount);
  for (int64_t v = 0; v < counts.node_count(); ++v) {
    for (int o = 0; o < kOrbitCount; ++o) {
      out(v, o) = std::log1p(static_cast<double>(counts.at(v, o)));
    }
  }
  return out;
}

inline std::string OrbitName(int orbit) { return "o" + std::to_string(orbit); }

struct OrbitCountOptions {
  int threads = 1;
  // Upper bound on the memory spent on shared-neighbor tables.
  int64_t memory_budget_bytes = int64_t{8} << 30;
};

namespace internal {

struct PairKeyHash {
  size_t operator()(uint64_t k) const { return std::hash<uint64_t>()(k); }
};

struct TripleKey {
  NodeId a, b, c;  // ascending
  bool operator==(const TripleKey&) const = default;
};

struct TripleKeyHash {
  size_t operator()(const TripleKey& k) const {
    uint64_t h = static_cast<uint32_t>(k.a);
    h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<uint32_t>(k.b);
    h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<uint32_t>(k.c);
    return static_cast<size_t>(h ^ (h >> 29));
  }
};

inline uint64_t PairKey(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<uint64_t>(a) << 32) | static_cast<uint32_t>(b);
}

inline TripleKey MakeTriple(NodeId a, NodeId b, NodeId c) {
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  return {a, b, c};
}

// Adjacency test backed by a bit matrix for small graphs and by binary
// search on the sorted neighbor lists otherwise.
class AdjacencyTest {
 public:
  explicit AdjacencyTest(const Graph& g) : graph_(g) {
    const int64_t n = g.node_count();
    if (n > 0 && n <= 16384) {
      words_per_row_ = (n + 63) / 64;
      bits_.assign(n * words_per_row_, 0);
      for (NodeId u = 0; u < n; ++u) {
        for (NodeId v : g.neighbors(u)) {
          bits_[u * words_per_row_ + v / 64] |= uint64_t{1} << (v % 64);
        }
      }
    }
  }

  bool operator()(NodeId u, NodeId v) const {
    if (!bits_.empty()) {
      return (bits_[u * words_per_row_ + v / 64] >> (v % 64)) & 1;
    }
    return graph_.HasEdge(u, v);
  }

 private:
  const Graph& graph_;
  int64_t words_per_row_ = 0;
  std::vector<uint64_t> bits_;
};

// Shared state for the census: edge ids, triangles per edge and the
// common-neighbor tables for node pairs and mostly-connected triples.
class OrbitCensus {
 public:
  OrbitCensus(const Graph& g, const OrbitCountOptions& options)
      : g_(g), adjacent_(g), options_(options) {
    const int64_t n = g.node_count();
    edge_id_.resize(2 * g.edge_count());
    offsets_.assign(n + 1, 0);
    for (NodeId v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + g.degree(v);
    int64_t next = 0;
    for (NodeId u = 0; u < n; ++u) {
      const auto nu = g.neighbors(u);
      for (size_t i = 0; i < nu.size(); ++i) {
        const NodeId v = nu[i];
        if (u < v) {
          edge_id_[offsets_[u] + i] = next;
          const auto nv = g.neighbors(v);
          const auto pos = std::lower_bound(nv.begin(), nv.end(), u) - nv.begin();
          edge_id_[offsets_[v] + pos] = next;
          ++next;
        }
      }
    }
    CountEdgeTriangles();
    CheckMemoryBudget();
    BuildCommonTables();
    CountFiveCliques();
  }

  OrbitMatrix Run() {
    const int64_t n = g_.node_count();
    OrbitMatrix out(n);
    ParallelForChunks(n, options_.threads, [&](int64_t begin, int64_t end, int) {
      Scratch scratch(n);
      for (int64_t x = begin; x < end; ++x) {
        CountNode(static_cast<NodeId>(x), scratch, out.row(x));
      }
    });
    return out;
  }

 private:
  struct Scratch {
    explicit Scratch(int64_t n) : common_x(n, 0), common_a(n, 0) {}
    std::vector<int64_t> common_x, common_a;
    std::vector<NodeId> list_x, list_a;
  };

  int64_t deg(NodeId v) const { return g_.degree(v); }
  int64_t EdgeAt(NodeId v, size_t i) const { return edge_id_[offsets_[v] + i]; }

  int64_t Common2(NodeId a, NodeId b) const {
    const auto it = common2_.find(PairKey(a, b));
    return it == common2_.end() ? 0 : it->second;
  }
  int64_t Common3(NodeId a, NodeId b, NodeId c) const {
    const auto it = common3_.find(MakeTriple(a, b, c));
    return it == common3_.end() ? 0 : it->second;
  }

  void CountEdgeTriangles() {
    tri_.assign(g_.edge_count(), 0);
    for (NodeId u = 0; u < g_.node_count(); ++u) {
      const auto nu = g_.neighbors(u);
      for (size_t i = 0; i < nu.size(); ++i) {
        const NodeId v = nu[i];
        if (v < u) continue;
        const auto nv = g_.neighbors(v);
        int64_t shared = 0;
        for (size_t p = 0, q = 0; p < nu.size() && q < nv.size();) {
          if (nu[p] == nv[q]) {
            ++shared;
            ++p;
            ++q;
          } else if (nu[p] < nv[q]) {
            ++p;
          } else {
            ++q;
          }
        }
        tri_[EdgeAt(u, i)] = shared;
      }
    }
  }

  void CheckMemoryBudget() const {
    // Pairs: one entry per pair of neighbors of some node. Triples are only
    // stored when they span at least one edge, so each node contributes at
    // most (#triangles through it) * (degree - 2) of them.
    double pairs = 0, triples = 0;
    for (NodeId x = 0; x < g_.node_count(); ++x) {
      const double d = static_cast<double>(deg(x));
      pairs += d * (d - 1) / 2;
      int64_t triangles = 0;
      const auto nx = g_.neighbors(x);
      for (size_t i = 0; i < nx.size(); ++i) triangles += tri_[EdgeAt(x, i)];
      triples += static_cast<double>(triangles / 2) * std::max(0.0, d - 2);
    }
    constexpr double kBytesPerEntry = 48;
    const double estimate = (pairs + triples) * kBytesPerEntry;
    if (estimate > static_cast<double>(options_.memory_budget_bytes)) {
      throw ResourceError(
          "orbit census needs an estimated " +
          std::to_string(static_cast<int64_t>(estimate / (1 << 20))) +
          " MiB of neighbor tables, over the budget of " +
          std::to_string(options_.memory_budget_bytes >> 20) + " MiB");
    }
  }

  void BuildCommonTables() {
    for (NodeId x = 0; x < g_.node_count(); ++x) {
      const auto nx = g_.neighbors(x);
      for (size_t i = 0; i < nx.size(); ++i) {
        const NodeId a = nx[i];
        for (size_t j = i + 1; j < nx.size(); ++j) {
          const NodeId b = nx[j];
          ++common2_[PairKey(a, b)];
          const bool ab = adjacent_(a, b);
          for (size_t k = j + 1; k < nx.size(); ++k) {
            const NodeId c = nx[k];
            const int edges = ab + adjacent_(a, c) + adjacent_(b, c);
            if (edges < 2) continue;
            ++common3_[MakeTriple(a, b, c)];
          }
        }
      }
    }
  }

  void CountFiveCliques() {
    k5_.assign(g_.node_count(), 0);
    std::vector<NodeId> tri_nodes, quad_nodes;
    for (NodeId x = 0; x < g_.node_count(); ++x) {
      for (NodeId y : g_.neighbors(x)) {
        if (y >= x) break;
        tri_nodes.clear();
        for (NodeId z : g_.neighbors(y)) {
          if (z >= y) break;
          if (adjacent_(x, z)) tri_nodes.push_back(z);
        }
        for (size_t i = 0; i < tri_nodes.size(); ++i) {
          const NodeId z = tri_nodes[i];
          quad_nodes.clear();
          for (size_t j = i + 1; j < tri_nodes.size(); ++j) {
            if (adjacent_(z, tri_nodes[j])) quad_nodes.push_back(tri_nodes[j]);
          }
          for (size_t p = 0; p < quad_nodes.size(); ++p) {
            for (size_t q = p + 1; q < quad_nodes.size(); ++q) {
              if (!adjacent_(quad_nodes[p], quad_nodes[q])) continue;
              ++k5_[x];
              ++k5_[y];
              ++k5_[z];
              ++k5_[quad_nodes[p]];
              ++k5_[quad_nodes[q]];
            }
          }
        }
      }
    }
  }

  void CountNode(NodeId x, Scratch& s, std::span<int64_t> orbit) const {
    const auto& adj = adjacent_;
    const auto nx = g_.neighbors(x);
    const int64_t dx = deg(x);

    for (NodeId v : s.list_x) s.common_x[v] = 0;
    s.list_x.clear();

    orbit[0] = dx;
    for (size_t i = 0; i < nx.size(); ++i) {
      const NodeId a = nx[i];
      for (size_t j = i + 1; j < nx.size(); ++j) {
        if (adj(a, nx[j])) {
          ++orbit[3];
        } else {
          ++orbit[2];
        }
      }
      for (NodeId b : g_.neighbors(a)) {
        if (b == x || adj(x, b)) continue;
        ++orbit[1];
        if (s.common_x[b] == 0) s.list_x.push_back(b);
        ++s.common_x[b];
      }
    }

    // Extension counts. f[k] accumulates a sum whose leading term is a
    // multiple of orbit k; the remaining terms are orbits > k.
    std::array<int64_t, kOrbitCount> f{};

    for (size_t ia = 0; ia < nx.size(); ++ia) {
      const NodeId a = nx[ia];
      const int64_t xa = EdgeAt(x, ia);
      const auto na = g_.neighbors(a);
      const int64_t da = deg(a);

      for (NodeId v : s.list_a) s.common_a[v] = 0;
      s.list_a.clear();
      for (NodeId b : na) {
        for (NodeId c : g_.neighbors(b)) {
          if (c == a || adj(a, c)) continue;
          if (s.common_a[c] == 0) s.list_a.push_back(c);
          ++s.common_a[c];
        }
      }

      // x in a four-clique.
      for (size_t ib = ia + 1; ib < nx.size(); ++ib) {
        const NodeId b = nx[ib];
        if (!adj(a, b)) continue;
        const int64_t xb = EdgeAt(x, ib);
        for (size_t ic = ib + 1; ic < nx.size(); ++ic) {
          const NodeId c = nx[ic];
          if (!adj(a, c) || !adj(b, c)) continue;
          const int64_t xc = EdgeAt(x, ic);
          ++orbit[14];
          f[70] += Common3(a, b, c) - 1;
          f[71] += (tri_[xa] > 2 && tri_[xb] > 2) ? Common3(x, a, b) - 1 : 0;
          f[71] += (tri_[xa] > 2 && tri_[xc] > 2) ? Common3(x, a, c) - 1 : 0;
          f[71] += (tri_[xb] > 2 && tri_[xc] > 2) ? Common3(x, b, c) - 1 : 0;
          f[67] += tri_[xa] - 2 + tri_[xb] - 2 + tri_[xc] - 2;
          f[66] += Common2(a, b) - 2 + Common2(a, c) - 2 + Common2(b, c) - 2;
          f[58] += dx - 3;
          f[57] += da - 3 + deg(b) - 3 + deg(c) - 3;
        }
      }

      // x a degree-3 node of a diamond; a the other one.
      for (size_t ib = 0; ib < nx.size(); ++ib) {
        const NodeId b = nx[ib];
        if (!adj(a, b)) continue;
        const int64_t xb = EdgeAt(x, ib);
        for (size_t ic = ib + 1; ic < nx.size(); ++ic) {
          const NodeId c = nx[ic];
          if (!adj(a, c) || adj(b, c)) continue;
          const int64_t xc = EdgeAt(x, ic);
          ++orbit[13];
          f[69] += (tri_[xb] > 1 && tri_[xc] > 1) ? Common3(x, b, c) - 1 : 0;
          f[68] += Common3(a, b, c) - 1;
          f[64] += Common2(b, c) - 2;
          f[61] += tri_[xb] - 1 + tri_[xc] - 1;
          f[60] += Common2(a, b) - 1 + Common2(a, c) - 1;
          f[55] += tri_[xa] - 2;
          f[48] += deg(b) - 2 + deg(c) - 2;
          f[42] += dx - 3;
          f[41] += da - 3;
        }
      }

      // x a degree-2 node of a diamond.
      for (size_t ib = ia + 1; ib < nx.size(); ++ib) {
        const NodeId b = nx[ib];
        if (!adj(a, b)) continue;
        for (size_t ic = 0; ic < na.size(); ++ic) {
          const NodeId c = na[ic];
          if (c == x || adj(x, c) || !adj(b, c)) continue;
          const int64_t ac = EdgeAt(a, ic);
          ++orbit[12];
          f[65] += tri_[ac] > 1 ? Common3(a, b, c) : 0;
          f[63] += s.common_x[c] - 2;
          f[59] += tri_[ac] - 1 + Common2(b, c) - 1;
          f[54] += Common2(a, b) - 2;
          f[47] += dx - 2;
          f[46] += deg(c) - 2;
          f[40] += da - 3 + deg(b) - 3;
        }
      }

      // x on a four-cycle.
      for (size_t ib = ia + 1; ib < nx.size(); ++ib) {
        const NodeId b = nx[ib];
        if (adj(a, b)) continue;
        const int64_t xb = EdgeAt(x, ib);
        for (size_t ic = 0; ic < na.size(); ++ic) {
          const NodeId c = na[ic];
          if (c == x || adj(x, c) || !adj(b, c)) continue;
          const int64_t ac = EdgeAt(a, ic);
          ++orbit[8];
          f[62] += tri_[ac] > 0 ? Common3(a, b, c) : 0;
          f[53] += tri_[xa] + tri_[xb];
          f[51] += tri_[ac] + Common2(c, b);
          f[50] += s.common_x[c] - 2;
          f[49] += s.common_a[b] - 2;
          f[38] += dx - 2;
          f[37] += da - 2 + deg(b) - 2;
          f[36] += deg(c) - 2;
        }
      }

      // x the degree-3 node of a paw.
      for (size_t ib = ia + 1; ib < nx.size(); ++ib) {
        const NodeId b = nx[ib];
        if (!adj(a, b)) continue;
        for (size_t ic = 0; ic < nx.size(); ++ic) {
          const NodeId c = nx[ic];
          if (c == a || c == b || adj(a, c) || adj(b, c)) continue;
          ++orbit[11];
          f[44] += tri_[EdgeAt(x, ic)];
          f[33] += dx - 3;
          f[30] += deg(c) - 1;
          f[26] += da - 2 + deg(b) - 2;
        }
      }

      // x a degree-2 triangle node of a paw; b carries the pendant.
      for (size_t ib = 0; ib < nx.size(); ++ib) {
        const NodeId b = nx[ib];
        if (!adj(a, b)) continue;
        const auto nb = g_.neighbors(b);
        for (size_t ic = 0; ic < nb.size(); ++ic) {
          const NodeId c = nb[ic];
          if (c == x || c == a || adj(a, c) || adj(x, c)) continue;
          ++orbit[10];
          f[52] += s.common_a[c] - 1;
          f[43] += tri_[EdgeAt(b, ic)];
          f[32] += deg(b) - 3;
          f[29] += deg(c) - 1;
          f[25] += da - 2;
        }
      }

      // x the pendant of a paw.
      for (size_t ib = 0; ib < na.size(); ++ib) {
        const NodeId b = na[ib];
        if (b == x || adj(x, b)) continue;
        const int64_t ab = EdgeAt(a, ib);
        for (size_t ic = ib + 1; ic < na.size(); ++ic) {
          const NodeId c = na[ic];
          if (c == x || !adj(b, c) || adj(x, c)) continue;
          const int64_t ac = EdgeAt(a, ic);
          ++orbit[9];
          f[56] += (tri_[ab] > 1 && tri_[ac] > 1) ? Common3(a, b, c) : 0;
          f[45] += Common2(b, c) - 1;
          f[39] += tri_[ab] - 1 + tri_[ac] - 1;
          f[31] += da - 3;
          f[28] += dx - 1;
          f[24] += deg(b) - 2 + deg(c) - 2;
        }
      }

      // x the end of a four-path x-a-b-c.
      for (size_t ib = 0; ib < na.size(); ++ib) {
        const NodeId b = na[ib];
        if (b == x || adj(x, b)) continue;
        const auto nb = g_.neighbors(b);
        for (size_t ic = 0; ic < nb.size(); ++ic) {
          const NodeId c = nb[ic];
          if (c == a || adj(a, c) || adj(x, c)) continue;
          ++orbit[4];
          f[35] += s.common_a[c] - 1;
          f[34] += s.common_x[c];
          f[27] += tri_[EdgeAt(b, ic)];
          f[18] += deg(b) - 2;
          f[16] += dx - 1;
          f[15] += deg(c) - 1;
        }
      }

      // x inside a four-path a-x-b-c.
      for (size_t ib = 0; ib < nx.size(); ++ib) {
        const NodeId b = nx[ib];
        if (b == a || adj(a, b)) continue;
        for (NodeId c : g_.neighbors(b)) {
          if (c == x || adj(a, c) || adj(x, c)) continue;
          ++orbit[5];
          f[17] += da - 1;
        }
      }

      // x a leaf of a claw centered at a.
      for (size_t ib = 0; ib < na.size(); ++ib) {
        const NodeId b = na[ib];
        if (b == x || adj(x, b)) continue;
        for (size_t ic = ib + 1; ic < na.size(); ++ic) {
          const NodeId c = na[ic];
          if (c == x || adj(x, c) || adj(b, c)) continue;
          ++orbit[6];
          f[22] += da - 3;
          f[20] += dx - 1;
          f[19] += deg(b) - 1 + deg(c) - 1;
        }
      }

      // x the center of a claw.
      for (size_t ib = ia + 1; ib < nx.size(); ++ib) {
        const NodeId b = nx[ib];
        if (adj(a, b)) continue;
        for (size_t ic = ib + 1; ic < nx.size(); ++ic) {
          const NodeId c = nx[ic];
          if (adj(a, c) || adj(b, c)) continue;
          ++orbit[7];
          f[23] += dx - 3;
          f[21] += da - 1 + deg(b) - 1 + deg(c) - 1;
        }
      }
    }

    SolveFiveNodeOrbits(f, k5_[x], orbit);
  }

  // Back-substitution, highest orbit first.
  static void SolveFiveNodeOrbits(const std::array<int64_t, kOrbitCount>& f,
                                  int64_t five_cliques,
                                  std::span<int64_t> o) {
    o[72] = five_cliques;
    o[71] = (f[71] - 12 * o[72]) / 2;
    o[70] = (f[70] - 4 * o[72]);
    o[69] = (f[69] - 2 * o[71]) / 4;
    o[68] = (f[68] - 2 * o[71]);
    o[67] = (f[67] - 12 * o[72] - 4 * o[71]);
    o[66] = (f[66] - 12 * o[72] - 2 * o[71] - 3 * o[70]);
    o[65] = (f[65] - 3 * o[70]) / 2;
    o[64] = (f[64] - 2 * o[71] - 4 * o[69] - 1 * o[68]);
    o[63] = (f[63] - 3 * o[70] - 2 * o[68]);
    o[62] = (f[62] - 1 * o[68]) / 2;
    o[61] = (f[61] - 4 * o[71] - 8 * o[69] - 2 * o[67]) / 2;
    o[60] = (f[60] - 4 * o[71] - 2 * o[68] - 2 * o[67]);
    o[59] = (f[59] - 6 * o[70] - 2 * o[68] - 4 * o[65]);
    o[58] = (f[58] - 4 * o[72] - 2 * o[71] - 1 * o[67]);
    o[57] = (f[57] - 12 * o[72] - 4 * o[71] - 3 * o[70] - 1 * o[67] -
             2 * o[66]);
    o[56] = (f[56] - 2 * o[65]) / 3;
    o[55] = (f[55] - 2 * o[71] - 2 * o[67]) / 3;
    o[54] = (f[54] - 3 * o[70] - 1 * o[66] - 2 * o[65]) / 2;
    o[53] = (f[53] - 2 * o[68] - 2 * o[64] - 2 * o[63]);
    o[52] = (f[52] - 2 * o[66] - 2 * o[64] - 1 * o[59]) / 2;
    o[51] = (f[51] - 2 * o[68] - 2 * o[63] - 4 * o[62]);
    o[50] = (f[50] - 1 * o[68] - 2 * o[63]) / 3;
    o[49] = (f[49] - 1 * o[68] - 1 * o[64] - 2 * o[62]) / 2;
    o[48] = (f[48] - 4 * o[71] - 8 * o[69] - 2 * o[68] - 2 * o[67] -
             2 * o[64] - 2 * o[61] - 1 * o[60]);
    o[47] = (f[47] - 3 * o[70] - 2 * o[68] - 1 * o[66] - 1 * o[63] -
             1 * o[60]);
    o[46] = (f[46] - 3 * o[70] - 2 * o[68] - 2 * o[65] - 1 * o[63] -
             1 * o[59]);
    o[45] = (f[45] - 2 * o[65] - 2 * o[62] - 3 * o[56]);
    o[44] = (f[44] - 1 * o[67] - 2 * o[61]) / 4;
    o[43] = (f[43] - 2 * o[66] - 1 * o[60] - 1 * o[59]) / 2;
    o[42] = (f[42] - 2 * o[71] - 4 * o[69] - 2 * o[67] - 2 * o[61] -
             3 * o[55]);
    o[41] = (f[41] - 2 * o[71] - 1 * o[68] - 2 * o[67] - 1 * o[60] -
             3 * o[55]);
    o[40] = (f[40] - 6 * o[70] - 2 * o[68] - 2 * o[66] - 4 * o[65] -
             1 * o[60] - 1 * o[59] - 4 * o[54]);
    o[39] = (f[39] - 4 * o[65] - 1 * o[59] - 6 * o[56]) / 2;
    o[38] = (f[38] - 1 * o[68] - 1 * o[64] - 2 * o[63] - 1 * o[53] -
             3 * o[50]);
    o[37] = (f[37] - 2 * o[68] - 2 * o[64] - 2 * o[63] - 4 * o[62] -
             1 * o[53] - 1 * o[51] - 4 * o[49]);
    o[36] = (f[36] - 1 * o[68] - 2 * o[63] - 2 * o[62] - 1 * o[51] -
             3 * o[50]);
    o[35] = (f[35] - 1 * o[59] - 2 * o[52] - 2 * o[45]) / 2;
    o[34] = (f[34] - 1 * o[59] - 2 * o[52] - 1 * o[51]) / 2;
    o[33] = (f[33] - 1 * o[67] - 2 * o[61] - 3 * o[58] - 4 * o[44] -
             2 * o[42]) / 2;
    o[32] = (f[32] - 2 * o[66] - 1 * o[60] - 1 * o[59] - 2 * o[57] -
             2 * o[43] - 2 * o[41] - 1 * o[40]) / 2;
    o[31] = (f[31] - 2 * o[65] - 1 * o[59] - 3 * o[56] - 1 * o[43] -
             2 * o[39]);
    o[30] = (f[30] - 1 * o[67] - 1 * o[63] - 2 * o[61] - 1 * o[53] -
             4 * o[44]);
    o[29] = (f[29] - 2 * o[66] - 2 * o[64] - 1 * o[60] - 1 * o[59] -
             1 * o[53] - 2 * o[52] - 2 * o[43]);
    o[28] = (f[28] - 2 * o[65] - 2 * o[62] - 1 * o[59] - 1 * o[51] -
             1 * o[43]);
    o[27] = (f[27] - 1 * o[59] - 1 * o[51] - 2 * o[45]) / 2;
    o[26] = (f[26] - 2 * o[67] - 2 * o[63] - 2 * o[61] - 6 * o[58] -
             1 * o[53] - 2 * o[47] - 2 * o[42]);
    o[25] = (f[25] - 2 * o[66] - 2 * o[64] - 1 * o[59] - 2 * o[57] -
             2 * o[52] - 1 * o[48] - 1 * o[40]) / 2;
    o[24] = (f[24] - 4 * o[65] - 4 * o[62] - 1 * o[59] - 6 * o[56] -
             1 * o[51] - 2 * o[45] - 2 * o[39]);
    o[23] = (f[23] - 1 * o[55] - 1 * o[42] - 2 * o[33]) / 4;
    o[22] = (f[22] - 2 * o[54] - 1 * o[40] - 1 * o[39] - 1 * o[32] -
             2 * o[31]) / 3;
    o[21] = (f[21] - 3 * o[55] - 3 * o[50] - 2 * o[42] - 2 * o[38] -
             2 * o[33]);
    o[20] = (f[20] - 2 * o[54] - 2 * o[49] - 1 * o[40] - 1 * o[37] -
             1 * o[32]);
    o[19] = (f[19] - 4 * o[54] - 4 * o[49] - 1 * o[40] - 2 * o[39] -
             1 * o[37] - 2 * o[35] - 2 * o[31]);
    o[18] = (f[18] - 1 * o[59] - 1 * o[51] - 2 * o[46] - 2 * o[45] -
             2 * o[36] - 2 * o[27] - 1 * o[24]) / 2;
    o[17] = (f[17] - 1 * o[60] - 1 * o[53] - 1 * o[51] - 1 * o[48] -
             1 * o[37] - 2 * o[34] - 2 * o[30]) / 2;
    o[16] = (f[16] - 1 * o[59] - 2 * o[52] - 1 * o[51] - 2 * o[46] -
             2 * o[36] - 2 * o[34] - 1 * o[29]);
    o[15] = (f[15] - 1 * o[59] - 2 * o[52] - 1 * o[51] - 2 * o[45] -
             2 * o[35] - 2 * o[34] - 2 * o[27]);
  }

  const Graph& g_;
  AdjacencyTest adjacent_;
  OrbitCountOptions options_;
  std::vector<int64_t> offsets_;
  std::vector<int64_t> edge_id_;
  std::vector<int64_t> tri_;
  std::vector<int64_t> k5_;
  std::unordered_map<uint64_t, int64_t, PairKeyHash> common2_;
  std::unordered_map<TripleKey, int64_t, TripleKeyHash> common3_;
};

}  // namespace internal

// Exact orbit census of every node. Deterministic and independent of the
// thread count; isolated nodes get all-zero rows.
inline OrbitMatrix CountOrbits(const Graph& graph,
                               const OrbitCountOptions& options = {}) {
  if (graph.node_count() == 0) return OrbitMatrix(0);
  internal::OrbitCensus census(graph, options);
  return census.Run();
}

// CSV with header `id,o0,...,o72`, one row per node in index order.
inline void WriteOrbitCsv(const OrbitMatrix& counts, const NodeTable& nodes,
                          std::ostream& out) {
  out << "id";
  for (int o = 0; o < kOrbitCount; ++o) out << ",o" << o;
  out << '\n';
  for (int64_t v = 0; v < counts.node_count(); ++v) {
    out << EscapeCsvField(nodes.id(static_cast<NodeId>(v)));
    for (int o = 0; o < kOrbitCount; ++o) out << ',' << counts.at(v, o);
    out << '\n';
  }
}

struct OrbitTable {
  std::vector<std::string> ids;  // file order
  OrbitMatrix counts;
};

inline OrbitTable ReadOrbitCsv(std::istream& in) {
  std::string line;
  int64_t line_number = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_number;
    const auto body = Trim(line);
    if (body.empty() || body.front() == '#') continue;
    header = SplitCsvLine(body, line_number);
  }
  if (header.size() != kOrbitCount + 1 || header[0] != "id") {
    throw ParseError("orbit table header must be id,o0,...,o72", line_number);
  }
  for (int o = 0; o < kOrbitCount; ++o) {
    if (header[o + 1] != OrbitName(o)) {
      throw ParseError("unexpected orbit column '" + header[o + 1] + "'",
                       line_number);
    }
  }
  std::vector<std::string> ids;
  std::vector<int64_t> values;
  while (std::getline(in, line)) {
    ++line_number;
    const auto body = Trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = SplitCsvLine(body, line_number);
    if (fields.size() != kOrbitCount + 1) {
      throw ParseError("orbit row has wrong number of cells", line_number);
    }
    ids.push_back(fields[0]);
    for (int o = 0; o < kOrbitCount; ++o) {
      const auto v = ParseInt(fields[o + 1]);
      if (!v || *v < 0) {
        throw ParseError("orbit count must be a non-negative integer",
                         line_number);
      }
      values.push_back(*v);
    }
  }
  OrbitTable table;
  table.counts = OrbitMatrix(static_cast<int64_t>(ids.size()));
  for (size_t v = 0; v < ids.size(); ++v) {
    for (int o = 0; o < kOrbitCount; ++o) {
      table.counts.at(v, o) = values[v * kOrbitCount + o];
    }
  }
  table.ids = std::move(ids);
  return table;
}

}  // namespace rolegraph

#endif  // ROLEGRAPH_ORBITS_H_
