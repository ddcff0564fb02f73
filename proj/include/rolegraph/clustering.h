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

// k-means role assignment, silhouette validation and the k sweep.

#ifndef ROLEGRAPH_CLUSTERING_H_
#define ROLEGRAPH_CLUSTERING_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rolegraph/csv.h"
#include "rolegraph/embedding.h"
#include "rolegraph/errors.h"
#include "rolegraph/graph.h"
#include "rolegraph/matrix.h"
#include "rolegraph/parallel.h"
#include "rolegraph/random.h"

namespace rolegraph {

struct RoleAssignment {
  std::vector<int32_t> labels;  // per node, in [0, k)
  int32_t k = 0;
  std::string method_tag;
  uint64_t seed = 0;
};

struct KMeansOptions {
  int max_iterations = 300;
  double tolerance = 1e-6;  // largest centroid displacement
  int threads = 1;
};

struct KMeansResult {
  RoleAssignment assignment;
  DenseMatrix centroids;              // k x d
  std::vector<double> wcss_history;   // after every assignment step
  int iterations = 0;
  bool converged = false;
  int32_t k_effective = 0;            // non-empty clusters
  bool degenerate = false;            // k_effective < k
};

namespace internal {

inline double SquaredDistance(std::span<const double> a,
                              std::span<const double> b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

inline DenseMatrix PlusPlusSeeds(const DenseMatrix& x, int k,
                                 RandomEngine& rng) {
  const int64_t n = x.rows();
  DenseMatrix centers(k, x.cols());
  const auto place = [&](int c, int64_t point) {
    const auto src = x.row(point);
    std::copy(src.begin(), src.end(), centers.row(c).begin());
  };
  place(0, static_cast<int64_t>(UniformIndex(rng, n)));
  std::vector<double> nearest(n);
  for (int64_t i = 0; i < n; ++i) {
    nearest[i] = SquaredDistance(x.row(i), centers.row(0));
  }
  for (int c = 1; c < k; ++c) {
    const double total = std::accumulate(nearest.begin(), nearest.end(), 0.0);
    int64_t chosen = 0;
    if (total > 0.0) {
      const double target = UniformReal(rng) * total;
      double running = 0.0;
      chosen = -1;
      for (int64_t i = 0; i < n; ++i) {
        running += nearest[i];
        if (nearest[i] > 0.0 && running > target) {
          chosen = i;
          break;
        }
      }
      if (chosen < 0) {  // rounding at the tail
        for (int64_t i = n - 1; i >= 0; --i) {
          if (nearest[i] > 0.0) {
            chosen = i;
            break;
          }
        }
      }
    } else {
      chosen = static_cast<int64_t>(UniformIndex(rng, n));
    }
    place(c, chosen);
    for (int64_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], SquaredDistance(x.row(i), centers.row(c)));
    }
  }
  return centers;
}

}  // namespace internal

// Lloyd's algorithm from k-means++ seeds. Ties go to the lowest cluster id.
// A cluster that empties is re-seeded with the point farthest from its own
// centroid; when every point already sits on its centroid the cluster stays
// empty and the run is marked degenerate.
inline KMeansResult KMeans(const DenseMatrix& x, int k, uint64_t seed,
                           const KMeansOptions& options = {}) {
  const int64_t n = x.rows();
  const int64_t d = x.cols();
  if (k < 2) throw InvalidArgument("k-means needs k >= 2");
  if (k > n) {
    throw InvalidArgument("k = " + std::to_string(k) + " exceeds the " +
                          std::to_string(n) + " points");
  }
  RandomEngine rng(seed);
  KMeansResult out;
  out.centroids = internal::PlusPlusSeeds(x, k, rng);
  std::vector<int32_t> labels(n, -1);
  std::vector<double> dist(n);
  const auto assign = [&] {
    ParallelFor(n, options.threads, [&](int64_t i) {
      int32_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double dd = internal::SquaredDistance(x.row(i), out.centroids.row(c));
        if (dd < best_d) {
          best_d = dd;
          best = c;
        }
      }
      labels[i] = best;
      dist[i] = best_d;
    });
    return std::accumulate(dist.begin(), dist.end(), 0.0);
  };
  // Rounding slack for the monotonicity check, scaled by the data.
  double energy = 0.0;
  for (double v : x.data()) energy += v * v;
  std::vector<int64_t> sizes(k);
  for (;;) {
    const double wcss = assign();
    if (!out.wcss_history.empty() &&
        wcss > out.wcss_history.back() + 1e-12 * (out.wcss_history.back() + energy)) {
      throw std::logic_error("k-means objective increased");
    }
    out.wcss_history.push_back(wcss);
    if (out.iterations >= options.max_iterations) break;
    ++out.iterations;

    DenseMatrix next(k, d);
    std::fill(sizes.begin(), sizes.end(), 0);
    for (int64_t i = 0; i < n; ++i) {
      ++sizes[labels[i]];
      auto dst = next.row(labels[i]);
      const auto src = x.row(i);
      for (int64_t j = 0; j < d; ++j) dst[j] += src[j];
    }
    for (int c = 0; c < k; ++c) {
      if (sizes[c] == 0) continue;
      for (double& v : next.row(c)) v /= static_cast<double>(sizes[c]);
    }
    for (int c = 0; c < k; ++c) {
      if (sizes[c] > 0) continue;
      int64_t far = -1;
      double far_d = 0.0;
      for (int64_t i = 0; i < n; ++i) {
        if (sizes[labels[i]] < 2) continue;
        const double dd = internal::SquaredDistance(x.row(i), next.row(labels[i]));
        if (dd > far_d) {
          far_d = dd;
          far = i;
        }
      }
      if (far < 0) continue;
      --sizes[labels[far]];
      labels[far] = c;
      sizes[c] = 1;
      const auto src = x.row(far);
      std::copy(src.begin(), src.end(), next.row(c).begin());
    }
    double shift = 0.0;
    for (int c = 0; c < k; ++c) {
      if (sizes[c] == 0) {  // keep the old centroid; nothing is assigned to it
        const auto old = out.centroids.row(c);
        std::copy(old.begin(), old.end(), next.row(c).begin());
        continue;
      }
      shift = std::max(shift, std::sqrt(internal::SquaredDistance(
                                  next.row(c), out.centroids.row(c))));
    }
    out.centroids = std::move(next);
    if (shift < options.tolerance) {
      out.converged = true;
      out.wcss_history.push_back(assign());
      break;
    }
  }
  std::fill(sizes.begin(), sizes.end(), 0);
  for (int32_t l : labels) ++sizes[l];
  out.k_effective = static_cast<int32_t>(
      std::count_if(sizes.begin(), sizes.end(), [](int64_t s) { return s > 0; }));
  out.degenerate = out.k_effective < k;
  out.assignment.labels = std::move(labels);
  out.assignment.k = k;
  out.assignment.seed = seed;
  return out;
}

inline KMeansResult KMeans(const EmbeddingMatrix& embedding, int k,
                           uint64_t seed, const KMeansOptions& options = {}) {
  KMeansResult out = KMeans(embedding.vectors, k, seed, options);
  out.assignment.method_tag = embedding.method_tag;
  return out;
}

// Normalized mutual information with arithmetic-mean normalization.
inline double NormalizedMutualInformation(std::span<const int32_t> a,
                                          std::span<const int32_t> b) {
  if (a.size() != b.size()) throw InvalidArgument("label vectors differ in length");
  if (a.empty()) throw InvalidArgument("empty label vectors");
  const double n = static_cast<double>(a.size());
  std::map<int32_t, double> ca, cb;
  std::map<std::pair<int32_t, int32_t>, double> joint;
  for (size_t i = 0; i < a.size(); ++i) {
    ca[a[i]] += 1.0;
    cb[b[i]] += 1.0;
    joint[{a[i], b[i]}] += 1.0;
  }
  const auto entropy = [n](const std::map<int32_t, double>& counts) {
    double h = 0.0;
    for (const auto& [label, c] : counts) h -= (c / n) * std::log(c / n);
    return h;
  };
  const double ha = entropy(ca), hb = entropy(cb);
  if (ha == 0.0 && hb == 0.0) return 1.0;
  if (ha == 0.0 || hb == 0.0) return 0.0;
  double mi = 0.0;
  for (const auto& [pair, c] : joint) {
    mi += (c / n) * std::log(c * n / (ca[pair.first] * cb[pair.second]));
  }
  return std::clamp(2.0 * mi / (ha + hb), 0.0, 1.0);
}

struct SilhouetteOptions {
  int64_t sample_cap = 20000;
  uint64_t seed = 0;
  int threads = 1;
};

struct SilhouetteResult {
  double score = 0.0;
  bool sampled = false;
  int64_t evaluated = 0;  // nodes in the (possibly sampled) evaluation set
};

// Mean silhouette with Euclidean distances between rows of `features`.
// Members of singleton clusters score 0. Above sample_cap rows a seeded
// uniform sample of sample_cap rows is scored against itself.
inline SilhouetteResult Silhouette(std::span<const int32_t> labels,
                                   const DenseMatrix& features,
                                   const SilhouetteOptions& options = {}) {
  const int64_t n = features.rows();
  if (static_cast<int64_t>(labels.size()) != n) {
    throw InvalidArgument("labels and feature rows are not aligned");
  }
  if (options.sample_cap < 2) throw InvalidArgument("sample_cap must be >= 2");
  SilhouetteResult out;
  std::vector<int64_t> rows(n);
  std::iota(rows.begin(), rows.end(), 0);
  if (n > options.sample_cap) {
    RandomEngine rng(options.seed);
    for (int64_t i = 0; i < options.sample_cap; ++i) {
      const int64_t j = i + static_cast<int64_t>(UniformIndex(rng, n - i));
      std::swap(rows[i], rows[j]);
    }
    rows.resize(options.sample_cap);
    std::sort(rows.begin(), rows.end());
    out.sampled = true;
  }
  const int64_t m = static_cast<int64_t>(rows.size());
  std::map<int32_t, int32_t> dense_id;
  for (int64_t r : rows) {
    if (labels[r] < 0) throw InvalidArgument("negative cluster label");
    dense_id.emplace(labels[r], 0);
  }
  if (dense_id.size() < 2) {
    throw InvalidArgument("silhouette needs at least two non-empty clusters");
  }
  int32_t next_id = 0;
  for (auto& [label, id] : dense_id) id = next_id++;
  const int32_t k = next_id;
  std::vector<int32_t> cluster(m);
  std::vector<int64_t> size(k, 0);
  for (int64_t i = 0; i < m; ++i) {
    cluster[i] = dense_id[labels[rows[i]]];
    ++size[cluster[i]];
  }
  std::vector<double> s(m, 0.0);
  ParallelForChunks(m, options.threads, [&](int64_t begin, int64_t end, int) {
    std::vector<double> sum(k);
    for (int64_t i = begin; i < end; ++i) {
      if (size[cluster[i]] == 1) continue;
      std::fill(sum.begin(), sum.end(), 0.0);
      const auto xi = features.row(rows[i]);
      for (int64_t j = 0; j < m; ++j) {
        if (j == i) continue;
        sum[cluster[j]] += std::sqrt(internal::SquaredDistance(xi, features.row(rows[j])));
      }
      const double a = sum[cluster[i]] / static_cast<double>(size[cluster[i]] - 1);
      double b = std::numeric_limits<double>::infinity();
      for (int32_t c = 0; c < k; ++c) {
        if (c != cluster[i]) b = std::min(b, sum[c] / static_cast<double>(size[c]));
      }
      const double denom = std::max(a, b);
      s[i] = denom > 0.0 ? (b - a) / denom : 0.0;
    }
  });
  out.score = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(m);
  out.evaluated = m;
  return out;
}

struct SweepRow {
  std::string method;
  int k = 0;
  double silhouette = 0.0;
  bool sampled = false;
};

struct SweepOptions {
  int k_min = 2;
  int k_max = 19;
  KMeansOptions kmeans;
  SilhouetteOptions silhouette;  // seed is overridden by the sweep seed
};

// Every (embedding, k) pair is clustered with the same seed, so a single
// clustering can be reproduced later from (embedding, k, seed) alone.
inline std::vector<SweepRow> SilhouetteSweep(
    std::span<const EmbeddingMatrix> embeddings,
    const DenseMatrix& orbit_features, uint64_t seed,
    const SweepOptions& options = {}) {
  if (embeddings.empty()) throw InvalidArgument("no embeddings to sweep");
  if (options.k_min < 2 || options.k_max < options.k_min) {
    throw InvalidArgument("invalid k range [" + std::to_string(options.k_min) +
                          ", " + std::to_string(options.k_max) + "]");
  }
  SilhouetteOptions sil = options.silhouette;
  sil.seed = seed;
  std::vector<SweepRow> rows;
  for (const auto& embedding : embeddings) {
    if (embedding.node_count() != orbit_features.rows()) {
      throw InvalidArgument(embedding.method_tag +
                            " embedding is not aligned with the orbit table");
    }
    for (int k = options.k_min; k <= options.k_max; ++k) {
      const KMeansResult fit = KMeans(embedding, k, seed, options.kmeans);
      const SilhouetteResult score =
          Silhouette(fit.assignment.labels, orbit_features, sil);
      rows.push_back({embedding.method_tag, k, score.score, score.sampled});
    }
  }
  return rows;
}

inline void WriteSweepCsv(std::span<const SweepRow> rows, std::ostream& out) {
  out << "method,k,silhouette,sampled\n";
  for (const auto& r : rows) {
    out << EscapeCsvField(r.method) << ',' << r.k << ','
        << FormatDouble(r.silhouette) << ',' << (r.sampled ? "true" : "false")
        << '\n';
  }
}

inline void WriteRolesCsv(const RoleAssignment& roles, const NodeTable& nodes,
                          std::ostream& out) {
  out << "id,role\n";
  for (size_t v = 0; v < roles.labels.size(); ++v) {
    out << EscapeCsvField(nodes.id(static_cast<NodeId>(v))) << ','
        << roles.labels[v] << '\n';
  }
}

struct RoleTable {
  std::vector<std::string> ids;  // file order
  std::vector<int32_t> labels;
};

inline RoleTable ReadRolesCsv(std::istream& in) {
  RoleTable table;
  std::string line;
  int64_t line_number = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_number;
    const auto body = Trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = SplitCsvLine(body, line_number);
    if (!header_seen) {
      if (fields.size() != 2 || fields[0] != "id" || fields[1] != "role") {
        throw ParseError("role table header must be id,role", line_number);
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 2) throw ParseError("role row needs 2 cells", line_number);
    const auto role = ParseInt(fields[1]);
    if (!role || *role < 0 || *role > std::numeric_limits<int32_t>::max()) {
      throw ParseError("role must be a non-negative integer", line_number);
    }
    table.ids.push_back(fields[0]);
    table.labels.push_back(static_cast<int32_t>(*role));
  }
  if (!header_seen) throw ParseError("role table is empty", line_number);
  return table;
}

// Reorders a role table to the node order of `nodes`.
inline RoleAssignment AlignRoles(const RoleTable& table, const NodeTable& nodes,
                                 std::string_view what) {
  const auto row_of = AlignIds(table.ids, nodes, what);
  RoleAssignment out;
  out.labels.resize(row_of.size());
  for (size_t v = 0; v < row_of.size(); ++v) {
    out.labels[v] = table.labels[row_of[v]];
    out.k = std::max(out.k, out.labels[v] + 1);
  }
  return out;
}

}  // namespace rolegraph

#endif  // ROLEGRAPH_CLUSTERING_H_
