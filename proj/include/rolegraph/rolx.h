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

// RolX role extraction: recursive structural features (ReFeX) factorized by
// non-negative matrix factorization.

#ifndef ROLEGRAPH_ROLX_H_
#define ROLEGRAPH_ROLX_H_

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "rolegraph/embedding.h"
#include "rolegraph/errors.h"
#include "rolegraph/graph.h"
#include "rolegraph/matrix.h"
#include "rolegraph/random.h"

namespace rolegraph {

struct RefexOptions {
  int depth = 2;
  double prune_threshold = 0.99;  // absolute Pearson correlation
};

struct RefexFeatureMatrix {
  DenseMatrix features;            // N x f, non-negative
  std::vector<std::string> names;  // per column
  int generation = 0;              // recursion depth actually reached
};

namespace internal {

// True when column b carries no information beyond column a: both constant,
// or their absolute correlation exceeds the threshold.
inline bool NearDuplicate(const std::vector<double>& a,
                          const std::vector<double>& b, double threshold) {
  const size_t n = a.size();
  double mean_a = 0.0, mean_b = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= static_cast<double>(n);
  mean_b /= static_cast<double>(n);
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double da = a[i] - mean_a, db = b[i] - mean_b;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  const double scale_a = std::max(1.0, std::abs(mean_a));
  const double scale_b = std::max(1.0, std::abs(mean_b));
  const bool const_a = saa <= 1e-24 * scale_a * scale_a * static_cast<double>(n);
  const bool const_b = sbb <= 1e-24 * scale_b * scale_b * static_cast<double>(n);
  if (const_a || const_b) return const_a && const_b;
  return std::abs(sab) / std::sqrt(saa * sbb) > threshold;
}

}  // namespace internal

// Base columns: degree, edges inside the egonet, edges leaving the egonet.
// Each generation appends the neighbor mean and sum of every column retained
// in the previous generation; a new column is kept only if it is not a near
// duplicate of a column already kept. Recursion stops early when a whole
// generation is pruned.
inline RefexFeatureMatrix RefexFeatures(const Graph& graph,
                                        const RefexOptions& options = {}) {
  if (options.depth < 0) throw InvalidArgument("negative ReFeX depth");
  const int64_t n = graph.node_count();
  std::vector<std::vector<double>> columns;
  std::vector<std::string> names;

  std::vector<double> degree(n), ego_internal(n), ego_boundary(n);
  std::vector<uint8_t> in_ego(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    const auto nbrs = graph.neighbors(v);
    in_ego[v] = 1;
    for (NodeId u : nbrs) in_ego[u] = 1;
    int64_t inside_twice = 2 * static_cast<int64_t>(nbrs.size());
    int64_t degree_sum = graph.degree(v);
    for (NodeId u : nbrs) {
      degree_sum += graph.degree(u);
      for (NodeId w : graph.neighbors(u)) {
        if (w != v && in_ego[w]) ++inside_twice;
      }
    }
    in_ego[v] = 0;
    for (NodeId u : nbrs) in_ego[u] = 0;
    degree[v] = static_cast<double>(nbrs.size());
    ego_internal[v] = static_cast<double>(inside_twice / 2);
    ego_boundary[v] = static_cast<double>(degree_sum - inside_twice);
  }
  columns = {degree, ego_internal, ego_boundary};
  names = {"degree", "ego_internal", "ego_boundary"};

  std::vector<size_t> latest = {0, 1, 2};
  int generation = 0;
  for (int g = 1; g <= options.depth && !latest.empty(); ++g) {
    std::vector<size_t> added;
    for (size_t c : latest) {
      std::vector<double> mean(n, 0.0), sum(n, 0.0);
      for (NodeId v = 0; v < n; ++v) {
        for (NodeId u : graph.neighbors(v)) sum[v] += columns[c][u];
        if (graph.degree(v) > 0) mean[v] = sum[v] / graph.degree(v);
      }
      for (int which = 0; which < 2; ++which) {
        auto& candidate = which == 0 ? mean : sum;
        bool duplicate = false;
        for (const auto& kept : columns) {
          if (internal::NearDuplicate(kept, candidate,
                                      options.prune_threshold)) {
            duplicate = true;
            break;
          }
        }
        if (duplicate) continue;
        names.push_back((which == 0 ? "mean(" : "sum(") + names[c] + ")");
        columns.push_back(std::move(candidate));
        added.push_back(columns.size() - 1);
      }
    }
    if (added.empty()) break;
    generation = g;
    latest = std::move(added);
  }

  RefexFeatureMatrix out;
  out.features = DenseMatrix(n, static_cast<int64_t>(columns.size()));
  for (size_t c = 0; c < columns.size(); ++c) {
    for (int64_t v = 0; v < n; ++v) out.features(v, c) = columns[c][v];
  }
  out.names = std::move(names);
  out.generation = generation;
  return out;
}

struct NmfOptions {
  int max_iterations = 500;
  double tolerance = 1e-6;  // relative improvement of the residual norm
  uint64_t seed = 0;
};

struct NmfResult {
  DenseMatrix w;  // N x rank
  DenseMatrix h;  // rank x f
  std::vector<double> error_history;  // Frobenius residual, initial first
  int iterations = 0;
  bool converged = false;
};

// Multiplicative-update NMF minimizing ||F - W H||_F. Each row of W is
// initialized from a stream keyed by the row's quantized contents, so
// identical rows of F stay identical and relabeling rows permutes the result.
inline NmfResult FactorizeNonNegative(const DenseMatrix& f, int rank,
                                      const NmfOptions& options = {}) {
  const int64_t n = f.rows(), m = f.cols();
  if (rank < 1) throw InvalidArgument("NMF rank must be positive");
  for (double x : f.data()) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw InvalidArgument("NMF input must be finite and non-negative");
    }
  }
  Eigen::MatrixXd fm(n, m);
  for (int64_t r = 0; r < n; ++r) {
    for (int64_t c = 0; c < m; ++c) fm(r, c) = f(r, c);
  }
  const double mean = n * m > 0 ? fm.mean() : 0.0;
  const double init_scale = std::sqrt(mean / rank);
  Eigen::MatrixXd w(n, rank), h(rank, m);
  for (int64_t r = 0; r < n; ++r) {
    uint64_t key = 0x5851F42D4C957F2DULL;
    for (int64_t c = 0; c < m; ++c) {
      // Quantized so that summation-order noise does not change the key.
      const double q = std::nearbyint(fm(r, c) * 0x1p36);
      key = SplitMix64(key ^ std::bit_cast<uint64_t>(q));
    }
    RandomEngine rng(DeriveSeed(options.seed, key));
    for (int k = 0; k < rank; ++k) w(r, k) = init_scale * UniformPositiveReal(rng);
  }
  RandomEngine h_rng(DeriveSeed(options.seed, 0x48));
  for (int k = 0; k < rank; ++k) {
    for (int64_t c = 0; c < m; ++c) h(k, c) = init_scale * UniformPositiveReal(h_rng);
  }

  const auto multiply_update = [](Eigen::MatrixXd& x, const Eigen::MatrixXd& num,
                                  const Eigen::MatrixXd& den) {
    for (int64_t j = 0; j < x.cols(); ++j) {
      for (int64_t i = 0; i < x.rows(); ++i) {
        if (den(i, j) > 0.0) x(i, j) *= num(i, j) / den(i, j);
      }
    }
  };

  NmfResult out;
  double error = (fm - w * h).norm();
  out.error_history.push_back(error);
  while (out.iterations < options.max_iterations) {
    if (error == 0.0) {
      out.converged = true;
      break;
    }
    multiply_update(h, w.transpose() * fm, (w.transpose() * w) * h);
    multiply_update(w, fm * h.transpose(), w * (h * h.transpose()));
    ++out.iterations;
    const double next = (fm - w * h).norm();
    out.error_history.push_back(next);
    const double improvement = (error - next) / error;
    error = next;
    if (improvement < options.tolerance) {
      out.converged = true;
      break;
    }
  }
  out.w = DenseMatrix(n, rank);
  out.h = DenseMatrix(rank, m);
  for (int64_t r = 0; r < n; ++r) {
    for (int k = 0; k < rank; ++k) out.w(r, k) = w(r, k);
  }
  for (int k = 0; k < rank; ++k) {
    for (int64_t c = 0; c < m; ++c) out.h(k, c) = h(k, c);
  }
  return out;
}

struct RolxOptions {
  int rank = 16;
  RefexOptions refex;
  NmfOptions nmf;
};

struct RolxResult {
  EmbeddingMatrix embedding;  // W with unit-L1 rows
  RefexFeatureMatrix features;
  NmfResult factorization;    // on max-scaled features
  bool warning = false;       // NMF hit max_iterations before converging
};

inline RolxResult RolxEmbed(const Graph& graph, const RolxOptions& options = {}) {
  if (options.rank < 2) throw InvalidArgument("RolX rank must be at least 2");
  RolxResult out;
  out.features = RefexFeatures(graph, options.refex);
  const DenseMatrix& raw = out.features.features;
  if (options.rank > raw.cols()) {
    throw InvalidArgument("RolX rank " + std::to_string(options.rank) +
                          " exceeds the " + std::to_string(raw.cols()) +
                          " structural features available");
  }
  DenseMatrix scaled = raw;
  for (int64_t c = 0; c < raw.cols(); ++c) {
    double peak = 0.0;
    for (int64_t r = 0; r < raw.rows(); ++r) peak = std::max(peak, raw(r, c));
    if (peak > 0.0) {
      for (int64_t r = 0; r < raw.rows(); ++r) scaled(r, c) /= peak;
    }
  }
  out.factorization = FactorizeNonNegative(scaled, options.rank, options.nmf);
  out.warning = !out.factorization.converged;
  out.embedding.method_tag = "rolx";
  out.embedding.vectors = out.factorization.w;
  for (int64_t r = 0; r < out.embedding.vectors.rows(); ++r) {
    auto row = out.embedding.vectors.row(r);
    double total = 0.0;
    for (double x : row) total += x;
    if (total > 0.0) {
      for (double& x : row) x /= total;
    }
  }
  return out;
}

}  // namespace rolegraph

#endif  // ROLEGRAPH_ROLX_H_
