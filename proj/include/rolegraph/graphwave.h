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

// GraphWave: each node is described by the empirical characteristic function
// of its heat-kernel wavelet coefficients, sampled at evenly spaced points.

#ifndef ROLEGRAPH_GRAPHWAVE_H_
#define ROLEGRAPH_GRAPHWAVE_H_

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "rolegraph/embedding.h"
#include "rolegraph/errors.h"
#include "rolegraph/graph.h"
#include "rolegraph/parallel.h"

namespace rolegraph {

enum class HeatKernelMethod {
  kAuto,       // exact up to exact_max_nodes per component, else Chebyshev
  kExact,      // dense Laplacian eigendecomposition
  kChebyshev,  // polynomial approximation of exp(-s L), sparse products only
};

struct GraphWaveOptions {
  std::vector<double> scales = {0.5, 1.5};
  int sample_points = 32;
  double t_max = 100.0;
  int dimension = 128;  // must equal 2 * scales * sample_points
  HeatKernelMethod method = HeatKernelMethod::kAuto;
  int chebyshev_order = 30;
  int64_t exact_max_nodes = 5000;
  int threads = 1;
};

namespace internal {

// Component-local view of the graph.
struct ComponentGraph {
  std::vector<NodeId> nodes;           // local -> global
  std::vector<int64_t> offsets;        // CSR over local ids
  std::vector<int32_t> adjacency;

  int64_t size() const { return static_cast<int64_t>(nodes.size()); }
  int64_t degree(int64_t v) const { return offsets[v + 1] - offsets[v]; }
};

inline ComponentGraph ExtractComponent(const Graph& graph,
                                       const std::vector<NodeId>& members,
                                       std::vector<int32_t>& local_of) {
  ComponentGraph c;
  c.nodes = members;
  for (size_t i = 0; i < members.size(); ++i) {
    local_of[members[i]] = static_cast<int32_t>(i);
  }
  c.offsets.push_back(0);
  for (NodeId v : members) {
    for (NodeId u : graph.neighbors(v)) c.adjacency.push_back(local_of[u]);
    c.offsets.push_back(static_cast<int64_t>(c.adjacency.size()));
  }
  return c;
}

// Writes Re and Im parts of (1/n) sum_m exp(i t psi_m) for every sample t
// into the scale's block of the embedding row.
inline void CharacteristicFunction(const double* psi, int64_t n,
                                   const std::vector<double>& t,
                                   double* re_out, double* im_out) {
  const double inv_n = 1.0 / static_cast<double>(n);
  for (size_t k = 0; k < t.size(); ++k) {
    double re = 0.0, im = 0.0;
    for (int64_t m = 0; m < n; ++m) {
      const double phase = t[k] * psi[m];
      re += std::cos(phase);
      im += std::sin(phase);
    }
    re_out[k] = re * inv_n;
    im_out[k] = im * inv_n;
  }
}

inline void ExactComponent(const ComponentGraph& c,
                           const GraphWaveOptions& options,
                           const std::vector<double>& t, DenseMatrix& out) {
  const int64_t n = c.size();
  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(n, n);
  for (int64_t v = 0; v < n; ++v) {
    laplacian(v, v) = static_cast<double>(c.degree(v));
    for (int64_t e = c.offsets[v]; e < c.offsets[v + 1]; ++e) {
      laplacian(v, c.adjacency[e]) = -1.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
  if (solver.info() != Eigen::Success) {
    throw Error("Laplacian eigendecomposition failed on a component of " +
                std::to_string(n) + " nodes");
  }
  const Eigen::MatrixXd& u = solver.eigenvectors();
  const Eigen::VectorXd lambda = solver.eigenvalues().cwiseMax(0.0);
  const int p = options.sample_points;
  for (size_t s = 0; s < options.scales.size(); ++s) {
    const Eigen::VectorXd heat = (-options.scales[s] * lambda).array().exp();
    const Eigen::MatrixXd psi = u * heat.asDiagonal() * u.transpose();
    ParallelFor(n, options.threads, [&](int64_t j) {
      double* row = out.row(c.nodes[j]).data() + 2 * p * s;
      CharacteristicFunction(psi.col(j).data(), n, t, row, row + p);
    });
  }
}

// Chebyshev coefficients of exp(-scale x) on [0, lambda_max], computed by
// Gauss-Chebyshev quadrature.
inline std::vector<double> HeatChebyshevCoefficients(double scale,
                                                     double lambda_max,
                                                     int order) {
  const int nodes = std::max(64, 4 * (order + 1));
  std::vector<double> coeffs(order + 1, 0.0);
  for (int j = 0; j < nodes; ++j) {
    const double theta = std::numbers::pi * (j + 0.5) / nodes;
    const double x = 0.5 * lambda_max * (std::cos(theta) + 1.0);
    const double f = std::exp(-scale * x);
    for (int k = 0; k <= order; ++k) coeffs[k] += f * std::cos(k * theta);
  }
  for (double& c : coeffs) c *= 2.0 / nodes;
  return coeffs;
}

inline void ChebyshevComponent(const ComponentGraph& c,
                               const GraphWaveOptions& options,
                               const std::vector<double>& t, DenseMatrix& out) {
  const int64_t n = c.size();
  const int order = options.chebyshev_order;
  // max over edges of deg(u) + deg(v) bounds the largest Laplacian eigenvalue.
  double lambda_max = 1.0;
  for (int64_t v = 0; v < n; ++v) {
    for (int64_t e = c.offsets[v]; e < c.offsets[v + 1]; ++e) {
      lambda_max = std::max<double>(
          lambda_max, c.degree(v) + c.degree(c.adjacency[e]));
    }
  }
  const size_t num_scales = options.scales.size();
  std::vector<std::vector<double>> coeffs;
  for (double s : options.scales) {
    coeffs.push_back(HeatChebyshevCoefficients(s, lambda_max, order));
  }
  const int p = options.sample_points;
  const double alpha = 2.0 / lambda_max;
  // y = (alpha L - I) x
  const auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (int64_t v = 0; v < n; ++v) {
      double acc = static_cast<double>(c.degree(v)) * x[v];
      for (int64_t e = c.offsets[v]; e < c.offsets[v + 1]; ++e) {
        acc -= x[c.adjacency[e]];
      }
      y[v] = alpha * acc - x[v];
    }
  };
  ParallelForChunks(n, options.threads, [&](int64_t begin, int64_t end, int) {
    std::vector<double> prev(n), cur(n), next(n);
    std::vector<std::vector<double>> psi(num_scales, std::vector<double>(n));
    for (int64_t j = begin; j < end; ++j) {
      std::fill(prev.begin(), prev.end(), 0.0);
      prev[j] = 1.0;
      apply(prev, cur);
      for (size_t s = 0; s < num_scales; ++s) {
        for (int64_t m = 0; m < n; ++m) {
          psi[s][m] = 0.5 * coeffs[s][0] * prev[m];
          if (order >= 1) psi[s][m] += coeffs[s][1] * cur[m];
        }
      }
      for (int k = 2; k <= order; ++k) {
        apply(cur, next);
        for (int64_t m = 0; m < n; ++m) next[m] = 2.0 * next[m] - prev[m];
        for (size_t s = 0; s < num_scales; ++s) {
          for (int64_t m = 0; m < n; ++m) psi[s][m] += coeffs[s][k] * next[m];
        }
        std::swap(prev, cur);
        std::swap(cur, next);
      }
      for (size_t s = 0; s < num_scales; ++s) {
        double* row = out.row(c.nodes[j]).data() + 2 * p * s;
        CharacteristicFunction(psi[s].data(), n, t, row, row + p);
      }
    }
  });
}

}  // namespace internal

// Each connected component is embedded on its own, with characteristic
// functions normalized by the component size.
inline EmbeddingMatrix GraphWaveEmbed(const Graph& graph,
                                      const GraphWaveOptions& options = {}) {
  if (options.scales.empty()) throw InvalidArgument("no GraphWave scales");
  for (double s : options.scales) {
    if (!(s > 0.0)) throw InvalidArgument("GraphWave scales must be positive");
  }
  if (options.sample_points < 1) {
    throw InvalidArgument("sample_points must be positive");
  }
  const int64_t width =
      2 * static_cast<int64_t>(options.scales.size()) * options.sample_points;
  if (width != options.dimension) {
    throw InvalidArgument(
        "GraphWave dimension " + std::to_string(options.dimension) +
        " does not equal 2 x " + std::to_string(options.scales.size()) +
        " scales x " + std::to_string(options.sample_points) +
        " sample points = " + std::to_string(width));
  }
  if (options.chebyshev_order < 1) {
    throw InvalidArgument("chebyshev_order must be positive");
  }
  std::vector<double> t(options.sample_points, 0.0);
  for (int k = 1; k < options.sample_points; ++k) {
    t[k] = options.t_max * k / (options.sample_points - 1);
  }
  EmbeddingMatrix out;
  out.method_tag = "graphwave";
  out.vectors = DenseMatrix(graph.node_count(), width);
  const Components components = ConnectedComponents(graph);
  std::vector<std::vector<NodeId>> members(components.count);
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    members[components.component[v]].push_back(v);
  }
  std::vector<int32_t> local_of(graph.node_count(), -1);
  for (const auto& m : members) {
    const auto c = internal::ExtractComponent(graph, m, local_of);
    const bool exact =
        options.method == HeatKernelMethod::kExact ||
        (options.method == HeatKernelMethod::kAuto &&
         c.size() <= options.exact_max_nodes);
    if (exact) {
      internal::ExactComponent(c, options, t, out.vectors);
    } else {
      internal::ChebyshevComponent(c, options, t, out.vectors);
    }
  }
  return out;
}

}  // namespace rolegraph

#endif  // ROLEGRAPH_GRAPHWAVE_H_
