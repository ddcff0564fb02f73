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

// Global explanations of a surrogate forest: permutation importance and
// per-class accumulated local effect / partial dependence curves.

#ifndef ROLEGRAPH_EXPLAIN_H_
#define ROLEGRAPH_EXPLAIN_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "rolegraph/csv.h"
#include "rolegraph/errors.h"
#include "rolegraph/forest.h"
#include "rolegraph/matrix.h"
#include "rolegraph/orbits.h"
#include "rolegraph/parallel.h"
#include "rolegraph/random.h"

namespace rolegraph {

// Surrogate on log-transformed orbit counts, features named o0..o72.
inline RandomForest TrainSurrogate(const LogOrbitMatrix& features,
                                   std::span<const int32_t> roles,
                                   uint64_t seed,
                                   const ForestOptions& options = {}) {
  RandomForest forest = TrainRandomForest(features, roles, seed, options);
  for (int64_t c = 0; c < features.cols(); ++c) {
    forest.feature_names.push_back(c < kOrbitCount ? OrbitName(static_cast<int>(c))
                                                   : "f" + std::to_string(c));
  }
  return forest;
}

struct SubpopulationFit {
  RandomForest forest;
  std::vector<int64_t> rows;      // rows of the full matrix that were kept
  DenseMatrix features;           // those rows
  std::vector<int32_t> roles;     // their labels
};

// Trains on the rows whose role is in `keep_roles`.
inline SubpopulationFit RefitOnSubpopulation(const LogOrbitMatrix& features,
                                             std::span<const int32_t> roles,
                                             const std::set<int32_t>& keep_roles,
                                             uint64_t seed,
                                             const ForestOptions& options = {}) {
  if (static_cast<int64_t>(roles.size()) != features.rows()) {
    throw InvalidArgument("features and roles differ in length");
  }
  SubpopulationFit out;
  std::set<int32_t> populated;
  for (size_t i = 0; i < roles.size(); ++i) {
    if (keep_roles.contains(roles[i])) {
      out.rows.push_back(static_cast<int64_t>(i));
      out.roles.push_back(roles[i]);
      populated.insert(roles[i]);
    }
  }
  if (populated.size() < 2) {
    throw InvalidArgument("sub-population refit needs at least two populated "
                          "roles, found " + std::to_string(populated.size()));
  }
  out.features = features.SelectRows(out.rows);
  out.forest = TrainSurrogate(out.features, out.roles, seed, options);
  return out;
}

struct ImportanceRow {
  int feature = 0;
  double mean = 0.0;
  double std = 0.0;  // population standard deviation over repeats
};

struct ImportanceReport {
  std::vector<ImportanceRow> rows;  // descending mean, then ascending feature
  double baseline_accuracy = 0.0;
  int repeats = 0;
  std::string evaluated_on = "holdout";
};

// Drop in holdout accuracy when one column is shuffled among the holdout
// rows. Repeat r of feature j uses seed stream (j, r).
inline ImportanceReport PermutationImportance(const RandomForest& forest,
                                              const DenseMatrix& features,
                                              std::span<const int32_t> roles,
                                              int repeats, uint64_t seed,
                                              int threads = 1) {
  if (forest.trees.empty()) throw Error("surrogate model is not trained");
  if (features.rows() != forest.training_rows ||
      static_cast<int64_t>(roles.size()) != features.rows()) {
    throw InvalidArgument("features and roles must be the matrix the model "
                          "was trained on");
  }
  if (repeats < 1) throw InvalidArgument("repeats must be >= 1");
  if (forest.holdout_rows.empty()) {
    throw InvalidArgument("model has no holdout rows to evaluate on");
  }
  const auto& rows = forest.holdout_rows;
  const int64_t m = static_cast<int64_t>(rows.size());
  const int64_t f = features.cols();
  const DenseMatrix held = features.SelectRows(rows);
  std::vector<int32_t> truth(m);
  for (int64_t i = 0; i < m; ++i) truth[i] = roles[rows[i]];
  std::vector<int64_t> all(m);
  for (int64_t i = 0; i < m; ++i) all[i] = i;

  ImportanceReport report;
  report.repeats = repeats;
  report.baseline_accuracy = forest.Accuracy(held, truth, all);
  report.rows.resize(f);
  ParallelForChunks(f, threads, [&](int64_t begin, int64_t end, int) {
    DenseMatrix work = held;
    std::vector<double> column(m);
    std::vector<double> drops(repeats);
    for (int64_t j = begin; j < end; ++j) {
      for (int64_t i = 0; i < m; ++i) column[i] = held(i, j);
      for (int r = 0; r < repeats; ++r) {
        RandomEngine rng(DeriveSeed(DeriveSeed(seed, j), r));
        std::vector<double> shuffled = column;
        Shuffle(std::span<double>(shuffled), rng);
        for (int64_t i = 0; i < m; ++i) work(i, j) = shuffled[i];
        drops[r] = report.baseline_accuracy - forest.Accuracy(work, truth, all);
      }
      for (int64_t i = 0; i < m; ++i) work(i, j) = column[i];
      double mean = 0.0;
      for (double d : drops) mean += d;
      mean /= repeats;
      double var = 0.0;
      for (double d : drops) var += (d - mean) * (d - mean);
      var /= repeats;
      report.rows[j] = {static_cast<int>(j), mean, std::sqrt(var)};
    }
  });
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const ImportanceRow& a, const ImportanceRow& b) {
                     return a.mean > b.mean;
                   });
  return report;
}

// "<orbit> (<mean> ±<std>)" with three and four decimals.
inline std::string FormatImportance(const ImportanceRow& row) {
  const auto clean = [](double x) { return x == 0.0 ? 0.0 : x; };
  return fmt::format("{} ({:.3f} ±{:.4f})", row.feature, clean(row.mean),
                     clean(row.std));
}

// Top-m listing, one formatted entry per line.
inline void WriteImportanceListing(const ImportanceReport& report, int top,
                                   std::ostream& out) {
  const int shown = std::min<int>(top, static_cast<int>(report.rows.size()));
  for (int i = 0; i < shown; ++i) out << FormatImportance(report.rows[i]) << '\n';
}

inline void WriteImportanceCsv(const ImportanceReport& report,
                               std::ostream& out) {
  out << "# evaluated_on=" << report.evaluated_on
      << " repeats=" << report.repeats
      << " baseline_accuracy=" << FormatDouble(report.baseline_accuracy) << '\n';
  out << "rank,orbit,mean,std\n";
  for (size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    out << i + 1 << ',' << r.feature << ',' << FormatDouble(r.mean) << ','
        << FormatDouble(r.std) << '\n';
  }
}

enum class EffectKind { kAle, kPdp };

inline const char* EffectKindName(EffectKind kind) {
  return kind == EffectKind::kAle ? "ALE" : "PDP";
}

struct EffectCurve {
  int feature = 0;
  int32_t class_label = 0;
  EffectKind kind = EffectKind::kAle;
  std::vector<double> grid;          // strictly ascending
  std::vector<double> values;        // one per grid point
  std::vector<int64_t> bin_counts;   // rows in (grid[k-1], grid[k]], k >= 1
};

// Empirical quantiles at k / bins (linear interpolation between order
// statistics), with repeated edges merged.
inline std::vector<double> QuantileGrid(std::vector<double> values, int bins) {
  if (values.empty()) throw InvalidArgument("no values to grid");
  std::sort(values.begin(), values.end());
  const double last = static_cast<double>(values.size() - 1);
  std::vector<double> grid;
  for (int k = 0; k <= bins; ++k) {
    const double pos = last * k / bins;
    const auto lo = static_cast<size_t>(std::floor(pos));
    const size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    double q = values[lo] + frac * (values[hi] - values[lo]);
    if (k == bins) q = values.back();
    if (grid.empty() || q > grid.back()) grid.push_back(q);
  }
  return grid;
}

// One curve per class for column `feature`, computed over all rows of
// `features`. ALE values are centered so that the population-weighted mean
// of bin midpoint effects is zero; PDP values are raw mean probabilities.
inline std::vector<EffectCurve> EffectCurves(const RandomForest& forest,
                                             const DenseMatrix& features,
                                             int feature, EffectKind kind,
                                             int bins = 32, int threads = 1) {
  if (forest.trees.empty()) throw Error("surrogate model is not trained");
  if (feature < 0 || feature >= features.cols()) {
    throw InvalidArgument("feature index " + std::to_string(feature) +
                          " out of range");
  }
  if (bins < 2) throw InvalidArgument("effect curves need at least 2 bins");
  const std::string name = feature < static_cast<int>(forest.feature_names.size())
                               ? forest.feature_names[feature]
                               : "column " + std::to_string(feature);
  const int64_t n = features.rows();
  const std::vector<double> grid = QuantileGrid(features.Column(feature), bins);
  if (grid.size() < 2) {
    throw InvalidArgument("feature " + name +
                          " is constant; its effect curve has no range");
  }
  const int classes = forest.num_classes();
  const int64_t points = static_cast<int64_t>(grid.size());
  const int64_t num_bins = points - 1;
  // Fixed-point accumulators, per chunk then reduced: exact, so independent
  // of how rows are split among workers.
  const int workers = static_cast<int>(std::clamp<int64_t>(threads, 1, std::max<int64_t>(n, 1)));
  std::vector<std::vector<int64_t>> partial(
      workers, std::vector<int64_t>(points * classes, 0));
  std::vector<int64_t> counts(num_bins, 0);
  std::vector<int32_t> bin_of(n);
  for (int64_t i = 0; i < n; ++i) {
    const double x = features(i, feature);
    const auto it = std::lower_bound(grid.begin() + 1, grid.end(), x);
    bin_of[i] = static_cast<int32_t>(std::min<int64_t>(it - grid.begin(), num_bins)) - 1;
    ++counts[bin_of[i]];
  }
  ParallelForChunks(n, workers, [&](int64_t begin, int64_t end, int w) {
    std::vector<double> row(features.cols());
    std::vector<int64_t> hi(classes), lo(classes);
    auto& acc = partial[w];
    for (int64_t i = begin; i < end; ++i) {
      const auto src = features.row(i);
      std::copy(src.begin(), src.end(), row.begin());
      if (kind == EffectKind::kAle) {
        const int32_t b = bin_of[i];
        row[feature] = grid[b + 1];
        forest.Votes(row, hi);
        row[feature] = grid[b];
        forest.Votes(row, lo);
        for (int c = 0; c < classes; ++c) acc[b * classes + c] += hi[c] - lo[c];
      } else {
        for (int64_t g = 0; g < points; ++g) {
          row[feature] = grid[g];
          forest.Votes(row, hi);
          for (int c = 0; c < classes; ++c) acc[g * classes + c] += hi[c];
        }
      }
    }
  });
  std::vector<int64_t> total(points * classes, 0);
  for (const auto& p : partial) {
    for (size_t i = 0; i < p.size(); ++i) total[i] += p[i];
  }
  const double unit = static_cast<double>(forest.trees.size()) * kProbabilityUnit;
  std::vector<EffectCurve> curves(classes);
  for (int c = 0; c < classes; ++c) {
    EffectCurve& curve = curves[c];
    curve.feature = feature;
    curve.class_label = forest.class_labels[c];
    curve.kind = kind;
    curve.grid = grid;
    curve.bin_counts = counts;
    curve.values.assign(points, 0.0);
    if (kind == EffectKind::kPdp) {
      for (int64_t g = 0; g < points; ++g) {
        curve.values[g] = static_cast<double>(total[g * classes + c]) /
                          (unit * static_cast<double>(n));
      }
      continue;
    }
    for (int64_t b = 0; b < num_bins; ++b) {
      const double local = counts[b] == 0
                               ? 0.0
                               : static_cast<double>(total[b * classes + c]) /
                                     (unit * static_cast<double>(counts[b]));
      curve.values[b + 1] = curve.values[b] + local;
    }
    double center = 0.0;
    for (int64_t b = 0; b < num_bins; ++b) {
      center += static_cast<double>(counts[b]) * 0.5 *
                (curve.values[b] + curve.values[b + 1]);
    }
    center /= static_cast<double>(n);
    for (double& v : curve.values) v -= center;
  }
  return curves;
}

// Largest per-node triangle count on the log1p axis used by the surrogate.
inline double Orbit3Threshold(const OrbitMatrix& counts) {
  if (counts.node_count() == 0) return 0.0;
  return std::log1p(static_cast<double>(counts.ColumnMax(3)));
}

inline void WriteEffectCurveCsv(std::span<const EffectCurve> curves,
                                std::optional<double> annotation,
                                std::ostream& out) {
  out << "orbit,class,kind,grid_value,effect\n";
  for (const auto& curve : curves) {
    for (size_t g = 0; g < curve.grid.size(); ++g) {
      out << curve.feature << ',' << curve.class_label << ','
          << EffectKindName(curve.kind) << ',' << FormatDouble(curve.grid[g])
          << ',' << FormatDouble(curve.values[g]) << '\n';
    }
  }
  if (annotation && !curves.empty()) {
    out << curves.front().feature << ",,annotation,"
        << FormatDouble(*annotation) << ",\n";
  }
}

}  // namespace rolegraph

#endif  // ROLEGRAPH_EXPLAIN_H_
