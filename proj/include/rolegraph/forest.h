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

// Random forest classifier on dense real features.

#ifndef ROLEGRAPH_FOREST_H_
#define ROLEGRAPH_FOREST_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rolegraph/errors.h"
#include "rolegraph/matrix.h"
#include "rolegraph/parallel.h"
#include "rolegraph/random.h"

namespace rolegraph {

struct ForestOptions {
  int trees = 200;
  int min_leaf = 5;
  int max_depth = 0;               // 0: unlimited
  int features_per_split = 0;      // 0: floor(sqrt(feature count))
  double holdout_fraction = 0.2;
  int threads = 1;
};

// Leaf probabilities are stored in units of 2^-32 so that summing over trees
// is exact and therefore independent of tree order.
inline constexpr double kProbabilityUnit = 4294967296.0;

class DecisionTree {
 public:
  struct Node {
    int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int32_t left = -1;     // x[feature] <= threshold
    int32_t right = -1;
    int64_t leaf_offset = -1;
  };

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<int64_t>& leaf_values() const { return leaf_values_; }

  // Adds this tree's fixed-point class probabilities for `x` into `acc`.
  void Accumulate(std::span<const double> x, std::span<int64_t> acc) const {
    int32_t at = 0;
    while (nodes_[at].feature >= 0) {
      const Node& n = nodes_[at];
      at = x[n.feature] <= n.threshold ? n.left : n.right;
    }
    const int64_t* leaf = leaf_values_.data() + nodes_[at].leaf_offset;
    for (size_t c = 0; c < acc.size(); ++c) acc[c] += leaf[c];
  }

  bool UsesFeature(int32_t feature) const {
    return std::any_of(nodes_.begin(), nodes_.end(),
                       [feature](const Node& n) { return n.feature == feature; });
  }

 private:
  friend class TreeBuilder;
  std::vector<Node> nodes_;
  std::vector<int64_t> leaf_values_;
};

class TreeBuilder {
 public:
  TreeBuilder(const DenseMatrix& x, std::span<const int32_t> y,
              int num_classes, const ForestOptions& options, RandomEngine& rng)
      : x_(x), y_(y), classes_(num_classes), options_(options), rng_(rng) {
    const int f = static_cast<int>(x.cols());
    mtry_ = options.features_per_split > 0
                ? std::min(options.features_per_split, f)
                : std::max(1, static_cast<int>(std::sqrt(static_cast<double>(f))));
    feature_order_.resize(f);
    std::iota(feature_order_.begin(), feature_order_.end(), 0);
  }

  DecisionTree Build(std::vector<int64_t> samples) {
    samples_ = std::move(samples);
    tree_ = DecisionTree();
    Grow(0, static_cast<int64_t>(samples_.size()), 0);
    return std::move(tree_);
  }

 private:
  struct Split {
    int32_t feature = -1;
    double threshold = 0.0;
    double impurity = 0.0;  // weighted child Gini, times node size
  };

  int32_t Grow(int64_t begin, int64_t end, int depth) {
    const int32_t id = static_cast<int32_t>(tree_.nodes_.size());
    tree_.nodes_.emplace_back();
    std::vector<int64_t> counts(classes_, 0);
    for (int64_t i = begin; i < end; ++i) ++counts[y_[samples_[i]]];
    const int64_t size = end - begin;
    const bool pure =
        std::count_if(counts.begin(), counts.end(),
                      [](int64_t c) { return c > 0; }) <= 1;
    const bool depth_capped = options_.max_depth > 0 && depth >= options_.max_depth;
    Split split;
    if (!pure && !depth_capped && size >= 2 * options_.min_leaf) {
      split = BestSplit(begin, end, counts);
    }
    if (split.feature < 0) {
      tree_.nodes_[id].leaf_offset = static_cast<int64_t>(tree_.leaf_values_.size());
      for (int c = 0; c < classes_; ++c) {
        tree_.leaf_values_.push_back(std::llround(
            static_cast<double>(counts[c]) / static_cast<double>(size) *
            kProbabilityUnit));
      }
      return id;
    }
    const auto mid = std::stable_partition(
        samples_.begin() + begin, samples_.begin() + end, [&](int64_t s) {
          return x_(s, split.feature) <= split.threshold;
        });
    const int64_t cut = mid - samples_.begin();
    const int32_t left = Grow(begin, cut, depth + 1);
    const int32_t right = Grow(cut, end, depth + 1);
    auto& node = tree_.nodes_[id];
    node.feature = split.feature;
    node.threshold = split.threshold;
    node.left = left;
    node.right = right;
    return id;
  }

  // Draws features in random order until mtry of them vary within the node,
  // and keeps the lowest-impurity split respecting min_leaf.
  Split BestSplit(int64_t begin, int64_t end,
                  const std::vector<int64_t>& totals) {
    const int64_t size = end - begin;
    Shuffle(std::span<int32_t>(feature_order_), rng_);
    Split best;
    double best_score = std::numeric_limits<double>::infinity();
    int visited = 0;
    std::vector<std::pair<double, int32_t>> column(size);
    std::vector<int64_t> left(classes_);
    for (int32_t f : feature_order_) {
      if (visited >= mtry_) break;
      for (int64_t i = 0; i < size; ++i) {
        const int64_t s = samples_[begin + i];
        column[i] = {x_(s, f), y_[s]};
      }
      std::sort(column.begin(), column.end());
      if (column.front().first == column.back().first) continue;
      ++visited;
      std::fill(left.begin(), left.end(), 0);
      double left_sq = 0.0;
      double right_sq = 0.0;
      for (int c = 0; c < classes_; ++c) {
        right_sq += static_cast<double>(totals[c]) * static_cast<double>(totals[c]);
      }
      for (int64_t i = 0; i + 1 < size; ++i) {
        const int32_t c = column[i].second;
        const double l = static_cast<double>(left[c]);
        const double r = static_cast<double>(totals[c] - left[c]);
        left_sq += 2.0 * l + 1.0;
        right_sq -= 2.0 * r - 1.0;
        ++left[c];
        const int64_t nl = i + 1, nr = size - nl;
        if (column[i].first == column[i + 1].first) continue;
        if (nl < options_.min_leaf || nr < options_.min_leaf) continue;
        // size * weighted Gini = nl + nr - left_sq / nl - right_sq / nr
        const double score = static_cast<double>(size) -
                             left_sq / static_cast<double>(nl) -
                             right_sq / static_cast<double>(nr);
        if (score < best_score) {
          best_score = score;
          best.feature = f;
          best.threshold = 0.5 * (column[i].first + column[i + 1].first);
          if (best.threshold >= column[i + 1].first) best.threshold = column[i].first;
        }
      }
    }
    best.impurity = best_score;
    return best;
  }

  const DenseMatrix& x_;
  std::span<const int32_t> y_;
  int classes_;
  const ForestOptions& options_;
  RandomEngine& rng_;
  int mtry_ = 1;
  std::vector<int32_t> feature_order_;
  std::vector<int64_t> samples_;
  DecisionTree tree_;
};

struct RandomForest {
  std::vector<DecisionTree> trees;
  std::vector<int32_t> class_labels;     // sorted; class index -> label
  std::vector<std::string> feature_names;
  int64_t training_rows = 0;             // rows of the matrix trained on
  std::vector<int64_t> holdout_rows;     // sorted row indices held out
  double holdout_accuracy = 0.0;
  uint64_t seed = 0;
  ForestOptions options;

  int num_classes() const { return static_cast<int>(class_labels.size()); }

  int ClassIndex(int32_t label) const {
    const auto it = std::lower_bound(class_labels.begin(), class_labels.end(), label);
    if (it == class_labels.end() || *it != label) return -1;
    return static_cast<int>(it - class_labels.begin());
  }

  // Summed fixed-point probabilities; divide by trees * kProbabilityUnit.
  void Votes(std::span<const double> x, std::span<int64_t> acc) const {
    std::fill(acc.begin(), acc.end(), 0);
    for (const auto& t : trees) t.Accumulate(x, acc);
  }

  std::vector<double> PredictProba(std::span<const double> x) const {
    std::vector<int64_t> acc(num_classes());
    Votes(x, acc);
    std::vector<double> p(acc.size());
    const double scale = static_cast<double>(trees.size()) * kProbabilityUnit;
    for (size_t c = 0; c < acc.size(); ++c) p[c] = static_cast<double>(acc[c]) / scale;
    return p;
  }

  // Soft vote; the lowest class wins exact ties.
  int PredictIndex(std::span<const double> x) const {
    std::vector<int64_t> acc(num_classes());
    Votes(x, acc);
    return static_cast<int>(std::max_element(acc.begin(), acc.end()) - acc.begin());
  }

  int32_t Predict(std::span<const double> x) const {
    return class_labels[PredictIndex(x)];
  }

  // Fraction of `rows` whose label is predicted correctly.
  double Accuracy(const DenseMatrix& x, std::span<const int32_t> labels,
                  std::span<const int64_t> rows) const {
    if (rows.empty()) return 0.0;
    int64_t hits = 0;
    for (int64_t r : rows) hits += Predict(x.row(r)) == labels[r];
    return static_cast<double>(hits) / static_cast<double>(rows.size());
  }
};

// Trains on a seeded (1 - holdout_fraction) share of the rows, one bootstrap
// sample per tree, and scores accuracy on the held-out rows. Tree t draws
// from its own seed stream, so the result does not depend on thread count.
inline RandomForest TrainRandomForest(const DenseMatrix& x,
                                      std::span<const int32_t> labels,
                                      uint64_t seed,
                                      const ForestOptions& options = {}) {
  const int64_t n = x.rows();
  if (static_cast<int64_t>(labels.size()) != n) {
    throw InvalidArgument("feature rows (" + std::to_string(n) +
                          ") and labels (" + std::to_string(labels.size()) +
                          ") differ in length");
  }
  if (options.trees < 1) throw InvalidArgument("forest needs at least one tree");
  if (options.min_leaf < 1) throw InvalidArgument("min_leaf must be positive");
  if (!(options.holdout_fraction >= 0.0 && options.holdout_fraction < 1.0)) {
    throw InvalidArgument("holdout_fraction must lie in [0, 1)");
  }
  RandomForest forest;
  forest.class_labels.assign(labels.begin(), labels.end());
  std::sort(forest.class_labels.begin(), forest.class_labels.end());
  forest.class_labels.erase(
      std::unique(forest.class_labels.begin(), forest.class_labels.end()),
      forest.class_labels.end());
  if (forest.class_labels.size() < 2) {
    throw InvalidArgument("surrogate training needs at least two classes");
  }
  forest.seed = seed;
  forest.options = options;
  forest.training_rows = n;
  std::vector<int32_t> y(n);
  for (int64_t i = 0; i < n; ++i) y[i] = forest.ClassIndex(labels[i]);

  std::vector<int64_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  RandomEngine split_rng(DeriveSeed(seed, 0));
  Shuffle(std::span<int64_t>(order), split_rng);
  const auto holdout =
      static_cast<int64_t>(std::floor(options.holdout_fraction * static_cast<double>(n)));
  if (options.holdout_fraction > 0.0 && (holdout < 1 || n - holdout < 2)) {
    throw InvalidArgument("too few rows (" + std::to_string(n) +
                          ") for a holdout split");
  }
  forest.holdout_rows.assign(order.begin(), order.begin() + holdout);
  std::vector<int64_t> train(order.begin() + holdout, order.end());
  std::sort(forest.holdout_rows.begin(), forest.holdout_rows.end());
  std::sort(train.begin(), train.end());

  forest.trees.resize(options.trees);
  const int classes = forest.num_classes();
  ParallelFor(options.trees, options.threads, [&](int64_t t) {
    RandomEngine rng(DeriveSeed(seed, static_cast<uint64_t>(t) + 1));
    std::vector<int64_t> bootstrap(train.size());
    for (auto& s : bootstrap) s = train[UniformIndex(rng, train.size())];
    TreeBuilder builder(x, y, classes, options, rng);
    forest.trees[t] = builder.Build(std::move(bootstrap));
  });
  forest.holdout_accuracy = forest.Accuracy(x, labels, forest.holdout_rows);
  return forest;
}

}  // namespace rolegraph

#endif  // ROLEGRAPH_FOREST_H_
