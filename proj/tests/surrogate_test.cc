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

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"
#include "rolegraph/explain.h"
#include "rolegraph/forest.h"
#include "rolegraph/orbits.h"
#include "rolegraph/planted.h"
#include "rolegraph/random.h"
#include "test_graphs.h"

namespace rolegraph {
namespace {

using ::rolegraph::testing::Clique;
using ::rolegraph::testing::Cycle;
using ::rolegraph::testing::ErdosRenyi;
using ::rolegraph::testing::IndependentOrbitCounts;

DenseMatrix UniformFeatures(int n, int f, uint64_t seed, double scale = 10.0) {
  RandomEngine rng(seed);
  DenseMatrix x(n, f);
  for (double& v : x.data()) v = scale * UniformReal(rng);
  return x;
}

std::vector<int32_t> ThresholdLabels(const DenseMatrix& x, int feature, double c) {
  std::vector<int32_t> y(x.rows());
  for (int64_t i = 0; i < x.rows(); ++i) y[i] = x(i, feature) > c ? 1 : 0;
  return y;
}

TEST(ForestTest, LearnsSingleFeatureThreshold) {
  const DenseMatrix x = UniformFeatures(1500, 6, 1);
  const auto y = ThresholdLabels(x, 2, 4.0);
  const RandomForest forest = TrainRandomForest(x, y, 3);
  EXPECT_GE(forest.holdout_accuracy, 0.99);
  EXPECT_EQ(forest.holdout_rows.size(), 300u);
  EXPECT_EQ(forest.class_labels, (std::vector<int32_t>{0, 1}));
}

TEST(ForestTest, RandomLabelsScoreChance) {
  const DenseMatrix x = UniformFeatures(3000, 5, 2);
  RandomEngine rng(7);
  std::vector<int32_t> y(3000);
  for (auto& l : y) l = static_cast<int32_t>(UniformIndex(rng, 3));
  ForestOptions options;
  options.trees = 60;
  const RandomForest forest = TrainRandomForest(x, y, 4, options);
  EXPECT_NEAR(forest.holdout_accuracy, 1.0 / 3, 0.05);
}

TEST(ForestTest, RejectsBadInput) {
  const DenseMatrix x = UniformFeatures(20, 2, 3);
  EXPECT_THROW(TrainRandomForest(x, std::vector<int32_t>(20, 1), 0), InvalidArgument);
  EXPECT_THROW(TrainRandomForest(x, std::vector<int32_t>(19, 1), 0), InvalidArgument);
}

TEST(ForestTest, BitStableAcrossRunsAndThreads) {
  const DenseMatrix x = UniformFeatures(400, 4, 5);
  const auto y = ThresholdLabels(x, 0, 5.0);
  ForestOptions threaded;
  threaded.trees = 40;
  ForestOptions serial = threaded;
  threaded.threads = 4;
  const RandomForest a = TrainRandomForest(x, y, 9, serial);
  const RandomForest b = TrainRandomForest(x, y, 9, threaded);
  EXPECT_EQ(a.holdout_rows, b.holdout_rows);
  for (int64_t i = 0; i < x.rows(); ++i) {
    EXPECT_EQ(a.PredictProba(x.row(i)), b.PredictProba(x.row(i)));
  }
}

TEST(ForestTest, PredictionIgnoresTreeOrder) {
  const DenseMatrix x = UniformFeatures(300, 3, 6);
  RandomEngine rng(1);
  std::vector<int32_t> y(300);
  for (auto& l : y) l = static_cast<int32_t>(UniformIndex(rng, 3));
  ForestOptions options;
  options.trees = 25;
  RandomForest forest = TrainRandomForest(x, y, 2, options);
  std::vector<std::vector<double>> before;
  for (int64_t i = 0; i < x.rows(); ++i) before.push_back(forest.PredictProba(x.row(i)));
  std::reverse(forest.trees.begin(), forest.trees.end());
  for (int64_t i = 0; i < x.rows(); ++i) EXPECT_EQ(forest.PredictProba(x.row(i)), before[i]);
}

TEST(ForestTest, TiesGoToLowestClass) {
  // Two identical rows with different labels and min_leaf above the row
  // count: every tree is a single leaf, so probabilities tie when the
  // bootstrap is balanced; in any case the argmax rule must prefer class 0
  // whenever the votes are equal.
  DenseMatrix x(2, 1, 0.0);
  ForestOptions options;
  options.holdout_fraction = 0.0;
  options.min_leaf = 5;
  options.trees = 1;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const RandomForest forest = TrainRandomForest(x, std::vector<int32_t>{4, 8}, seed, options);
    const auto p = forest.PredictProba(x.row(0));
    EXPECT_EQ(forest.Predict(x.row(0)), p[0] >= p[1] ? 4 : 8);
  }
}

TEST(ImportanceTest, OrbitZeroThresholdRanksOrbitZeroFirst) {
  const OrbitMatrix counts = IndependentOrbitCounts(2000, 13);
  const LogOrbitMatrix x = LogTransform(counts);
  std::vector<int32_t> y(x.rows());
  for (int64_t v = 0; v < x.rows(); ++v) y[v] = counts.at(v, 0) > 20;
  const RandomForest forest = TrainSurrogate(x, y, 1);
  EXPECT_GE(forest.holdout_accuracy, 0.99);
  EXPECT_EQ(forest.feature_names[27], "o27");
  const ImportanceReport report = PermutationImportance(forest, x, y, 5, 2);
  EXPECT_EQ(report.rows.front().feature, 0);
  EXPECT_GT(report.rows[0].mean, 5 * std::max(report.rows[1].mean, 0.001));
}

// Degree is recoverable from other orbits (o2 = C(d, 2) on triangle-free
// graphs), so shuffling o0 alone costs nothing: permutation importance
// measures unique, not total, information.
TEST(ImportanceTest, RedundantGraphOrbitsShareCredit) {
  const Graph g = ErdosRenyi(1500, 0.004, 13);
  const LogOrbitMatrix x = LogTransform(CountOrbits(g));
  std::vector<int32_t> y(x.rows());
  for (int64_t v = 0; v < x.rows(); ++v) y[v] = g.degree(static_cast<NodeId>(v)) > 6;
  ForestOptions options;
  options.trees = 50;
  const RandomForest forest = TrainSurrogate(x, y, 1, options);
  EXPECT_GE(forest.holdout_accuracy, 0.99);
  const ImportanceReport report = PermutationImportance(forest, x, y, 3, 2);
  for (const auto& row : report.rows) EXPECT_LT(row.mean, 0.05);
}

TEST(ImportanceTest, ConstantAndUnusedFeaturesScoreExactlyZero) {
  DenseMatrix x = UniformFeatures(600, 4, 8);
  for (int64_t i = 0; i < x.rows(); ++i) x(i, 3) = 1.5;
  const auto y = ThresholdLabels(x, 0, 5.0);
  ForestOptions options;
  options.trees = 30;
  options.features_per_split = 4;  // exhaustive search: only feature 0 is split on
  const RandomForest forest = TrainRandomForest(x, y, 1, options);
  for (const auto& t : forest.trees) {
    EXPECT_FALSE(t.UsesFeature(1));
    EXPECT_FALSE(t.UsesFeature(3));
  }
  const ImportanceReport report = PermutationImportance(forest, x, y, 4, 6);
  for (const auto& row : report.rows) {
    if (row.feature == 0) continue;
    EXPECT_EQ(row.mean, 0.0);
    EXPECT_EQ(row.std, 0.0);
  }
  ImportanceRow constant{3, 0.0, 0.0};
  EXPECT_EQ(FormatImportance(constant), "3 (0.000 ±0.0000)");
}

TEST(ImportanceTest, PerfectBinaryFeatureLosesHalfTheAccuracy) {
  // Balanced classes; shuffling the only informative binary column keeps the
  // prediction right half the time, so the drop is about 1 - 0.5.
  RandomEngine rng(3);
  DenseMatrix x(4000, 2);
  std::vector<int32_t> y(4000);
  for (int i = 0; i < 4000; ++i) {
    y[i] = i % 2;
    x(i, 0) = y[i];
    x(i, 1) = UniformReal(rng);
  }
  ForestOptions options;
  options.trees = 20;
  const RandomForest forest = TrainRandomForest(x, y, 5, options);
  const ImportanceReport report = PermutationImportance(forest, x, y, 5, 1);
  ASSERT_EQ(report.rows[0].feature, 0);
  EXPECT_NEAR(report.rows[0].mean, 0.5, 0.05);
}

TEST(ImportanceTest, ReportFormats) {
  EXPECT_EQ(FormatImportance({0, 0.111, 0.0005}), "0 (0.111 ±0.0005)");
  EXPECT_EQ(FormatImportance({27, 0.0424, 0.00123}), "27 (0.042 ±0.0012)");
  ImportanceReport report;
  report.rows = {{5, 0.25, 0.01}, {0, 0.0, 0.0}};
  report.repeats = 5;
  report.baseline_accuracy = 0.9;
  std::ostringstream csv, listing;
  WriteImportanceCsv(report, csv);
  EXPECT_EQ(csv.str(),
            "# evaluated_on=holdout repeats=5 baseline_accuracy=0.9\n"
            "rank,orbit,mean,std\n1,5,0.25,0.01\n2,0,0,0\n");
  WriteImportanceListing(report, 1, listing);
  EXPECT_EQ(listing.str(), "5 (0.250 ±0.0100)\n");
}

TEST(ImportanceTest, RequiresTrainedModel) {
  RandomForest empty;
  const DenseMatrix x = UniformFeatures(10, 2, 1);
  EXPECT_THROW(PermutationImportance(empty, x, std::vector<int32_t>(10), 1, 0), Error);
}

class EffectCurveTest : public ::testing::Test {
 protected:
  void SetUp() override {
    x_ = UniformFeatures(2000, 3, 21);
    y_ = ThresholdLabels(x_, 1, kCut);
    ForestOptions options;
    options.trees = 40;
    options.features_per_split = 3;
    forest_ = TrainRandomForest(x_, y_, 4, options);
  }
  static constexpr double kCut = 4.3;
  DenseMatrix x_;
  std::vector<int32_t> y_;
  RandomForest forest_;
};

TEST_F(EffectCurveTest, StepSitsAtTheThreshold) {
  const auto curves = EffectCurves(forest_, x_, 1, EffectKind::kAle, 32);
  ASSERT_EQ(curves.size(), 2u);
  const EffectCurve& c1 = curves[1];
  EXPECT_EQ(c1.class_label, 1);
  size_t jump = 1;
  for (size_t k = 1; k < c1.grid.size(); ++k) {
    if (c1.values[k] - c1.values[k - 1] > c1.values[jump] - c1.values[jump - 1]) jump = k;
  }
  const double width = c1.grid[jump] - c1.grid[jump - 1];
  EXPECT_GE(kCut, c1.grid[jump - 1] - width);
  EXPECT_LE(kCut, c1.grid[jump] + width);
  EXPECT_GT(c1.values.back() - c1.values.front(), 0.9);
  // The two class curves mirror each other.
  for (size_t k = 0; k < c1.grid.size(); ++k) {
    EXPECT_NEAR(curves[0].values[k], -c1.values[k], 1e-12);
  }
}

TEST_F(EffectCurveTest, UnusedFeaturesAreFlat) {
  for (int f : {0, 2}) {
    for (const auto& t : forest_.trees) ASSERT_FALSE(t.UsesFeature(f));
    for (const auto& curve : EffectCurves(forest_, x_, f, EffectKind::kAle)) {
      for (double v : curve.values) EXPECT_NEAR(v, 0.0, 1e-12);
    }
  }
}

TEST_F(EffectCurveTest, CenteringIdentity) {
  ForestOptions options;
  options.trees = 30;
  RandomEngine rng(2);
  std::vector<int32_t> noisy = y_;
  for (auto& l : noisy) {
    if (UniformReal(rng) < 0.2) l = static_cast<int32_t>(UniformIndex(rng, 3));
  }
  const RandomForest forest = TrainRandomForest(x_, noisy, 8, options);
  for (int f = 0; f < 3; ++f) {
    for (const auto& curve : EffectCurves(forest, x_, f, EffectKind::kAle, 16)) {
      double weighted = 0.0;
      int64_t total = 0;
      for (size_t b = 0; b < curve.bin_counts.size(); ++b) {
        weighted += curve.bin_counts[b] * 0.5 * (curve.values[b] + curve.values[b + 1]);
        total += curve.bin_counts[b];
      }
      EXPECT_EQ(total, x_.rows());
      EXPECT_NEAR(weighted, 0.0, 1e-9);
      for (size_t k = 1; k < curve.grid.size(); ++k) {
        EXPECT_GT(curve.grid[k], curve.grid[k - 1]);
      }
    }
  }
}

TEST_F(EffectCurveTest, AleAndPdpAgreeForSingleFeatureModel) {
  const auto ale = EffectCurves(forest_, x_, 1, EffectKind::kAle, 16);
  const auto pdp = EffectCurves(forest_, x_, 1, EffectKind::kPdp, 16);
  for (size_t c = 0; c < ale.size(); ++c) {
    ASSERT_EQ(ale[c].grid, pdp[c].grid);
    const double offset = pdp[c].values[0] - ale[c].values[0];
    for (size_t k = 0; k < ale[c].grid.size(); ++k) {
      EXPECT_NEAR(pdp[c].values[k] - ale[c].values[k], offset, 1e-9);
    }
  }
}

TEST_F(EffectCurveTest, ThreadCountDoesNotChangeCurves) {
  const auto a = EffectCurves(forest_, x_, 1, EffectKind::kAle, 32, 1);
  const auto b = EffectCurves(forest_, x_, 1, EffectKind::kAle, 32, 3);
  for (size_t c = 0; c < a.size(); ++c) EXPECT_EQ(a[c].values, b[c].values);
}

TEST_F(EffectCurveTest, MonotoneRelabelingKeepsValues) {
  std::vector<int32_t> relabeled(y_.size());
  for (size_t i = 0; i < y_.size(); ++i) relabeled[i] = y_[i] == 0 ? 5 : 9;
  ForestOptions options;
  options.trees = 40;
  options.features_per_split = 3;
  const RandomForest other = TrainRandomForest(x_, relabeled, 4, options);
  const auto a = EffectCurves(forest_, x_, 1, EffectKind::kAle);
  const auto b = EffectCurves(other, x_, 1, EffectKind::kAle);
  EXPECT_EQ(b[0].class_label, 5);
  EXPECT_EQ(b[1].class_label, 9);
  for (size_t c = 0; c < a.size(); ++c) EXPECT_EQ(a[c].values, b[c].values);
}

TEST_F(EffectCurveTest, ConstantFeatureIsRejectedByName) {
  DenseMatrix x = x_;
  for (int64_t i = 0; i < x.rows(); ++i) x(i, 2) = 3.0;
  RandomForest forest = forest_;
  forest.feature_names = {"o0", "o1", "o2"};
  try {
    EffectCurves(forest, x, 2, EffectKind::kAle);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("o2"), std::string::npos);
  }
}

TEST(QuantileGridTest, MergesRepeatedEdges) {
  EXPECT_EQ(QuantileGrid({0, 0, 0, 0, 1, 2}, 4),
            (std::vector<double>{0, 0.75, 2}));
  EXPECT_EQ(QuantileGrid({3, 3, 3}, 8), (std::vector<double>{3}));
}

TEST(Orbit3ThresholdTest, Values) {
  EXPECT_EQ(Orbit3Threshold(CountOrbits(Cycle(8))), 0.0);
  EXPECT_DOUBLE_EQ(Orbit3Threshold(CountOrbits(Clique(5))), std::log1p(6.0));
  const std::vector<StructuralTemplate> templates = {StructuralTemplate::Barbell(5, 1)};
  const PlantedGraph planted = GeneratePlantedGraph(templates, 4, 0, 1);
  EXPECT_DOUBLE_EQ(Orbit3Threshold(CountOrbits(planted.graph)), std::log1p(6.0));
}

TEST(EffectCsvTest, WritesAnnotationRow) {
  EffectCurve curve;
  curve.feature = 27;
  curve.class_label = 1;
  curve.grid = {0, 1.5};
  curve.values = {-0.25, 0.25};
  std::ostringstream out;
  WriteEffectCurveCsv(std::span(&curve, 1), std::log1p(6.0), out);
  EXPECT_EQ(out.str(),
            "orbit,class,kind,grid_value,effect\n27,1,ALE,0,-0.25\n27,1,ALE,1.5,0.25\n"
            "27,,annotation," + FormatDouble(std::log1p(6.0)) + ",\n");
}

TEST(RefitTest, SubpopulationBehavesLikeTraining) {
  const DenseMatrix x = UniformFeatures(600, 3, 31);
  std::vector<int32_t> y(600);
  for (int i = 0; i < 600; ++i) y[i] = x(i, 0) < 3 ? 0 : (x(i, 0) < 6 ? 1 : 2);
  ForestOptions options;
  options.trees = 20;
  const SubpopulationFit all = RefitOnSubpopulation(x, y, {0, 1, 2}, 3, options);
  const RandomForest direct = TrainSurrogate(x, y, 3, options);
  EXPECT_EQ(all.rows.size(), 600u);
  EXPECT_EQ(all.forest.holdout_accuracy, direct.holdout_accuracy);

  const SubpopulationFit pair = RefitOnSubpopulation(x, y, {1, 2}, 3, options);
  EXPECT_EQ(pair.forest.class_labels, (std::vector<int32_t>{1, 2}));
  for (int64_t r : pair.rows) EXPECT_NE(y[r], 0);
  EXPECT_THROW(RefitOnSubpopulation(x, y, {1}, 3, options), InvalidArgument);
  EXPECT_THROW(RefitOnSubpopulation(x, y, {1, 7}, 3, options), InvalidArgument);
}

}  // namespace
}  // namespace rolegraph
