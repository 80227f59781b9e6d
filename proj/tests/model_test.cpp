// Copyright 2026 The treeshap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "treeshap/model.hpp"

#include <random>
#include <string>

#include "gtest/gtest.h"
#include "treeshap/fixtures.hpp"
#include "treeshap/model_io.hpp"

namespace treeshap {
namespace {

const std::string kData = TREESHAP_TEST_DATA_DIR;

TEST(LoadEnsemble, SingleLeafTree) {
  const Ensemble e = load_ensemble_file(kData + "/single_leaf.json");
  EXPECT_EQ(e.num_trees(), 1);
  EXPECT_EQ(e.max_leaves(), 1);
  EXPECT_EQ(e.max_depth(), 0);
  EXPECT_EQ(e.base_score, 0.0);
  EXPECT_EQ(predict(e, Eigen::Vector3d(7, -1, 3)), 5.0);
  EXPECT_EQ(expected_value(e), 5.0);
}

TEST(LoadEnsemble, FeverCoughModelA) {
  const Ensemble e = load_ensemble_file(kData + "/fever_cough_a.json");
  EXPECT_EQ(e.num_trees(), 1);
  EXPECT_EQ(e.max_leaves(), 4);
  EXPECT_EQ(e.max_depth(), 2);
  EXPECT_EQ(e.trees[0].covers[0], 4.0);
  EXPECT_EQ(e, fever_cough_model_a());
  EXPECT_EQ(load_ensemble_file(kData + "/fever_cough_b.json"), fever_cough_model_b());
}

TEST(LoadEnsemble, CoverMismatchNamesTheNode) {
  try {
    load_ensemble_file(kData + "/bad_cover.json");
    FAIL() << "expected ModelError";
  } catch (const ModelError& e) {
    EXPECT_EQ(e.tree(), 0);
    EXPECT_EQ(e.node(), 0);
    EXPECT_NE(std::string(e.what()).find("cover"), std::string::npos);
  }
}

TEST(LoadEnsemble, RejectsStructuralViolations) {
  auto doc = [](const std::string& left, const std::string& right, const std::string& feature,
                const std::string& cover) {
    return R"({"num_features": 2, "trees": [{"children_left": )" + left +
           R"(, "children_right": )" + right + R"(, "feature": )" + feature +
           R"(, "threshold": [0.5, 0, 0], "value": [0, 1, 2], "cover": )" + cover + "}]}";
  };
  // Sanity: the template itself is valid.
  EXPECT_NO_THROW(load_ensemble(doc("[1,-1,-1]", "[2,-1,-1]", "[0,-1,-1]", "[2,1,1]")));
  // Only one leaf sentinel.
  EXPECT_THROW(load_ensemble(doc("[1,-1,-1]", "[-1,-1,-1]", "[0,-1,-1]", "[2,1,1]")), ModelError);
  // Same child twice.
  EXPECT_THROW(load_ensemble(doc("[1,-1,-1]", "[1,-1,-1]", "[0,-1,-1]", "[2,1,1]")), ModelError);
  // Child out of range.
  EXPECT_THROW(load_ensemble(doc("[1,-1,-1]", "[7,-1,-1]", "[0,-1,-1]", "[2,1,1]")), ModelError);
  // Cycle back to the root.
  EXPECT_THROW(load_ensemble(doc("[1,-1,-1]", "[0,-1,-1]", "[0,-1,-1]", "[2,1,1]")), ModelError);
  // Feature outside [0, M).
  EXPECT_THROW(load_ensemble(doc("[1,-1,-1]", "[2,-1,-1]", "[2,-1,-1]", "[2,1,1]")), ModelError);
  // Zero cover.
  EXPECT_THROW(load_ensemble(doc("[1,-1,-1]", "[2,-1,-1]", "[0,-1,-1]", "[1,1,0]")), ModelError);
  // Unreachable node.
  EXPECT_THROW(load_ensemble(R"({"num_features": 1, "trees": [{"children_left": [-1, -1],
      "children_right": [-1, -1], "feature": [-1, -1], "threshold": [0, 0], "value": [1, 2],
      "cover": [1, 1]}]})"),
               ModelError);
  EXPECT_THROW(load_ensemble("{not json"), ModelError);
  EXPECT_THROW(load_ensemble(R"({"trees": []})"), ModelError);
  EXPECT_THROW(load_ensemble(R"({"num_features": 1, "trees": [{"children_left": [-1]}]})"),
               ModelError);
}

TEST(LoadEnsemble, FractionalCoversAndBaseScore) {
  const Ensemble e = load_ensemble(R"({"num_features": 1, "base_score": 0.25, "trees": [
      {"children_left": [1, -1, -1], "children_right": [2, -1, -1], "feature": [0, -1, -1],
       "threshold": [0.5, 0, 0], "value": [0, 1, 3], "cover": [1.0, 0.25, 0.75]}]})");
  EXPECT_EQ(e.base_score, 0.25);
  EXPECT_DOUBLE_EQ(expected_value(e), 0.25 + 0.25 * 1 + 0.75 * 3);
}

TEST(LoadEnsemble, RoundTripsThroughJson) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    RandomTreeOptions options;
    options.num_features = 6;
    options.max_depth = 5;
    Ensemble e = random_ensemble(rng, 3, options);
    e.base_score = std::normal_distribution<double>()(rng);
    const Ensemble back = load_ensemble(to_json(e));
    EXPECT_EQ(back, e);
    EXPECT_EQ(to_json(back), to_json(e));
  }
}

TEST(Predict, FeverCough) {
  const Eigen::VectorXd yes = fever_cough_instance();
  EXPECT_EQ(predict(fever_cough_model_a(), yes), 80.0);
  EXPECT_EQ(predict(fever_cough_model_b(), yes), 90.0);
  EXPECT_EQ(predict(fever_cough_model_a(), Eigen::Vector2d(1, 0)), 0.0);
  EXPECT_EQ(predict(fever_cough_model_b(), Eigen::Vector2d(0, 1)), 10.0);
}

TEST(Predict, ThresholdTieGoesLeft) {
  const Ensemble a = fever_cough_model_a();
  // Fever exactly at the threshold counts as "no".
  EXPECT_EQ(predict(a, Eigen::Vector2d(0.5, 1)), 0.0);
  EXPECT_EQ(predict(a, Eigen::Vector2d(0.5000001, 1)), 80.0);
}

TEST(Predict, AddsBaseScore) {
  Ensemble e;
  e.num_features = 2;
  e.base_score = 1.5;
  e.trees.push_back(make_leaf_tree(5.0, 10.0));
  EXPECT_EQ(predict(e, Eigen::Vector2d(3, 4)), 6.5);
  EXPECT_EQ(expected_value(e), 6.5);
}

TEST(ExpectedValue, FeverCough) {
  EXPECT_EQ(expected_value(fever_cough_model_a()), 20.0);
  EXPECT_EQ(expected_value(fever_cough_model_b()), 25.0);
}

// With unit leaf covers, the expected value is the plain average of predict
// over one instance per leaf.
TEST(ExpectedValue, MatchesLeafEnumerationWithUniformCovers) {
  const Ensemble a = fever_cough_model_a();
  double sum = 0;
  for (double fever : {0.0, 1.0}) {
    for (double cough : {0.0, 1.0}) sum += predict(a, Eigen::Vector2d(fever, cough));
  }
  EXPECT_EQ(expected_value(a), sum / 4);
}

TEST(Predict, PiecewiseConstantBetweenThresholds) {
  std::mt19937_64 rng(3);
  RandomTreeOptions options;
  options.num_features = 5;
  options.max_depth = 5;
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const Tree tree = random_tree(rng, options);
    Eigen::VectorXd x = random_instance(rng, options.num_features);
    const int f = std::uniform_int_distribution<int>(0, options.num_features - 1)(rng);
    // Nearest thresholds on f along the decision path bound a constant region.
    double lo = -1e300, hi = 1e300;
    for (int node = 0; !tree.is_leaf(node);) {
      const bool left = x[tree.split_features[node]] <= tree.thresholds[node];
      if (tree.split_features[node] == f) {
        if (left) hi = std::min(hi, tree.thresholds[node]);
        else lo = std::max(lo, tree.thresholds[node]);
      }
      node = left ? tree.left_children[node] : tree.right_children[node];
    }
    const double before = predict(tree, x);
    const double a = std::max(lo, x[f] - 1.0);
    const double b = std::min(hi, x[f] + 1.0);
    x[f] = a + (b - a) * (0.001 + 0.998 * unit(rng));
    if (x[f] <= lo) continue;
    EXPECT_EQ(predict(tree, x), before);
  }
}

}  // namespace
}  // namespace treeshap
