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

#include "treeshap/tree_shap.hpp"

#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "treeshap/exact_oracle.hpp"
#include "treeshap/fixtures.hpp"

namespace treeshap {
namespace {

using testing::close;

// Copying recursion built only from the public extend()/unwind(), one call
// per step of the textbook procedure. Checks the in-place kernels.
void reference_recurse(const Tree& tree, const Eigen::VectorXd& x, Eigen::VectorXd& phi, int node,
                       PathState<double> path, double zero_fraction, double one_fraction,
                       int feature) {
  path = extend(path, zero_fraction, one_fraction, feature);
  if (tree.is_leaf(node)) {
    for (int i = 1; i < static_cast<int>(path.size()); ++i) {
      double w = 0;
      for (const auto& e : unwind(path, i)) w += e.weight;
      phi[path[i].feature] += w * (path[i].one_fraction - path[i].zero_fraction) *
                              tree.values[node];
    }
    return;
  }
  const int split = tree.split_features[node];
  const bool left = x[split] <= tree.thresholds[node];
  const int hot = left ? tree.left_children[node] : tree.right_children[node];
  const int cold = left ? tree.right_children[node] : tree.left_children[node];
  double iz = 1, io = 1;
  for (int k = 1; k < static_cast<int>(path.size()); ++k) {
    if (path[k].feature == split) {
      iz = path[k].zero_fraction;
      io = path[k].one_fraction;
      path = unwind(path, k);
      break;
    }
  }
  const double r = tree.covers[node];
  reference_recurse(tree, x, phi, hot, path, iz * tree.covers[hot] / r, io, split);
  reference_recurse(tree, x, phi, cold, path, iz * tree.covers[cold] / r, 0, split);
}

Eigen::VectorXd reference_tree_shap(const Tree& tree, const Eigen::VectorXd& x, int m) {
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(m);
  reference_recurse(tree, x, phi, 0, {}, 1, 1, kRootFeature);
  return phi;
}

PathState<double> random_path(std::mt19937_64& rng, int length) {
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  PathState<double> path;
  path = extend(path, 1.0, 1.0, kRootFeature);
  for (int i = 1; i < length; ++i) {
    const bool hot = unit(rng) < 0.5;
    path = extend(path, unit(rng), hot ? 1.0 : 0.0, i);
  }
  return path;
}

TEST(Extend, FirstElementGetsUnitWeight) {
  const auto path = extend(PathState<double>{}, 1.0, 1.0, kRootFeature);
  ASSERT_EQ(path.size(), 1u);
  EXPECT_EQ(path[0].weight, 1.0);
  EXPECT_EQ(path[0].feature, kRootFeature);
}

TEST(Extend, DoesNotMutateInput) {
  std::mt19937_64 rng(1);
  const auto path = random_path(rng, 4);
  const auto copy = path;
  const auto longer = extend(path, 0.3, 1.0, 9);
  EXPECT_EQ(path, copy);
  EXPECT_EQ(longer.size(), path.size() + 1);
  EXPECT_EQ(longer.back().feature, 9);
}

// Extending with fractions (z, o) turns the weight polynomial sum_k w_k t^k
// into ... * (z (l-k)/l + o (k+1)/l t); after one extension from the root the
// weights are {z/2, o/2}.
TEST(Extend, TwoElementWeights) {
  const auto root = extend(PathState<double>{}, 1.0, 1.0, kRootFeature);
  const auto path = extend(root, 0.25, 1.0, 3);
  EXPECT_DOUBLE_EQ(path[0].weight, 0.25 / 2);
  EXPECT_DOUBLE_EQ(path[1].weight, 1.0 / 2);
}

TEST(Unwind, InvertsExtend) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int length = 1 + trial % 8;
    const auto path = random_path(rng, length);
    const double z = unit(rng);
    const double o = trial % 2 ? 1.0 : 0.0;
    const auto back = unwind(extend(path, z, o, 42), length);
    ASSERT_EQ(back.size(), path.size());
    for (int i = 0; i < length; ++i) {
      EXPECT_EQ(back[i].feature, path[i].feature);
      EXPECT_NEAR(back[i].weight, path[i].weight, 1e-12 * (1 + std::abs(path[i].weight)));
    }
  }
}

// Extension order does not matter, so unwinding an interior element gives the
// path built without it.
TEST(Unwind, InteriorPositionRemovesThatFeature) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int length = 3 + trial % 5;
    std::vector<std::pair<double, double>> fractions(length);
    for (auto& f : fractions) f = {unit(rng), unit(rng) < 0.5 ? 1.0 : 0.0};
    const int drop = 1 + trial % (length - 1);
    PathState<double> full, without;
    full = extend(full, 1.0, 1.0, kRootFeature);
    without = extend(without, 1.0, 1.0, kRootFeature);
    for (int i = 1; i < length; ++i) {
      full = extend(full, fractions[i].first, fractions[i].second, i);
      if (i != drop) without = extend(without, fractions[i].first, fractions[i].second, i);
    }
    const auto unwound = unwind(full, drop);
    ASSERT_EQ(unwound.size(), without.size());
    for (std::size_t i = 0; i < without.size(); ++i) {
      EXPECT_EQ(unwound[i].feature, without[i].feature);
      EXPECT_NEAR(unwound[i].weight, without[i].weight, 1e-12);
    }
  }
}

TEST(Unwind, WeightSumMatchesFullUnwind) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto path = random_path(rng, 2 + trial % 7);
    for (int i = 0; i < static_cast<int>(path.size()); ++i) {
      double sum = 0;
      for (const auto& e : unwind(path, i)) sum += e.weight;
      EXPECT_NEAR(unwound_weight_sum(path, i), sum, 1e-13);
    }
  }
}

TEST(Unwind, RejectsCorruptElements) {
  auto path = extend(extend(PathState<double>{}, 1.0, 1.0, kRootFeature), 0.5, 1.0, 0);
  EXPECT_THROW(unwind(path, 2), std::out_of_range);
  path[1].zero_fraction = 0;
  path[1].one_fraction = 0;
  EXPECT_THROW(unwind(path, 1), std::domain_error);
  EXPECT_THROW(unwound_weight_sum(path, 1), std::domain_error);
}

TEST(TreeShap, FeverCough) {
  const Eigen::VectorXd x = fever_cough_instance();
  const auto a = tree_shap(fever_cough_model_a(), x);
  EXPECT_NEAR(a.phi0, 20, 1e-12);
  EXPECT_NEAR(a.phi[kFever], 30, 1e-12);
  EXPECT_NEAR(a.phi[kCough], 30, 1e-12);
  const auto b = tree_shap(fever_cough_model_b(), x);
  EXPECT_NEAR(b.phi0, 25, 1e-12);
  EXPECT_NEAR(b.phi[kFever], 30, 1e-12);
  EXPECT_NEAR(b.phi[kCough], 35, 1e-12);
  EXPECT_GT(b.phi[kCough], a.phi[kCough]);
}

TEST(TreeShap, TwoTreeEnsembleIsAdditive) {
  Ensemble both = fever_cough_model_a();
  both.trees.push_back(fever_cough_model_b().trees[0]);
  const auto s = tree_shap(both, fever_cough_instance());
  EXPECT_NEAR(s.phi0, 45, 1e-12);
  EXPECT_NEAR(s.phi[kFever], 60, 1e-12);
  EXPECT_NEAR(s.phi[kCough], 65, 1e-12);
  EXPECT_TRUE(locally_accurate(s, predict(both, fever_cough_instance())));
}

TEST(TreeShap, SingleFeatureTreeIsASinglePlayerGame) {
  // x0 <= 0.3 ? (x0 <= 0.1 ? 4 : 10) : 1 with leaf covers 2, 3, 5.
  Tree tree;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  tree.values = (Eigen::VectorXd(5) << nan, nan, 1, 4, 10).finished();
  tree.left_children = (Eigen::VectorXi(5) << 1, 3, kLeaf, kLeaf, kLeaf).finished();
  tree.right_children = (Eigen::VectorXi(5) << 2, 4, kLeaf, kLeaf, kLeaf).finished();
  tree.thresholds = (Eigen::VectorXd(5) << 0.3, 0.1, 0, 0, 0).finished();
  tree.split_features = (Eigen::VectorXi(5) << 0, 0, kLeaf, kLeaf, kLeaf).finished();
  tree.covers = (Eigen::VectorXd(5) << 10, 5, 5, 2, 3).finished();
  validate(tree, 3);
  const Eigen::Vector3d x(0.05, 0.7, 0.2);
  const auto s = tree_shap(tree, x, 3);
  EXPECT_NEAR(s.phi[0], predict(tree, x) - expected_value(tree), 1e-12);
  EXPECT_EQ(s.phi[1], 0.0);
  EXPECT_EQ(s.phi[2], 0.0);
}

TEST(TreeShap, MatchesOracleAndReferenceOnRandomTrees) {
  std::mt19937_64 rng(20);
  std::uniform_int_distribution<int> features(1, 8);
  std::uniform_int_distribution<int> depth(0, 6);
  for (int trial = 0; trial < 150; ++trial) {
    RandomTreeOptions options;
    options.num_features = features(rng);
    options.max_depth = depth(rng);
    const Tree tree = random_tree(rng, options);
    for (int i = 0; i < 5; ++i) {
      const Eigen::VectorXd x = random_instance(rng, options.num_features);
      const auto fast = tree_shap(tree, x, options.num_features);
      const auto exact = shapley_brute_force(tree, x, options.num_features);
      const Eigen::VectorXd reference = reference_tree_shap(tree, x, options.num_features);
      EXPECT_NEAR(fast.phi0, exact.phi0, 1e-12);
      for (int f = 0; f < options.num_features; ++f) {
        EXPECT_TRUE(close(fast.phi[f], exact.phi[f])) << fast.phi[f] << " vs " << exact.phi[f];
        EXPECT_NEAR(fast.phi[f], reference[f], 1e-12);
      }
      EXPECT_TRUE(locally_accurate(fast, predict(tree, x)));
    }
  }
}

// Trees over two features split on each one repeatedly, so the duplicate
// unwind branch runs on almost every path.
TEST(TreeShap, RepeatedSplitsOnOneFeature) {
  std::mt19937_64 rng(21);
  RandomTreeOptions options;
  options.num_features = 2;
  options.max_depth = 6;
  options.split_probability = 1.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Tree tree = random_tree(rng, options);
    const Eigen::VectorXd x = random_instance(rng, 2);
    const auto fast = tree_shap(tree, x, 2);
    const Eigen::VectorXd slow = testing::permutation_shapley(2, [&](const std::vector<bool>& s) {
      return testing::leaf_sum_expectation(tree, x, s);
    });
    EXPECT_TRUE(close(fast.phi[0], slow[0]));
    EXPECT_TRUE(close(fast.phi[1], slow[1]));
  }
}

TEST(TreeShap, UnusedFeaturesGetExactlyZero) {
  std::mt19937_64 rng(22);
  RandomTreeOptions options;
  options.num_features = 4;
  for (int trial = 0; trial < 20; ++trial) {
    Ensemble e = random_ensemble(rng, 3, options);
    e.num_features = 7;
    Eigen::VectorXd x(7);
    x << random_instance(rng, 4), 1, 2, 3;
    const auto s = tree_shap(e, x);
    EXPECT_EQ(s.phi[4], 0.0);
    EXPECT_EQ(s.phi[5], 0.0);
    EXPECT_EQ(s.phi[6], 0.0);
  }
}

TEST(TreeShap, IsBitIdenticalAcrossCalls) {
  std::mt19937_64 rng(23);
  RandomTreeOptions options;
  options.num_features = 10;
  options.max_depth = 6;
  const Ensemble e = random_ensemble(rng, 20, options);
  const Eigen::VectorXd x = random_instance(rng, 10);
  const auto first = tree_shap(e, x);
  const auto second = tree_shap(e, x);
  EXPECT_EQ(first.phi, second.phi);
  EXPECT_EQ(first.phi0, second.phi0);
}

// Raising the output of one region by delta > 0, where that region requires
// the feature to take its current branch, never lowers the feature's value.
TEST(TreeShap, ConsistencyUnderContingentIncrease) {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> delta(0.1, 5.0);
  RandomTreeOptions options;
  options.num_features = 5;
  options.max_depth = 4;
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Tree tree = random_tree(rng, options);
    if (tree.is_leaf(0)) continue;
    const Eigen::VectorXd x = random_instance(rng, 5);
    const int feature = tree.split_features[0];
    const bool goes_left = x[feature] <= tree.thresholds[0];
    const int subtree = goes_left ? tree.left_children[0] : tree.right_children[0];
    Tree raised = tree;
    const double d = delta(rng);
    std::vector<int> stack{subtree};
    while (!stack.empty()) {
      const int j = stack.back();
      stack.pop_back();
      if (raised.is_leaf(j)) {
        raised.values[j] += d;
      } else {
        stack.push_back(raised.left_children[j]);
        stack.push_back(raised.right_children[j]);
      }
    }
    const double before = tree_shap(tree, x, 5).phi[feature];
    const double after = tree_shap(raised, x, 5).phi[feature];
    EXPECT_GE(after, before - 1e-12);
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(TreeShap, WorksInLongDouble) {
  const auto e = fever_cough_model_b().cast<long double>();
  const Eigen::Matrix<long double, 2, 1> x(1, 1);
  const auto s = tree_shap(e, x);
  EXPECT_NEAR(static_cast<double>(s.phi[kCough]), 35, 1e-15);
}

TEST(TreeShap, CountsOperations) {
  OpCounter counter;
  tree_shap(fever_cough_model_a(), fever_cough_instance(), &counter);
  EXPECT_EQ(counter.node_visits, 7u);
  EXPECT_GT(counter.path_ops, 0u);
}

}  // namespace
}  // namespace treeshap
