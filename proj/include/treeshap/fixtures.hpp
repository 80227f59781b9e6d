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

// Built-in models: the Fever/Cough "AND" trees used to show attribution
// (in)consistency, and seeded random trees for property tests and benchmarks.

#ifndef TREESHAP_FIXTURES_HPP_
#define TREESHAP_FIXTURES_HPP_

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "treeshap/model.hpp"

namespace treeshap {

inline constexpr int kFever = 0;
inline constexpr int kCough = 1;

namespace internal {

// Depth-2 full tree: root splits on `root_feature`, both children split on
// `child_feature`, threshold 0.5 (0 = "no" goes left). Leaves in left-to-right
// order, one unit of cover each.
inline Tree and_tree(int root_feature, int child_feature, const double (&leaves)[4]) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  Tree tree;
  tree.values.resize(7);
  tree.values << nan, nan, leaves[0], leaves[1], nan, leaves[2], leaves[3];
  tree.left_children.resize(7);
  tree.left_children << 1, 2, kLeaf, kLeaf, 5, kLeaf, kLeaf;
  tree.right_children.resize(7);
  tree.right_children << 4, 3, kLeaf, kLeaf, 6, kLeaf, kLeaf;
  tree.thresholds.resize(7);
  tree.thresholds << 0.5, 0.5, 0, 0, 0.5, 0, 0;
  tree.split_features.resize(7);
  tree.split_features << root_feature, child_feature, kLeaf, kLeaf, child_feature, kLeaf, kLeaf;
  tree.covers.resize(7);
  tree.covers << 4, 2, 1, 1, 2, 1, 1;
  return tree;
}

inline Ensemble single_tree_ensemble(Tree tree, int num_features) {
  Ensemble ensemble;
  ensemble.trees.push_back(std::move(tree));
  ensemble.num_features = num_features;
  return ensemble;
}

}  // namespace internal

/// Fever AND Cough: 80 when both are present, 0 otherwise. Root splits Fever.
inline Ensemble fever_cough_model_a() {
  return internal::single_tree_ensemble(internal::and_tree(kFever, kCough, {0, 0, 0, 80}), 2);
}

/// Model A plus 10 whenever Cough is present. Root splits Cough.
inline Ensemble fever_cough_model_b() {
  return internal::single_tree_ensemble(internal::and_tree(kCough, kFever, {0, 0, 10, 90}), 2);
}

/// Fever = yes, Cough = yes.
inline Eigen::VectorXd fever_cough_instance() { return Eigen::Vector2d(1, 1); }

struct RandomTreeOptions {
  int num_features = 10;
  int max_depth = 4;
  /// Chance that a node above max_depth splits; 1 gives full binary trees.
  double split_probability = 0.8;
  /// Leaf covers are drawn uniformly from {1, ..., max_leaf_cover}.
  int max_leaf_cover = 10;
};

/// Random tree with integer covers and thresholds in (0, 1). Features may
/// repeat along a path.
template <typename Rng>
Tree random_tree(Rng& rng, const RandomTreeOptions& options) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gaussian(0.0, 1.0);
  std::uniform_int_distribution<int> feature(0, options.num_features - 1);
  std::uniform_int_distribution<int> cover(1, options.max_leaf_cover);

  std::vector<int> left, right, split;
  std::vector<double> value, threshold, covers;
  auto add_node = [&]() {
    left.push_back(kLeaf);
    right.push_back(kLeaf);
    split.push_back(kLeaf);
    value.push_back(std::numeric_limits<double>::quiet_NaN());
    threshold.push_back(0);
    covers.push_back(0);
    return static_cast<int>(left.size()) - 1;
  };
  auto build = [&](auto&& self, int node, int depth) -> void {
    if (depth < options.max_depth && unit(rng) < options.split_probability) {
      split[node] = feature(rng);
      threshold[node] = unit(rng);
      const int a = add_node();
      const int b = add_node();
      left[node] = a;
      right[node] = b;
      self(self, a, depth + 1);
      self(self, b, depth + 1);
      covers[node] = covers[a] + covers[b];
    } else {
      value[node] = gaussian(rng);
      covers[node] = cover(rng);
    }
  };
  build(build, add_node(), 0);

  Tree tree;
  const auto n = static_cast<Eigen::Index>(left.size());
  tree.values = Eigen::Map<Eigen::VectorXd>(value.data(), n);
  tree.left_children = Eigen::Map<Eigen::VectorXi>(left.data(), n);
  tree.right_children = Eigen::Map<Eigen::VectorXi>(right.data(), n);
  tree.thresholds = Eigen::Map<Eigen::VectorXd>(threshold.data(), n);
  tree.split_features = Eigen::Map<Eigen::VectorXi>(split.data(), n);
  tree.covers = Eigen::Map<Eigen::VectorXd>(covers.data(), n);
  return tree;
}

template <typename Rng>
Ensemble random_ensemble(Rng& rng, int num_trees, const RandomTreeOptions& options) {
  Ensemble ensemble;
  ensemble.num_features = options.num_features;
  for (int t = 0; t < num_trees; ++t) ensemble.trees.push_back(random_tree(rng, options));
  return ensemble;
}

template <typename Rng>
Eigen::VectorXd random_instance(Rng& rng, int num_features) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd x(num_features);
  for (int i = 0; i < num_features; ++i) x[i] = unit(rng);
  return x;
}

}  // namespace treeshap

#endif  // TREESHAP_FIXTURES_HPP_
