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

// Array-encoded binary decision trees and ensembles of them.
//
// A tree with N nodes is stored as parallel per-node arrays. Node 0 is the
// root. A node is a leaf iff both child indexes equal kLeaf. Internal nodes
// route an instance left iff x[feature] <= threshold. Every node carries a
// positive cover (weighted count of training samples reaching it) and an
// internal node's cover equals the sum of its children's covers.

#ifndef TREESHAP_MODEL_HPP_
#define TREESHAP_MODEL_HPP_

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "treeshap/error.hpp"

namespace treeshap {

inline constexpr int kLeaf = -1;

/// Relative tolerance used when checking cover sums of internal nodes.
inline constexpr double kCoverRelTol = 1e-9;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
struct TreeModel {
  using VectorType = Vector<Scalar>;

  /// Leaf outputs; NaN on internal nodes.
  VectorType values;
  Eigen::VectorXi left_children;
  Eigen::VectorXi right_children;
  /// Split thresholds; 0 on leaves.
  VectorType thresholds;
  /// Split feature indexes; kLeaf on leaves.
  Eigen::VectorXi split_features;
  VectorType covers;

  Eigen::Index num_nodes() const { return values.size(); }
  bool is_leaf(Eigen::Index node) const { return left_children[node] == kLeaf; }

  int num_leaves() const {
    int count = 0;
    for (Eigen::Index j = 0; j < num_nodes(); ++j) count += is_leaf(j) ? 1 : 0;
    return count;
  }

  /// Longest root-to-leaf edge count. A single leaf has depth 0.
  int depth() const {
    if (num_nodes() == 0) return 0;
    int best = 0;
    std::vector<std::pair<int, int>> stack{{0, 0}};
    while (!stack.empty()) {
      auto [node, d] = stack.back();
      stack.pop_back();
      if (is_leaf(node)) {
        best = std::max(best, d);
      } else {
        stack.emplace_back(left_children[node], d + 1);
        stack.emplace_back(right_children[node], d + 1);
      }
    }
    return best;
  }

  template <typename NewScalar>
  TreeModel<NewScalar> cast() const {
    return {values.template cast<NewScalar>(), left_children, right_children,
            thresholds.template cast<NewScalar>(), split_features,
            covers.template cast<NewScalar>()};
  }

  bool operator==(const TreeModel& other) const {
    auto same = [](const VectorType& a, const VectorType& b) {
      if (a.size() != b.size()) return false;
      for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (std::isnan(a[i]) != std::isnan(b[i])) return false;
        if (!std::isnan(a[i]) && a[i] != b[i]) return false;
      }
      return true;
    };
    return same(values, other.values) && left_children == other.left_children &&
           right_children == other.right_children &&
           same(thresholds, other.thresholds) &&
           split_features == other.split_features && same(covers, other.covers);
  }
};

template <typename Scalar>
struct TreeEnsemble {
  std::vector<TreeModel<Scalar>> trees;
  Scalar base_score = 0;
  int num_features = 0;

  int num_trees() const { return static_cast<int>(trees.size()); }

  int max_leaves() const {
    int best = 0;
    for (const auto& tree : trees) best = std::max(best, tree.num_leaves());
    return best;
  }

  int max_depth() const {
    int best = 0;
    for (const auto& tree : trees) best = std::max(best, tree.depth());
    return best;
  }

  template <typename NewScalar>
  TreeEnsemble<NewScalar> cast() const {
    TreeEnsemble<NewScalar> out;
    out.trees.reserve(trees.size());
    for (const auto& tree : trees) out.trees.push_back(tree.template cast<NewScalar>());
    out.base_score = static_cast<NewScalar>(base_score);
    out.num_features = num_features;
    return out;
  }

  bool operator==(const TreeEnsemble& other) const = default;
};

using Tree = TreeModel<double>;
using Ensemble = TreeEnsemble<double>;

/// Builds a tree holding a single leaf.
template <typename Scalar>
TreeModel<Scalar> make_leaf_tree(Scalar value, Scalar cover) {
  TreeModel<Scalar> tree;
  tree.values = Vector<Scalar>::Constant(1, value);
  tree.left_children = Eigen::VectorXi::Constant(1, kLeaf);
  tree.right_children = Eigen::VectorXi::Constant(1, kLeaf);
  tree.thresholds = Vector<Scalar>::Zero(1);
  tree.split_features = Eigen::VectorXi::Constant(1, kLeaf);
  tree.covers = Vector<Scalar>::Constant(1, cover);
  return tree;
}

/// Checks every structural invariant of `tree`. Throws ModelError naming the
/// offending node. `tree_index` only decorates the message.
template <typename Scalar>
void validate(const TreeModel<Scalar>& tree, int num_features, int tree_index = -1) {
  const Eigen::Index n = tree.values.size();
  if (n == 0) throw ModelError("tree has no nodes", tree_index);
  if (tree.left_children.size() != n || tree.right_children.size() != n ||
      tree.thresholds.size() != n || tree.split_features.size() != n ||
      tree.covers.size() != n) {
    throw ModelError("node arrays have unequal lengths", tree_index);
  }

  std::vector<int> parents(n, -1);
  for (Eigen::Index j = 0; j < n; ++j) {
    const int node = static_cast<int>(j);
    const int left = tree.left_children[j];
    const int right = tree.right_children[j];
    if ((left == kLeaf) != (right == kLeaf)) {
      throw ModelError("exactly one child is the leaf sentinel", tree_index, node);
    }
    if (!std::isfinite(static_cast<double>(tree.covers[j])) || !(tree.covers[j] > 0)) {
      throw ModelError("cover must be positive and finite", tree_index, node);
    }
    if (left == kLeaf) {
      if (!std::isfinite(static_cast<double>(tree.values[j]))) {
        throw ModelError("leaf value must be finite", tree_index, node);
      }
      continue;
    }
    if (left < 0 || left >= n || right < 0 || right >= n) {
      throw ModelError("child index out of range", tree_index, node);
    }
    if (left == right) throw ModelError("children are not distinct", tree_index, node);
    for (int child : {left, right}) {
      if (child == 0) throw ModelError("root used as a child", tree_index, node);
      if (parents[child] != -1) {
        throw ModelError("node " + std::to_string(child) + " has two parents", tree_index,
                         node);
      }
      parents[child] = node;
    }
    const int feature = tree.split_features[j];
    if (feature < 0 || feature >= num_features) {
      throw ModelError("split feature " + std::to_string(feature) + " outside [0, " +
                           std::to_string(num_features) + ")",
                       tree_index, node);
    }
    if (!std::isfinite(static_cast<double>(tree.thresholds[j]))) {
      throw ModelError("threshold must be finite", tree_index, node);
    }
  }

  // Reachability; with single parents and a parentless root this also rules
  // out cycles.
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  Eigen::Index reached = 0;
  while (!stack.empty()) {
    const int node = stack.back();
    stack.pop_back();
    if (seen[node]) throw ModelError("cycle through node", tree_index, node);
    seen[node] = 1;
    ++reached;
    if (!tree.is_leaf(node)) {
      stack.push_back(tree.left_children[node]);
      stack.push_back(tree.right_children[node]);
    }
  }
  if (reached != n) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!seen[j]) throw ModelError("unreachable from root", tree_index, static_cast<int>(j));
    }
  }

  for (Eigen::Index j = 0; j < n; ++j) {
    if (tree.is_leaf(j)) continue;
    const double cover = static_cast<double>(tree.covers[j]);
    const double sum = static_cast<double>(tree.covers[tree.left_children[j]] +
                                           tree.covers[tree.right_children[j]]);
    if (std::abs(cover - sum) > kCoverRelTol * std::max(std::abs(cover), std::abs(sum))) {
      throw ModelError("cover " + std::to_string(cover) +
                           " does not equal the sum of child covers " + std::to_string(sum),
                       tree_index, static_cast<int>(j));
    }
  }
}

template <typename Scalar>
void validate(const TreeEnsemble<Scalar>& ensemble) {
  if (ensemble.num_features <= 0) throw ModelError("num_features must be positive");
  if (!std::isfinite(static_cast<double>(ensemble.base_score))) {
    throw ModelError("base_score must be finite");
  }
  for (int t = 0; t < ensemble.num_trees(); ++t) {
    validate(ensemble.trees[t], ensemble.num_features, t);
  }
}

/// Throws std::invalid_argument unless `x` has the ensemble's feature count
/// and only finite entries.
template <typename Scalar, typename Derived>
void check_instance(const TreeEnsemble<Scalar>& ensemble, const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != ensemble.num_features) {
    throw std::invalid_argument("instance has " + std::to_string(x.size()) +
                                " features, model expects " +
                                std::to_string(ensemble.num_features));
  }
  if (!x.allFinite()) throw std::invalid_argument("instance has non-finite entries");
}

/// Index of the leaf that `x` reaches.
template <typename Scalar, typename Derived>
int find_leaf(const TreeModel<Scalar>& tree, const Eigen::MatrixBase<Derived>& x) {
  int node = 0;
  while (!tree.is_leaf(node)) {
    node = x[tree.split_features[node]] <= tree.thresholds[node] ? tree.left_children[node]
                                                                : tree.right_children[node];
  }
  return node;
}

template <typename Scalar, typename Derived>
Scalar predict(const TreeModel<Scalar>& tree, const Eigen::MatrixBase<Derived>& x) {
  return tree.values[find_leaf(tree, x)];
}

template <typename Scalar, typename Derived>
Scalar predict(const TreeEnsemble<Scalar>& ensemble, const Eigen::MatrixBase<Derived>& x) {
  Scalar out = ensemble.base_score;
  for (const auto& tree : ensemble.trees) out += predict(tree, x);
  return out;
}

/// Cover-weighted mean leaf value of every subtree, indexed by subtree root.
template <typename Scalar>
Vector<Scalar> node_means(const TreeModel<Scalar>& tree) {
  const Eigen::Index n = tree.num_nodes();
  Vector<Scalar> means(n);
  // Children may precede parents in the arrays, so order by a DFS.
  std::vector<int> order;
  order.reserve(n);
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int node = stack.back();
    stack.pop_back();
    order.push_back(node);
    if (!tree.is_leaf(node)) {
      stack.push_back(tree.left_children[node]);
      stack.push_back(tree.right_children[node]);
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int j = *it;
    if (tree.is_leaf(j)) {
      means[j] = tree.values[j];
    } else {
      const int a = tree.left_children[j];
      const int b = tree.right_children[j];
      means[j] = (tree.covers[a] * means[a] + tree.covers[b] * means[b]) /
                 (tree.covers[a] + tree.covers[b]);
    }
  }
  return means;
}

template <typename Scalar>
Scalar expected_value(const TreeModel<Scalar>& tree) {
  return node_means(tree)[0];
}

template <typename Scalar>
Scalar expected_value(const TreeEnsemble<Scalar>& ensemble) {
  Scalar out = ensemble.base_score;
  for (const auto& tree : ensemble.trees) out += expected_value(tree);
  return out;
}

}  // namespace treeshap

#endif  // TREESHAP_MODEL_HPP_
