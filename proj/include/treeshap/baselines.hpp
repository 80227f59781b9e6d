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

// Classical tree attributions: decision-path ("Saabas") attributions, split
// gain, and split counts. These only look at splits along decision paths and
// are not consistent; they are kept for comparison against tree_shap().

#ifndef TREESHAP_BASELINES_HPP_
#define TREESHAP_BASELINES_HPP_

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "treeshap/attribution.hpp"
#include "treeshap/model.hpp"
#include "treeshap/tree_shap.hpp"

namespace treeshap {

enum class ImportanceMethod { kGain, kSplitCount, kMeanAbsShap };

inline std::string_view to_string(ImportanceMethod method) {
  switch (method) {
    case ImportanceMethod::kGain:
      return "gain";
    case ImportanceMethod::kSplitCount:
      return "split_count";
    case ImportanceMethod::kMeanAbsShap:
      return "mean_abs_shap";
  }
  return "unknown";
}

template <typename Scalar>
struct GlobalImportance {
  ImportanceMethod method;
  Vector<Scalar> scores;
};

/// Credits each split on x's decision path with the change in cover-weighted
/// subtree mean it causes. Telescopes to prediction - expected value.
template <typename Scalar, typename Derived>
Attribution<Scalar> saabas_path(const TreeModel<Scalar>& tree, const Eigen::MatrixBase<Derived>& x,
                                int num_features) {
  const Vector<Scalar> means = node_means(tree);
  Attribution<Scalar> out;
  out.phi0 = means[0];
  out.phi = Vector<Scalar>::Zero(num_features);
  int node = 0;
  while (!tree.is_leaf(node)) {
    const int feature = tree.split_features[node];
    const int next = x[feature] <= tree.thresholds[node] ? tree.left_children[node]
                                                        : tree.right_children[node];
    out.phi[feature] += means[next] - means[node];
    node = next;
  }
  return out;
}

template <typename Scalar, typename Derived>
Attribution<Scalar> saabas_path(const TreeEnsemble<Scalar>& ensemble,
                                const Eigen::MatrixBase<Derived>& x) {
  Attribution<Scalar> out;
  out.phi0 = ensemble.base_score;
  out.phi = Vector<Scalar>::Zero(ensemble.num_features);
  for (const auto& tree : ensemble.trees) out += saabas_path(tree, x, ensemble.num_features);
  return out;
}

/// Weighted squared error of the leaves below `node` around their
/// cover-weighted mean. Treats the covers as a dataset that sits exactly on
/// the leaf values.
template <typename Scalar>
Scalar subtree_sse(const TreeModel<Scalar>& tree, int node) {
  const Scalar mean = node_means(tree)[node];
  Scalar sse = 0;
  std::vector<int> stack{node};
  while (!stack.empty()) {
    const int j = stack.back();
    stack.pop_back();
    if (tree.is_leaf(j)) {
      const Scalar diff = tree.values[j] - mean;
      sse += tree.covers[j] * diff * diff;
    } else {
      stack.push_back(tree.left_children[j]);
      stack.push_back(tree.right_children[j]);
    }
  }
  return sse;
}

/// Per-feature sum of SSE reductions over all splits of all trees. A split's
/// gain SSE(node) - SSE(left) - SSE(right) equals the between-children term
/// n_l n_r / (n_l + n_r) (mean_l - mean_r)^2, which is what is evaluated.
template <typename Scalar>
GlobalImportance<Scalar> gain_importance(const TreeEnsemble<Scalar>& ensemble) {
  GlobalImportance<Scalar> out{ImportanceMethod::kGain,
                               Vector<Scalar>::Zero(ensemble.num_features)};
  for (const auto& tree : ensemble.trees) {
    const Vector<Scalar> means = node_means(tree);
    for (Eigen::Index j = 0; j < tree.num_nodes(); ++j) {
      if (tree.is_leaf(j)) continue;
      const int a = tree.left_children[j];
      const int b = tree.right_children[j];
      const Scalar diff = means[a] - means[b];
      out.scores[tree.split_features[j]] +=
          tree.covers[a] * tree.covers[b] / (tree.covers[a] + tree.covers[b]) * diff * diff;
    }
  }
  return out;
}

template <typename Scalar>
GlobalImportance<Scalar> split_count(const TreeEnsemble<Scalar>& ensemble) {
  GlobalImportance<Scalar> out{ImportanceMethod::kSplitCount,
                               Vector<Scalar>::Zero(ensemble.num_features)};
  for (const auto& tree : ensemble.trees) {
    for (Eigen::Index j = 0; j < tree.num_nodes(); ++j) {
      if (!tree.is_leaf(j)) out.scores[tree.split_features[j]] += 1;
    }
  }
  return out;
}

/// Mean |phi| per feature over the rows of `data` (one instance per row).
template <typename Scalar, typename Derived>
GlobalImportance<Scalar> mean_abs_shap(const TreeEnsemble<Scalar>& ensemble,
                                       const Eigen::MatrixBase<Derived>& data) {
  if (data.rows() == 0) throw std::invalid_argument("mean_abs_shap needs a nonempty dataset");
  GlobalImportance<Scalar> out{ImportanceMethod::kMeanAbsShap,
                               Vector<Scalar>::Zero(ensemble.num_features)};
  for (Eigen::Index r = 0; r < data.rows(); ++r) {
    out.scores += tree_shap(ensemble, data.row(r).transpose()).phi.cwiseAbs();
  }
  out.scores /= static_cast<Scalar>(data.rows());
  return out;
}

}  // namespace treeshap

#endif  // TREESHAP_BASELINES_HPP_
