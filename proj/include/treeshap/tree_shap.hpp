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

// Polynomial-time exact SHAP values for tree ensembles.
//
// A single traversal tracks, for every leaf, which fraction of all feature
// subsets of each cardinality reaches it. The path of unique split features
// from the root carries per-feature "zero" and "one" fractions (the share of
// subsets without / with the feature that flow down this branch) and one
// cardinality weight per position. Descending extends the path; leaves
// unwind each feature in turn to read off its marginal contribution.
// Cost is O(L D^2) per tree.
//
// The results are identical to shapley_brute_force() in exact_oracle.hpp,
// which is what the tests check.

#ifndef TREESHAP_TREE_SHAP_HPP_
#define TREESHAP_TREE_SHAP_HPP_

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "treeshap/attribution.hpp"
#include "treeshap/model.hpp"

namespace treeshap {

/// Feature index stored in the path element that seeds every traversal.
inline constexpr int kRootFeature = -1;

template <typename Scalar>
struct PathElement {
  int feature = kRootFeature;
  Scalar zero_fraction = 0;
  Scalar one_fraction = 0;
  Scalar weight = 0;

  bool operator==(const PathElement&) const = default;
};

template <typename Scalar>
using PathState = std::vector<PathElement<Scalar>>;

/// Machine-independent work counter for complexity measurements.
struct OpCounter {
  std::uint64_t node_visits = 0;
  /// Inner-loop iterations of extend, unwind and the unwound weight sum.
  std::uint64_t path_ops = 0;

  std::uint64_t total() const { return node_visits + path_ops; }
};

namespace internal {

// `path` holds `depth` elements on entry and `depth + 1` on exit.
template <typename Scalar>
void extend_in_place(PathElement<Scalar>* path, int depth, Scalar zero_fraction,
                     Scalar one_fraction, int feature, OpCounter* counter) {
  path[depth] = {feature, zero_fraction, one_fraction, Scalar(depth == 0 ? 1 : 0)};
  const Scalar length = static_cast<Scalar>(depth + 1);
  for (int i = depth - 1; i >= 0; --i) {
    path[i + 1].weight += one_fraction * path[i].weight * static_cast<Scalar>(i + 1) / length;
    path[i].weight = zero_fraction * path[i].weight * static_cast<Scalar>(depth - i) / length;
  }
  if (counter != nullptr) counter->path_ops += depth;
}

// `path` holds `depth + 1` elements on entry; the first `depth` are valid on
// exit.
template <typename Scalar>
void unwind_in_place(PathElement<Scalar>* path, int depth, int index, OpCounter* counter) {
  const Scalar one_fraction = path[index].one_fraction;
  const Scalar zero_fraction = path[index].zero_fraction;
  const Scalar length = static_cast<Scalar>(depth + 1);
  Scalar next = path[depth].weight;
  for (int j = depth - 1; j >= 0; --j) {
    if (one_fraction != 0) {
      const Scalar tmp = path[j].weight;
      path[j].weight = next * length / (static_cast<Scalar>(j + 1) * one_fraction);
      next = tmp - path[j].weight * zero_fraction * static_cast<Scalar>(depth - j) / length;
    } else {
      path[j].weight = path[j].weight * length / (zero_fraction * static_cast<Scalar>(depth - j));
    }
  }
  for (int j = index; j < depth; ++j) {
    path[j].feature = path[j + 1].feature;
    path[j].zero_fraction = path[j + 1].zero_fraction;
    path[j].one_fraction = path[j + 1].one_fraction;
  }
  if (counter != nullptr) counter->path_ops += depth;
}

// Sum of the weights unwind_in_place would leave behind, without writing.
template <typename Scalar>
Scalar unwound_sum(const PathElement<Scalar>* path, int depth, int index, OpCounter* counter) {
  const Scalar one_fraction = path[index].one_fraction;
  const Scalar zero_fraction = path[index].zero_fraction;
  const Scalar length = static_cast<Scalar>(depth + 1);
  Scalar total = 0;
  if (one_fraction != 0) {
    Scalar next = path[depth].weight;
    for (int j = depth - 1; j >= 0; --j) {
      const Scalar w = next * length / (static_cast<Scalar>(j + 1) * one_fraction);
      total += w;
      next = path[j].weight - w * zero_fraction * static_cast<Scalar>(depth - j) / length;
    }
  } else {
    for (int j = depth - 1; j >= 0; --j) {
      total += path[j].weight * length / (zero_fraction * static_cast<Scalar>(depth - j));
    }
  }
  if (counter != nullptr) counter->path_ops += depth;
  return total;
}

template <typename Scalar, typename Derived>
void recurse(const TreeModel<Scalar>& tree, const Eigen::MatrixBase<Derived>& x,
             Vector<Scalar>& phi, int node, PathElement<Scalar>* path, int depth,
             Scalar zero_fraction, Scalar one_fraction, int feature, OpCounter* counter) {
  if (counter != nullptr) ++counter->node_visits;
  extend_in_place(path, depth, zero_fraction, one_fraction, feature, counter);

  if (tree.is_leaf(node)) {
    const Scalar value = tree.values[node];
    for (int i = 1; i <= depth; ++i) {
      const Scalar w = unwound_sum(path, depth, i, counter);
      phi[path[i].feature] += w * (path[i].one_fraction - path[i].zero_fraction) * value;
    }
    return;
  }

  const int split = tree.split_features[node];
  const bool go_left = x[split] <= tree.thresholds[node];
  const int hot = go_left ? tree.left_children[node] : tree.right_children[node];
  const int cold = go_left ? tree.right_children[node] : tree.left_children[node];

  // Path length after the extension above.
  int length = depth + 1;
  Scalar incoming_zero = 1;
  Scalar incoming_one = 1;
  for (int k = 1; k <= depth; ++k) {
    if (path[k].feature == split) {
      incoming_zero = path[k].zero_fraction;
      incoming_one = path[k].one_fraction;
      unwind_in_place(path, depth, k, counter);
      --length;
      break;
    }
  }

  const Scalar cover = tree.covers[node];
  PathElement<Scalar>* child = path + depth + 1;
  std::copy(path, path + length, child);
  recurse(tree, x, phi, hot, child, length, incoming_zero * tree.covers[hot] / cover,
          incoming_one, split, counter);
  std::copy(path, path + length, child);
  recurse(tree, x, phi, cold, child, length, incoming_zero * tree.covers[cold] / cover,
          Scalar(0), split, counter);
}

}  // namespace internal

/// Returns `path` with one more element for `feature`. The cardinality
/// weights are split between subsets that include the feature (scaled by
/// `one_fraction`) and subsets that do not (scaled by `zero_fraction`).
template <typename Scalar>
PathState<Scalar> extend(const PathState<Scalar>& path, Scalar zero_fraction, Scalar one_fraction,
                         int feature) {
  PathState<Scalar> out(path.size() + 1);
  std::copy(path.begin(), path.end(), out.begin());
  internal::extend_in_place(out.data(), static_cast<int>(path.size()), zero_fraction,
                            one_fraction, feature, nullptr);
  return out;
}

/// Inverse of extend() for the element at `position` (0-based). Throws
/// std::domain_error if that element has both fractions zero, which no
/// traversal produces.
template <typename Scalar>
PathState<Scalar> unwind(const PathState<Scalar>& path, int position) {
  if (position < 0 || position >= static_cast<int>(path.size())) {
    throw std::out_of_range("unwind position " + std::to_string(position) + " outside path of " +
                            std::to_string(path.size()));
  }
  if (path[position].one_fraction == 0 && path[position].zero_fraction == 0) {
    throw std::domain_error("cannot unwind an element with zero and one fractions both 0");
  }
  PathState<Scalar> out = path;
  internal::unwind_in_place(out.data(), static_cast<int>(path.size()) - 1, position, nullptr);
  out.pop_back();
  return out;
}

/// Sum of unwind(path, position) weights in O(len) without building the path.
template <typename Scalar>
Scalar unwound_weight_sum(const PathState<Scalar>& path, int position) {
  if (position < 0 || position >= static_cast<int>(path.size())) {
    throw std::out_of_range("unwind position outside path");
  }
  if (path[position].one_fraction == 0 && path[position].zero_fraction == 0) {
    throw std::domain_error("cannot unwind an element with zero and one fractions both 0");
  }
  return internal::unwound_sum(path.data(), static_cast<int>(path.size()) - 1, position, nullptr);
}

/// SHAP values of one tree. phi0 is the tree's cover-weighted mean output.
template <typename Scalar, typename Derived>
Attribution<Scalar> tree_shap(const TreeModel<Scalar>& tree, const Eigen::MatrixBase<Derived>& x,
                              int num_features, OpCounter* counter = nullptr) {
  Attribution<Scalar> out;
  out.phi0 = expected_value(tree);
  out.phi = Vector<Scalar>::Zero(num_features);
  const int depth = tree.depth();
  std::vector<PathElement<Scalar>> buffer((depth + 2) * (depth + 3) / 2);
  internal::recurse(tree, x, out.phi, 0, buffer.data(), 0, Scalar(1), Scalar(1), kRootFeature,
                    counter);
  return out;
}

/// SHAP values of an ensemble: per-tree values summed in tree order, with
/// phi0 = expected_value(ensemble).
template <typename Scalar, typename Derived>
Attribution<Scalar> tree_shap(const TreeEnsemble<Scalar>& ensemble,
                              const Eigen::MatrixBase<Derived>& x, OpCounter* counter = nullptr) {
  Attribution<Scalar> out;
  out.phi0 = expected_value(ensemble);
  out.phi = Vector<Scalar>::Zero(ensemble.num_features);
  std::vector<PathElement<Scalar>> buffer;
  for (const auto& tree : ensemble.trees) {
    const int depth = tree.depth();
    buffer.resize(std::max<std::size_t>(buffer.size(), (depth + 2) * (depth + 3) / 2));
    internal::recurse(tree, x, out.phi, 0, buffer.data(), 0, Scalar(1), Scalar(1), kRootFeature,
                      counter);
  }
  return out;
}

}  // namespace treeshap

#endif  // TREESHAP_TREE_SHAP_HPP_
