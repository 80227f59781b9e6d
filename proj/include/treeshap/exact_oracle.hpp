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

// Exact Shapley attribution by enumerating every feature subset.
//
// The payoff of a subset S is the cover-weighted estimate of E[f(x) | x_S]:
// walk the tree, follow x at splits on features in S, and at splits on
// features outside S take both branches weighted by the child's share of
// the parent's cover. Cost is O(T * N * 2^M) for N nodes per tree, so this
// is a verification tool, not an explainer.

#ifndef TREESHAP_EXACT_ORACLE_HPP_
#define TREESHAP_EXACT_ORACLE_HPP_

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "treeshap/attribution.hpp"
#include "treeshap/error.hpp"
#include "treeshap/model.hpp"

namespace treeshap {

inline constexpr int kMaxSubsetFeatures = 30;
inline constexpr int kDefaultOracleCap = 20;

/// A set of feature indexes in [0, 30), stored as a bitmask.
class FeatureSubset {
 public:
  constexpr FeatureSubset() = default;
  constexpr explicit FeatureSubset(std::uint32_t bits) : bits_(bits) {}

  static FeatureSubset all(int num_features) {
    if (num_features < 0 || num_features > kMaxSubsetFeatures) {
      throw std::invalid_argument("subset bitmask holds at most 30 features");
    }
    return FeatureSubset(num_features == 0 ? 0u : (~0u >> (32 - num_features)));
  }

  constexpr bool contains(int feature) const {
    return feature >= 0 && feature < kMaxSubsetFeatures && ((bits_ >> feature) & 1u);
  }
  constexpr FeatureSubset with(int feature) const {
    return FeatureSubset(bits_ | (1u << feature));
  }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr std::uint32_t bits() const { return bits_; }

  constexpr bool operator==(const FeatureSubset&) const = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Shapley kernel |S|! (M - |S| - 1)! / M!, evaluated as 1 / (M * C(M-1, |S|))
/// so no factorial is ever formed.
inline double subset_weight(int subset_size, int num_features) {
  if (num_features < 1 || subset_size < 0 || subset_size > num_features - 1) {
    throw std::domain_error("subset_weight needs 0 <= |S| <= M-1 and M >= 1, got |S|=" +
                            std::to_string(subset_size) + " M=" + std::to_string(num_features));
  }
  const int n = num_features - 1;
  const int k = std::min(subset_size, n - subset_size);
  double binom = 1.0;
  for (int i = 1; i <= k; ++i) binom = binom * (n - k + i) / i;
  return 1.0 / (num_features * binom);
}

namespace internal {

template <typename Scalar, typename Derived>
Scalar conditional_expectation(const TreeModel<Scalar>& tree, const Eigen::MatrixBase<Derived>& x,
                               FeatureSubset subset, int node, Scalar weight) {
  if (tree.is_leaf(node)) return weight * tree.values[node];
  const int feature = tree.split_features[node];
  const int left = tree.left_children[node];
  const int right = tree.right_children[node];
  if (subset.contains(feature)) {
    const int next = x[feature] <= tree.thresholds[node] ? left : right;
    return conditional_expectation(tree, x, subset, next, weight);
  }
  const Scalar cover = tree.covers[node];
  return conditional_expectation(tree, x, subset, left, weight * tree.covers[left] / cover) +
         conditional_expectation(tree, x, subset, right, weight * tree.covers[right] / cover);
}

}  // namespace internal

/// Cover-weighted estimate of E[f(x) | x_S] for one tree.
template <typename Scalar, typename Derived>
Scalar expvalue(const TreeModel<Scalar>& tree, const Eigen::MatrixBase<Derived>& x,
                FeatureSubset subset) {
  return internal::conditional_expectation(tree, x, subset, 0, Scalar(1));
}

template <typename Scalar, typename Derived>
Scalar expvalue(const TreeEnsemble<Scalar>& ensemble, const Eigen::MatrixBase<Derived>& x,
                FeatureSubset subset) {
  Scalar out = ensemble.base_score;
  for (const auto& tree : ensemble.trees) out += expvalue(tree, x, subset);
  return out;
}

struct OracleStats {
  std::uint64_t subset_evaluations = 0;
};

/// Shapley values of an arbitrary M-player game given as a set function.
/// Every subset is evaluated exactly once, in ascending bitmask order.
template <typename Scalar, typename ValueFn>
Attribution<Scalar> shapley_from_set_function(int num_features, ValueFn&& value,
                                              OracleStats* stats = nullptr) {
  if (num_features < 0 || num_features > kMaxSubsetFeatures) {
    throw FeatureCapError("cannot enumerate subsets of " + std::to_string(num_features) +
                          " features");
  }
  const std::uint32_t count = 1u << num_features;
  std::vector<Scalar> payoff(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) payoff[mask] = value(FeatureSubset(mask));
  if (stats != nullptr) stats->subset_evaluations += count;

  std::vector<double> kernel(num_features);
  for (int k = 0; k < num_features; ++k) kernel[k] = subset_weight(k, num_features);

  Attribution<Scalar> out;
  out.phi0 = payoff[0];
  out.phi = Vector<Scalar>::Zero(num_features);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    const int size = std::popcount(mask);
    if (size == num_features) continue;
    const Scalar weight = static_cast<Scalar>(kernel[size]);
    for (int i = 0; i < num_features; ++i) {
      if ((mask >> i) & 1u) continue;
      out.phi[i] += weight * (payoff[mask | (1u << i)] - payoff[mask]);
    }
  }
  return out;
}

/// Exact SHAP values of a single tree over `num_features` features.
template <typename Scalar, typename Derived>
Attribution<Scalar> shapley_brute_force(const TreeModel<Scalar>& tree,
                                        const Eigen::MatrixBase<Derived>& x, int num_features,
                                        int feature_cap = kDefaultOracleCap,
                                        OracleStats* stats = nullptr) {
  if (num_features > feature_cap) {
    throw FeatureCapError(std::to_string(num_features) + " features exceed the oracle cap of " +
                          std::to_string(feature_cap) + "; use tree_shap");
  }
  return shapley_from_set_function<Scalar>(
      num_features, [&](FeatureSubset s) { return expvalue(tree, x, s); }, stats);
}

template <typename Scalar, typename Derived>
Attribution<Scalar> shapley_brute_force(const TreeEnsemble<Scalar>& ensemble,
                                        const Eigen::MatrixBase<Derived>& x,
                                        int feature_cap = kDefaultOracleCap,
                                        OracleStats* stats = nullptr) {
  if (ensemble.num_features > feature_cap) {
    throw FeatureCapError(std::to_string(ensemble.num_features) +
                          " features exceed the oracle cap of " + std::to_string(feature_cap) +
                          "; use tree_shap");
  }
  return shapley_from_set_function<Scalar>(
      ensemble.num_features, [&](FeatureSubset s) { return expvalue(ensemble, x, s); }, stats);
}

}  // namespace treeshap

#endif  // TREESHAP_EXACT_ORACLE_HPP_
