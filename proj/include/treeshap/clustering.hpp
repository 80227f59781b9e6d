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

// Supervised clustering: cluster instances in attribution space and score
// each dendrogram level by how much outcome variance the group means explain.

#ifndef TREESHAP_CLUSTERING_HPP_
#define TREESHAP_CLUSTERING_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "treeshap/explain.hpp"
#include "treeshap/model.hpp"

namespace treeshap {

/// Row i explains row i of `data`. kRaw returns `data` unchanged.
template <typename Derived>
Eigen::MatrixXd attribution_matrix(const Ensemble& ensemble, const Eigen::MatrixBase<Derived>& data,
                                   Method method) {
  if (data.rows() == 0) throw std::invalid_argument("attribution_matrix needs a nonempty dataset");
  if (method == Method::kRaw) return data;
  Eigen::MatrixXd out(data.rows(), ensemble.num_features);
  for (Eigen::Index r = 0; r < data.rows(); ++r) {
    out.row(r) = explain(ensemble, data.row(r).transpose(), method).phi.transpose();
  }
  return out;
}

/// Dendrogram over n items. Items are groups 0..n-1; the group created by
/// merge k gets id n + k.
struct MergeTrace {
  std::vector<std::pair<int, int>> merges;
  /// Ward merge cost (increase in within-group sum of squares) per merge.
  std::vector<double> costs;
  /// r2[k] is the R^2 with k + 1 groups left; empty until r2_curve() runs.
  Eigen::VectorXd r2;

  int num_items() const { return static_cast<int>(merges.size()) + 1; }
};

/// Ward-linkage agglomerative clustering of the rows of `points` on
/// Euclidean distance. Each step merges the pair with the smallest increase
/// in within-group sum of squares; exact ties go to the lowest (id, id) pair.
MergeTrace hierarchical_cluster(const Eigen::MatrixXd& points);

/// Replays `merges` and records R^2 = 1 - SS_within / SS_total, where every
/// group predicts its mean outcome. Result is indexed like MergeTrace::r2.
/// Throws DegenerateOutcomeError if the outcomes have zero variance.
Eigen::VectorXd r2_curve(const std::vector<std::pair<int, int>>& merges,
                         const Eigen::VectorXd& outcomes);

/// Trapezoidal area under R^2 plotted against groups remaining, with the
/// group axis rescaled to [0, 1]. A linear decline scores 0.5.
double r2_auc(const Eigen::VectorXd& curve);

struct SynthOptions {
  std::uint64_t seed = 0;
  int num_samples = 200;
  int num_features = 20;
  /// Features 0..num_informative-1 drive the outcome; the rest are noise.
  int num_informative = 5;
  /// Standard deviation of the Gaussian outcome noise.
  double noise = 0.5;
  int num_trees = 10;
  int tree_depth = 3;
};

struct SynthDataset {
  /// num_samples x num_features, entries uniform on [0, 1).
  Eigen::MatrixXd features;
  Eigen::VectorXd outcomes;
  /// The model generating the outcomes. Covers are the expected number of
  /// samples reaching each node under the uniform feature distribution.
  Ensemble model;
};

SynthDataset synth_dataset(const SynthOptions& options);

}  // namespace treeshap

#endif  // TREESHAP_CLUSTERING_HPP_
