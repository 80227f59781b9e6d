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

#include "treeshap/clustering.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "treeshap/error.hpp"

namespace treeshap {
namespace {

double ward_cost(double size_a, double size_b, const Eigen::VectorXd& centroid_a,
                 const Eigen::VectorXd& centroid_b) {
  return size_a * size_b / (size_a + size_b) * (centroid_a - centroid_b).squaredNorm();
}

bool lower_pair(std::pair<int, int> a, std::pair<int, int> b) { return a < b; }

std::pair<int, int> ordered(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

}  // namespace

MergeTrace hierarchical_cluster(const Eigen::MatrixXd& points) {
  const int n = static_cast<int>(points.rows());
  if (n < 2) throw std::invalid_argument("hierarchical_cluster needs at least two rows");

  // Slot s holds one active group; a merge reuses the lower slot.
  std::vector<Eigen::VectorXd> centroid(n);
  std::vector<double> size(n, 1.0);
  std::vector<int> id(n);
  std::vector<char> active(n, 1);
  for (int s = 0; s < n; ++s) {
    centroid[s] = points.row(s).transpose();
    id[s] = s;
  }
  Eigen::MatrixXd cost = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      cost(a, b) = cost(b, a) = ward_cost(1, 1, centroid[a], centroid[b]);
    }
  }

  MergeTrace trace;
  trace.merges.reserve(n - 1);
  trace.costs.reserve(n - 1);
  for (int step = 0; step < n - 1; ++step) {
    int best_a = -1;
    int best_b = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a < n; ++a) {
      if (!active[a]) continue;
      for (int b = a + 1; b < n; ++b) {
        if (!active[b]) continue;
        const double c = cost(a, b);
        if (c < best || (c == best && best_a >= 0 && lower_pair(ordered(id[a], id[b]),
                                                 ordered(id[best_a], id[best_b])))) {
          best = c;
          best_a = a;
          best_b = b;
        }
      }
    }

    trace.merges.push_back(ordered(id[best_a], id[best_b]));
    trace.costs.push_back(best);

    const double merged = size[best_a] + size[best_b];
    centroid[best_a] = (size[best_a] * centroid[best_a] + size[best_b] * centroid[best_b]) / merged;
    size[best_a] = merged;
    id[best_a] = n + step;
    active[best_b] = 0;
    for (int s = 0; s < n; ++s) {
      if (!active[s] || s == best_a) continue;
      cost(best_a, s) = cost(s, best_a) = ward_cost(size[best_a], size[s], centroid[best_a],
                                                    centroid[s]);
    }
  }
  return trace;
}

Eigen::VectorXd r2_curve(const std::vector<std::pair<int, int>>& merges,
                         const Eigen::VectorXd& outcomes) {
  const int n = static_cast<int>(outcomes.size());
  if (n < 1 || static_cast<int>(merges.size()) != n - 1) {
    throw std::invalid_argument("r2_curve: " + std::to_string(merges.size()) +
                                " merges do not match " + std::to_string(n) + " outcomes");
  }
  if (outcomes.maxCoeff() == outcomes.minCoeff()) {
    throw DegenerateOutcomeError("outcomes have zero variance; R^2 is undefined");
  }
  const double mean = outcomes.mean();
  const double total = (outcomes.array() - mean).square().sum();

  std::vector<double> count(2 * n - 1, 0.0);
  std::vector<double> sum(2 * n - 1, 0.0);
  std::vector<char> alive(2 * n - 1, 0);
  for (int i = 0; i < n; ++i) {
    count[i] = 1;
    sum[i] = outcomes[i];
    alive[i] = 1;
  }

  Eigen::VectorXd curve(n);
  curve[n - 1] = 1.0;
  double within = 0.0;
  for (int k = 0; k < n - 1; ++k) {
    const auto [a, b] = merges[k];
    if (a < 0 || b < 0 || a >= n + k || b >= n + k || a == b || !alive[a] || !alive[b]) {
      throw std::invalid_argument("r2_curve: merge " + std::to_string(k) +
                                  " does not join two live groups");
    }
    const double diff = sum[a] / count[a] - sum[b] / count[b];
    within += count[a] * count[b] / (count[a] + count[b]) * diff * diff;
    const int merged = n + k;
    count[merged] = count[a] + count[b];
    sum[merged] = sum[a] + sum[b];
    alive[a] = alive[b] = 0;
    alive[merged] = 1;
    curve[n - 2 - k] = std::max(0.0, 1.0 - within / total);
  }
  // A single group's within sum is the total sum; drop the rounding residue.
  curve[0] = 0.0;
  return curve;
}

double r2_auc(const Eigen::VectorXd& curve) {
  const Eigen::Index n = curve.size();
  if (n < 2) throw std::invalid_argument("r2_auc needs a curve over at least two items");
  double area = 0.0;
  for (Eigen::Index k = 0; k + 1 < n; ++k) area += 0.5 * (curve[k] + curve[k + 1]);
  return area / static_cast<double>(n - 1);
}

SynthDataset synth_dataset(const SynthOptions& options) {
  if (options.num_samples < 2 || options.num_features < 2) {
    throw std::invalid_argument("synth_dataset needs at least two samples and two features");
  }
  if (options.num_informative < 1 || options.num_informative > options.num_features) {
    throw std::invalid_argument("num_informative must lie in [1, num_features]");
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gaussian(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, options.num_informative - 1);

  SynthDataset out;
  out.model.num_features = options.num_features;
  for (int t = 0; t < options.num_trees; ++t) {
    std::vector<int> left, right, split;
    std::vector<double> value, threshold, cover;
    auto add_node = [&]() {
      left.push_back(kLeaf);
      right.push_back(kLeaf);
      split.push_back(kLeaf);
      value.push_back(std::numeric_limits<double>::quiet_NaN());
      threshold.push_back(0);
      cover.push_back(0);
      return static_cast<int>(left.size()) - 1;
    };
    // `lo`/`hi` bound the node's region of the unit cube; `mass` is its volume.
    auto build = [&](auto&& self, int node, int depth, Eigen::VectorXd lo, Eigen::VectorXd hi,
                     double mass) -> void {
      if (depth == options.tree_depth) {
        value[node] = gaussian(rng);
        cover[node] = options.num_samples * mass;
        return;
      }
      const int f = pick(rng);
      const double width = hi[f] - lo[f];
      const double t = lo[f] + (0.2 + 0.6 * unit(rng)) * width;
      split[node] = f;
      threshold[node] = t;
      const int a = add_node();
      const int b = add_node();
      left[node] = a;
      right[node] = b;
      Eigen::VectorXd left_hi = hi;
      left_hi[f] = t;
      Eigen::VectorXd right_lo = lo;
      right_lo[f] = t;
      self(self, a, depth + 1, lo, left_hi, mass * (t - lo[f]) / width);
      self(self, b, depth + 1, right_lo, hi, mass * (hi[f] - t) / width);
      cover[node] = cover[a] + cover[b];
    };
    build(build, add_node(), 0, Eigen::VectorXd::Zero(options.num_features),
          Eigen::VectorXd::Ones(options.num_features), 1.0);

    Tree tree;
    const auto n = static_cast<Eigen::Index>(left.size());
    tree.values = Eigen::Map<Eigen::VectorXd>(value.data(), n);
    tree.left_children = Eigen::Map<Eigen::VectorXi>(left.data(), n);
    tree.right_children = Eigen::Map<Eigen::VectorXi>(right.data(), n);
    tree.thresholds = Eigen::Map<Eigen::VectorXd>(threshold.data(), n);
    tree.split_features = Eigen::Map<Eigen::VectorXi>(split.data(), n);
    tree.covers = Eigen::Map<Eigen::VectorXd>(cover.data(), n);
    out.model.trees.push_back(std::move(tree));
  }
  validate(out.model);

  out.features.resize(options.num_samples, options.num_features);
  for (int r = 0; r < options.num_samples; ++r) {
    for (int c = 0; c < options.num_features; ++c) out.features(r, c) = unit(rng);
  }
  out.outcomes.resize(options.num_samples);
  for (int r = 0; r < options.num_samples; ++r) {
    out.outcomes[r] = predict(out.model, out.features.row(r).transpose());
    if (options.noise > 0) out.outcomes[r] += options.noise * gaussian(rng);
  }
  return out;
}

}  // namespace treeshap
