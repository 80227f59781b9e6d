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

#ifndef TREESHAP_ERROR_HPP_
#define TREESHAP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace treeshap {

/// Raised when a model document cannot be parsed or violates a tree
/// invariant. `tree()` and `node()` are -1 when the error is not tied to a
/// particular tree or node.
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& what, int tree = -1, int node = -1)
      : std::runtime_error(Format(what, tree, node)), tree_(tree), node_(node) {}

  int tree() const { return tree_; }
  int node() const { return node_; }

 private:
  static std::string Format(const std::string& what, int tree, int node) {
    std::string prefix;
    if (tree >= 0) prefix += "tree " + std::to_string(tree) + ": ";
    if (node >= 0) prefix += "node " + std::to_string(node) + ": ";
    return prefix + what;
  }

  int tree_;
  int node_;
};

/// The exact oracle was asked to enumerate more features than its cap.
class FeatureCapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Outcomes with zero variance make the R^2 curve undefined.
class DegenerateOutcomeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace treeshap

#endif  // TREESHAP_ERROR_HPP_
