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

#ifndef TREESHAP_EXPLAIN_HPP_
#define TREESHAP_EXPLAIN_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "treeshap/attribution.hpp"
#include "treeshap/baselines.hpp"
#include "treeshap/exact_oracle.hpp"
#include "treeshap/model.hpp"
#include "treeshap/tree_shap.hpp"

namespace treeshap {

enum class Method {
  kTreeShap,
  kPath,
  kBruteForce,
  /// Raw feature values; only meaningful as a clustering space.
  kRaw,
};

inline std::string_view to_string(Method method) {
  switch (method) {
    case Method::kTreeShap:
      return "treeshap";
    case Method::kPath:
      return "path";
    case Method::kBruteForce:
      return "brute";
    case Method::kRaw:
      return "raw";
  }
  return "unknown";
}

inline std::optional<Method> parse_method(std::string_view name) {
  if (name == "treeshap") return Method::kTreeShap;
  if (name == "path") return Method::kPath;
  if (name == "brute") return Method::kBruteForce;
  if (name == "raw") return Method::kRaw;
  return std::nullopt;
}

/// Per-instance attribution with the chosen method. kRaw is rejected.
template <typename Scalar, typename Derived>
Attribution<Scalar> explain(const TreeEnsemble<Scalar>& ensemble,
                            const Eigen::MatrixBase<Derived>& x, Method method,
                            int oracle_cap = kDefaultOracleCap) {
  switch (method) {
    case Method::kTreeShap:
      return tree_shap(ensemble, x);
    case Method::kPath:
      return saabas_path(ensemble, x);
    case Method::kBruteForce:
      return shapley_brute_force(ensemble, x, oracle_cap);
    case Method::kRaw:
      break;
  }
  throw std::invalid_argument("method " + std::string(to_string(method)) +
                              " does not produce attributions");
}

}  // namespace treeshap

#endif  // TREESHAP_EXPLAIN_HPP_
