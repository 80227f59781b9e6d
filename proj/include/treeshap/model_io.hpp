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

// JSON model documents.
//
//   {"num_features": M, "base_score": b,            // base_score optional
//    "trees": [{"children_left":  [int], "children_right": [int],
//               "feature": [int], "threshold": [number],
//               "value": [number], "cover": [number]}, ...]}
//
// -1 marks leaves in the child and feature arrays. `value` is ignored on
// internal nodes and `threshold` on leaves.

#ifndef TREESHAP_MODEL_IO_HPP_
#define TREESHAP_MODEL_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "treeshap/model.hpp"

namespace treeshap {

/// Parses and validates a model document. Throws ModelError.
Ensemble load_ensemble(std::string_view document);

Ensemble load_ensemble_file(const std::filesystem::path& path);

/// Serializes to the document format. Doubles are written with round-trip
/// precision, so load_ensemble(to_json(e)) == e.
std::string to_json(const Ensemble& ensemble, int indent = -1);

}  // namespace treeshap

#endif  // TREESHAP_MODEL_IO_HPP_
