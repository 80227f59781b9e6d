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

#include "treeshap/model_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace treeshap {
namespace {

using nlohmann::json;

template <typename T>
std::vector<T> read_array(const json& tree, const char* key, int tree_index) {
  auto it = tree.find(key);
  if (it == tree.end()) throw ModelError(std::string("missing \"") + key + "\"", tree_index);
  if (!it->is_array()) {
    throw ModelError(std::string("\"") + key + "\" is not an array", tree_index);
  }
  std::vector<T> out;
  out.reserve(it->size());
  for (const auto& item : *it) {
    if (!item.is_number()) {
      throw ModelError(std::string("\"") + key + "\" holds a non-number", tree_index);
    }
    if constexpr (std::is_integral_v<T>) {
      if (!item.is_number_integer()) {
        throw ModelError(std::string("\"") + key + "\" holds a non-integer", tree_index);
      }
    }
    out.push_back(item.get<T>());
  }
  return out;
}

Tree parse_tree(const json& doc, int tree_index) {
  if (!doc.is_object()) throw ModelError("tree is not an object", tree_index);
  const auto left = read_array<int>(doc, "children_left", tree_index);
  const auto right = read_array<int>(doc, "children_right", tree_index);
  const auto feature = read_array<int>(doc, "feature", tree_index);
  const auto threshold = read_array<double>(doc, "threshold", tree_index);
  const auto value = read_array<double>(doc, "value", tree_index);
  const auto cover = read_array<double>(doc, "cover", tree_index);

  const std::size_t n = left.size();
  if (right.size() != n || feature.size() != n || threshold.size() != n ||
      value.size() != n || cover.size() != n) {
    throw ModelError("node arrays have unequal lengths", tree_index);
  }

  Tree tree;
  tree.values.resize(n);
  tree.left_children.resize(n);
  tree.right_children.resize(n);
  tree.thresholds.resize(n);
  tree.split_features.resize(n);
  tree.covers.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const bool leaf = left[j] == kLeaf;
    tree.left_children[j] = left[j];
    tree.right_children[j] = right[j];
    tree.covers[j] = cover[j];
    tree.split_features[j] = leaf ? kLeaf : feature[j];
    tree.thresholds[j] = leaf ? 0.0 : threshold[j];
    tree.values[j] = leaf ? value[j] : std::numeric_limits<double>::quiet_NaN();
  }
  return tree;
}

}  // namespace

Ensemble load_ensemble(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ModelError("model document is not an object");

  Ensemble ensemble;
  auto m = doc.find("num_features");
  if (m == doc.end() || !m->is_number_integer()) {
    throw ModelError("\"num_features\" must be an integer");
  }
  ensemble.num_features = m->get<int>();
  if (auto b = doc.find("base_score"); b != doc.end()) {
    if (!b->is_number()) throw ModelError("\"base_score\" must be a number");
    ensemble.base_score = b->get<double>();
  }
  auto trees = doc.find("trees");
  if (trees == doc.end() || !trees->is_array()) throw ModelError("\"trees\" must be an array");
  for (std::size_t t = 0; t < trees->size(); ++t) {
    ensemble.trees.push_back(parse_tree((*trees)[t], static_cast<int>(t)));
  }
  validate(ensemble);
  return ensemble;
}

Ensemble load_ensemble_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_ensemble(buffer.str());
}

std::string to_json(const Ensemble& ensemble, int indent) {
  json doc;
  doc["num_features"] = ensemble.num_features;
  doc["base_score"] = ensemble.base_score;
  doc["trees"] = json::array();
  for (const auto& tree : ensemble.trees) {
    json t;
    const auto n = tree.num_nodes();
    std::vector<int> left(n), right(n), feature(n);
    std::vector<double> threshold(n), value(n), cover(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      left[j] = tree.left_children[j];
      right[j] = tree.right_children[j];
      feature[j] = tree.split_features[j];
      threshold[j] = tree.thresholds[j];
      value[j] = tree.is_leaf(j) ? tree.values[j] : 0.0;
      cover[j] = tree.covers[j];
    }
    t["children_left"] = left;
    t["children_right"] = right;
    t["feature"] = feature;
    t["threshold"] = threshold;
    t["value"] = value;
    t["cover"] = cover;
    doc["trees"].push_back(std::move(t));
  }
  return doc.dump(indent);
}

}  // namespace treeshap
