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

// Dataset CSV files: a header row, then one instance per row. When a file
// has one column more than the model's feature count, the last column is the
// outcome.

#ifndef TREESHAP_DATASET_IO_HPP_
#define TREESHAP_DATASET_IO_HPP_

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace treeshap {

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Dataset {
  std::vector<std::string> header;
  Eigen::MatrixXd features;
  std::optional<Eigen::VectorXd> outcomes;

  Eigen::Index size() const { return features.rows(); }
};

/// With `num_features` < 0 every file is read as features plus a trailing
/// outcome column. Throws DatasetError naming the offending row.
Dataset read_dataset_csv(std::istream& in, int num_features = -1);
Dataset read_dataset_csv(const std::filesystem::path& path, int num_features = -1);

void write_dataset_csv(std::ostream& out, const Eigen::MatrixXd& features,
                       const std::optional<Eigen::VectorXd>& outcomes);

/// Shortest decimal string that parses back to `value`.
std::string format_double(double value);

}  // namespace treeshap

#endif  // TREESHAP_DATASET_IO_HPP_
