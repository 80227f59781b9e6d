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

#include "treeshap/dataset_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace treeshap {
namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream stream(line);
  while (std::getline(stream, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    cells.push_back(first == std::string::npos ? "" : cell.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell, int row, std::size_t column) {
  double value = 0;
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (cell.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw DatasetError("row " + std::to_string(row) + ", column " + std::to_string(column + 1) +
                       ": \"" + cell + "\" is not a finite number");
  }
  return value;
}

}  // namespace

Dataset read_dataset_csv(std::istream& in, int num_features) {
  Dataset out;
  std::string line;
  if (!std::getline(in, line)) throw DatasetError("empty data file");
  out.header = split_row(line);
  const std::size_t columns = out.header.size();

  bool has_outcome = true;
  if (num_features >= 0) {
    if (columns == static_cast<std::size_t>(num_features)) {
      has_outcome = false;
    } else if (columns != static_cast<std::size_t>(num_features) + 1) {
      throw DatasetError("header has " + std::to_string(columns) + " columns, model expects " +
                         std::to_string(num_features) + " features (plus optional outcome)");
    }
  } else if (columns < 2) {
    throw DatasetError("dataset needs at least one feature column and an outcome column");
  }

  std::vector<std::vector<double>> rows;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_row(line);
    if (cells.size() != columns) {
      throw DatasetError("row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                         " cells, header has " + std::to_string(columns));
    }
    std::vector<double> values(columns);
    for (std::size_t c = 0; c < columns; ++c) values[c] = parse_cell(cells[c], row, c);
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw DatasetError("data file has no instances");

  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto m = static_cast<Eigen::Index>(has_outcome ? columns - 1 : columns);
  out.features.resize(n, m);
  if (has_outcome) out.outcomes = Eigen::VectorXd(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < m; ++c) out.features(r, c) = rows[r][c];
    if (has_outcome) (*out.outcomes)[r] = rows[r][m];
  }
  return out;
}

Dataset read_dataset_csv(const std::filesystem::path& path, int num_features) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open data file " + path.string());
  return read_dataset_csv(in, num_features);
}

void write_dataset_csv(std::ostream& out, const Eigen::MatrixXd& features,
                       const std::optional<Eigen::VectorXd>& outcomes) {
  for (Eigen::Index c = 0; c < features.cols(); ++c) out << (c ? "," : "") << "x" << c;
  if (outcomes) out << ",y";
  out << "\n";
  for (Eigen::Index r = 0; r < features.rows(); ++r) {
    for (Eigen::Index c = 0; c < features.cols(); ++c) {
      out << (c ? "," : "") << format_double(features(r, c));
    }
    if (outcomes) out << "," << format_double((*outcomes)[r]);
    out << "\n";
  }
}

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

}  // namespace treeshap
