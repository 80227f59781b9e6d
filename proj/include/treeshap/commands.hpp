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

// Subcommands behind the `treeshap` binary. Each writes its primary artifact
// to `out` (or to config.out_path when set) and diagnostics to `err`, and
// returns a process exit code.

#ifndef TREESHAP_COMMANDS_HPP_
#define TREESHAP_COMMANDS_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "treeshap/explain.hpp"

namespace treeshap {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailed = 2;

/// Oracle agreement tolerances: a value passes if either bound holds.
inline constexpr double kOracleAbsTol = 1e-8;
inline constexpr double kOracleRelTol = 1e-10;

struct RunConfig {
  std::string model_path;
  std::string data_path;
  std::string out_path;
  Method method = Method::kTreeShap;
  std::uint64_t seed = 0;
  /// Overrides kOracleAbsTol (validate) or kLocalAccuracyRelTol (explain).
  std::optional<double> tol;
  bool csv = false;
  int oracle_cap = kDefaultOracleCap;

  // cluster
  std::string matrix_out_path;

  // bench
  std::vector<int> bench_trees{1000};
  std::vector<int> bench_depths{2, 3, 4, 5, 6};
  std::vector<int> bench_features{100};
  /// Brute force is timed only up to this many features.
  int bench_brute_max_features = 12;

  // validate; perturbs every tree_shap result to exercise the failure path.
  bool corrupt_phi = false;
};

int cmd_explain(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_importance(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_demo(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_cluster(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_bench(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace treeshap

#endif  // TREESHAP_COMMANDS_HPP_
