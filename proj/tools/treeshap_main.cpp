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

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "treeshap/commands.hpp"

int main(int argc, char** argv) {
  using namespace treeshap;

  CLI::App app{"Exact SHAP attributions for decision-tree ensembles"};
  app.require_subcommand(1);

  RunConfig config;
  std::string method = "treeshap";
  std::optional<double> tol;
  const std::map<std::string, Method> explain_methods{
      {"treeshap", Method::kTreeShap}, {"path", Method::kPath}, {"brute", Method::kBruteForce}};
  const std::map<std::string, Method> cluster_methods{{"treeshap", Method::kTreeShap},
                                                      {"path", Method::kPath},
                                                      {"brute", Method::kBruteForce},
                                                      {"raw", Method::kRaw}};

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", config.out_path, "Write the result here instead of stdout");
    cmd->add_option("--seed", config.seed, "Random seed")->capture_default_str();
    cmd->add_option("--oracle-cap", config.oracle_cap,
                    "Largest feature count the exact oracle accepts")
        ->capture_default_str();
  };

  auto* explain_cmd = app.add_subcommand("explain", "Explain each instance of a dataset");
  explain_cmd->add_option("--model", config.model_path, "Model JSON")->required();
  explain_cmd->add_option("--data", config.data_path, "Instances CSV")->required();
  explain_cmd->add_option("--method", method, "treeshap | path | brute")
      ->check(CLI::IsMember(explain_methods));
  explain_cmd->add_option("--tol", tol, "Local accuracy relative tolerance");
  explain_cmd->add_flag("--csv", config.csv, "Flat CSV instead of JSON lines");
  add_common(explain_cmd);

  auto* importance_cmd =
      app.add_subcommand("importance", "Global gain, split-count and mean |SHAP| importance");
  importance_cmd->add_option("--model", config.model_path, "Model JSON")->required();
  importance_cmd->add_option("--data", config.data_path, "Instances CSV for mean |SHAP|");
  importance_cmd->add_flag("--csv", config.csv, "CSV instead of JSON lines");
  add_common(importance_cmd);

  auto* validate_cmd = app.add_subcommand(
      "validate", "Compare tree_shap with the exact oracle (seeded random suite by default)");
  validate_cmd->add_option("--model", config.model_path, "Model JSON");
  validate_cmd->add_option("--data", config.data_path, "Instances CSV");
  validate_cmd->add_option("--tol", tol, "Absolute tolerance");
  validate_cmd->add_flag("--corrupt-phi", config.corrupt_phi,
                         "Perturb tree_shap output (negative control)")
      ->group("");
  add_common(validate_cmd);

  auto* demo_cmd = app.add_subcommand("demo", "Fever/Cough consistency table");
  add_common(demo_cmd);

  auto* cluster_cmd = app.add_subcommand(
      "cluster", "Supervised clustering R^2 curve (synthetic data when --data is absent)");
  cluster_cmd->add_option("--model", config.model_path, "Model JSON");
  cluster_cmd->add_option("--data", config.data_path, "CSV whose last column is the outcome");
  cluster_cmd->add_option("--method", method, "treeshap | path | brute | raw")
      ->check(CLI::IsMember(cluster_methods));
  cluster_cmd->add_option("--matrix-out", config.matrix_out_path,
                          "Also write the clustered attribution matrix");
  add_common(cluster_cmd);

  auto* bench_cmd = app.add_subcommand("bench", "Timing and operation counts on full trees");
  bench_cmd->add_option("--trees", config.bench_trees, "Tree counts T")->delimiter(',');
  bench_cmd->add_option("--depths", config.bench_depths, "Depths D")->delimiter(',');
  bench_cmd->add_option("--features", config.bench_features, "Feature counts M")->delimiter(',');
  bench_cmd->add_option("--brute-max-features", config.bench_brute_max_features,
                        "Time the exact oracle up to this many features")
      ->capture_default_str();
  add_common(bench_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  config.method = cluster_methods.at(method);
  config.tol = tol;

  try {
    if (explain_cmd->parsed()) return cmd_explain(config, std::cout, std::cerr);
    if (importance_cmd->parsed()) return cmd_importance(config, std::cout, std::cerr);
    if (validate_cmd->parsed()) return cmd_validate(config, std::cout, std::cerr);
    if (demo_cmd->parsed()) return cmd_demo(config, std::cout, std::cerr);
    if (cluster_cmd->parsed()) return cmd_cluster(config, std::cout, std::cerr);
    if (bench_cmd->parsed()) return cmd_bench(config, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
