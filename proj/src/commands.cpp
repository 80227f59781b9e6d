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

#include "treeshap/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <utility>

#include "json.hpp"
#include "treeshap/clustering.hpp"
#include "treeshap/dataset_io.hpp"
#include "treeshap/error.hpp"
#include "treeshap/fixtures.hpp"
#include "treeshap/model_io.hpp"

namespace treeshap {
namespace {

using nlohmann::ordered_json;

// Runs `write` against config.out_path when set, else against `out`.
int write_artifact(const RunConfig& config, std::ostream& out, std::ostream& err,
                   const std::function<void(std::ostream&)>& write) {
  if (config.out_path.empty()) {
    write(out);
    return kExitOk;
  }
  std::ofstream file(config.out_path);
  if (!file) {
    err << "error: cannot write " << config.out_path << "\n";
    return kExitUsage;
  }
  write(file);
  return file ? kExitOk : kExitUsage;
}

ordered_json to_json_array(const Eigen::VectorXd& v) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

std::string short_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

// Loads the model and the data file named in `config`. Returns false after
// printing a diagnostic.
bool load_inputs(const RunConfig& config, std::ostream& err, Ensemble& model, Dataset& data) {
  if (config.model_path.empty() || config.data_path.empty()) {
    err << "error: --model and --data are required\n";
    return false;
  }
  try {
    model = load_ensemble_file(config.model_path);
    data = read_dataset_csv(config.data_path, model.num_features);
  } catch (const ModelError& e) {
    err << "error: " << config.model_path << ": " << e.what() << "\n";
    return false;
  } catch (const DatasetError& e) {
    err << "error: " << config.data_path << ": " << e.what() << "\n";
    return false;
  }
  return true;
}

}  // namespace

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("loglog_slope needs two or more paired points");
  }
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::VectorXd lx(n), ly(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const Eigen::VectorXd cx = lx.array() - lx.mean();
  const Eigen::VectorXd cy = ly.array() - ly.mean();
  return cx.dot(cy) / cx.squaredNorm();
}

int cmd_explain(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.method == Method::kRaw) {
    err << "error: explain supports --method treeshap, path or brute\n";
    return kExitUsage;
  }
  Ensemble model;
  Dataset data;
  if (!load_inputs(config, err, model, data)) return kExitUsage;

  const double tol = config.tol.value_or(kLocalAccuracyRelTol);
  std::vector<std::pair<double, AttributionVector>> rows;
  rows.reserve(data.size());
  for (Eigen::Index r = 0; r < data.size(); ++r) {
    const Eigen::VectorXd x = data.features.row(r).transpose();
    AttributionVector a;
    try {
      a = explain(model, x, config.method, config.oracle_cap);
    } catch (const FeatureCapError& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    const double prediction = predict(model, x);
    if (!locally_accurate(a, prediction, tol)) {
      err << "error: local accuracy violated on data row " << r + 1 << ": base " << a.phi0
          << " + sum(phi) " << a.phi.sum() << " != prediction " << prediction << "\n";
      return kExitFailed;
    }
    rows.emplace_back(prediction, std::move(a));
  }

  return write_artifact(config, out, err, [&](std::ostream& os) {
    if (config.csv) {
      os << "prediction,base_value";
      for (int i = 0; i < model.num_features; ++i) os << ",phi_" << i;
      os << "\n";
      for (const auto& [prediction, a] : rows) {
        os << format_double(prediction) << "," << format_double(a.phi0);
        for (Eigen::Index i = 0; i < a.phi.size(); ++i) os << "," << format_double(a.phi[i]);
        os << "\n";
      }
      return;
    }
    for (const auto& [prediction, a] : rows) {
      ordered_json line;
      line["prediction"] = prediction;
      line["base_value"] = a.phi0;
      line["phi"] = to_json_array(a.phi);
      os << line.dump() << "\n";
    }
  });
}

int cmd_importance(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.model_path.empty()) {
    err << "error: --model is required\n";
    return kExitUsage;
  }
  Ensemble model;
  std::optional<Dataset> data;
  try {
    model = load_ensemble_file(config.model_path);
    if (!config.data_path.empty()) data = read_dataset_csv(config.data_path, model.num_features);
  } catch (const ModelError& e) {
    err << "error: " << config.model_path << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const DatasetError& e) {
    err << "error: " << config.data_path << ": " << e.what() << "\n";
    return kExitUsage;
  }

  const auto gain = gain_importance(model);
  const auto splits = split_count(model);
  std::optional<GlobalImportance<double>> shap;
  if (data) shap = mean_abs_shap(model, data->features);

  return write_artifact(config, out, err, [&](std::ostream& os) {
    if (config.csv) {
      os << "feature,gain,split_count" << (shap ? ",mean_abs_shap" : "") << "\n";
      for (int i = 0; i < model.num_features; ++i) {
        os << i << "," << format_double(gain.scores[i]) << "," << format_double(splits.scores[i]);
        if (shap) os << "," << format_double(shap->scores[i]);
        os << "\n";
      }
      return;
    }
    for (int i = 0; i < model.num_features; ++i) {
      ordered_json line;
      line["feature"] = i;
      line["gain"] = gain.scores[i];
      line["split_count"] = splits.scores[i];
      if (shap) line["mean_abs_shap"] = shap->scores[i];
      os << line.dump() << "\n";
    }
  });
}

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  // (model, instances) pairs to check.
  std::vector<std::pair<Ensemble, Eigen::MatrixXd>> cases;
  if (!config.model_path.empty()) {
    Ensemble model;
    Dataset data;
    if (!load_inputs(config, err, model, data)) return kExitUsage;
    cases.emplace_back(std::move(model), std::move(data.features));
  } else {
    cases.emplace_back(fever_cough_model_a(), fever_cough_instance().transpose());
    cases.emplace_back(fever_cough_model_b(), fever_cough_instance().transpose());
    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<int> trees(1, 5);
    std::uniform_int_distribution<int> features(2, 10);
    std::uniform_int_distribution<int> depth(1, 5);
    for (int c = 0; c < 25; ++c) {
      RandomTreeOptions options;
      options.num_features = features(rng);
      options.max_depth = depth(rng);
      Ensemble model = random_ensemble(rng, trees(rng), options);
      Eigen::MatrixXd xs(10, options.num_features);
      for (int r = 0; r < xs.rows(); ++r) {
        xs.row(r) = random_instance(rng, options.num_features).transpose();
      }
      cases.emplace_back(std::move(model), std::move(xs));
    }
  }

  const double abs_tol = config.tol.value_or(kOracleAbsTol);
  const double rel_tol = kOracleRelTol;
  double max_abs = 0;
  double max_rel = 0;
  std::uint64_t instances = 0;
  std::uint64_t failures = 0;
  std::uint64_t accuracy_failures = 0;
  for (const auto& [model, xs] : cases) {
    for (Eigen::Index r = 0; r < xs.rows(); ++r) {
      const Eigen::VectorXd x = xs.row(r).transpose();
      AttributionVector fast = tree_shap(model, x);
      AttributionVector exact;
      try {
        exact = shapley_brute_force(model, x, config.oracle_cap);
      } catch (const FeatureCapError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
      }
      if (config.corrupt_phi) fast.phi.array() += 1e-3;
      ++instances;
      const double prediction = predict(model, x);
      if (!locally_accurate(fast, prediction) || !locally_accurate(exact, prediction)) {
        ++accuracy_failures;
      }
      bool ok = true;
      for (Eigen::Index i = 0; i < fast.phi.size(); ++i) {
        const double diff = std::abs(fast.phi[i] - exact.phi[i]);
        const double scale = std::max(std::abs(fast.phi[i]), std::abs(exact.phi[i]));
        const double rel = scale > 0 ? diff / scale : 0.0;
        max_abs = std::max(max_abs, diff);
        max_rel = std::max(max_rel, rel);
        if (diff > abs_tol && rel > rel_tol) ok = false;
      }
      if (!ok) ++failures;
    }
  }

  const bool pass = failures == 0 && accuracy_failures == 0;
  const int written = write_artifact(config, out, err, [&](std::ostream& os) {
    ordered_json report;
    report["cases"] = cases.size();
    report["instances"] = instances;
    report["max_abs_deviation"] = max_abs;
    report["max_rel_deviation"] = max_rel;
    report["abs_tolerance"] = abs_tol;
    report["rel_tolerance"] = rel_tol;
    report["mismatched_instances"] = failures;
    report["local_accuracy_failures"] = accuracy_failures;
    report["pass"] = pass;
    os << report.dump() << "\n";
  });
  if (written != kExitOk) return written;
  if (!pass) err << "validation failed: tree_shap disagrees with the exact oracle\n";
  return pass ? kExitOk : kExitFailed;
}

int cmd_demo(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Ensemble models[2] = {fever_cough_model_a(), fever_cough_model_b()};
  const Eigen::VectorXd x = fever_cough_instance();

  struct Row {
    std::string method;
    int feature;
    double a;
    double b;
    // +1 must rise, -1 must fall, 0 must stay, 2 unchecked.
    int expected;
  };
  std::vector<Row> rows;
  double oracle_gap = 0;
  Eigen::Vector2d shap[2], path[2], gain[2], splits[2];
  for (int m = 0; m < 2; ++m) {
    const auto fast = tree_shap(models[m], x);
    const auto exact = shapley_brute_force(models[m], x);
    oracle_gap = std::max(oracle_gap, (fast.phi - exact.phi).cwiseAbs().maxCoeff());
    shap[m] = fast.phi;
    path[m] = saabas_path(models[m], x).phi;
    gain[m] = gain_importance(models[m]).scores;
    splits[m] = split_count(models[m]).scores;
  }
  const std::pair<const char*, Eigen::Vector2d*> methods[] = {
      {"shap", shap}, {"path", path}, {"gain", gain}, {"split_count", splits}};
  for (const auto& [name, values] : methods) {
    const bool is_shap = std::string(name) == "shap";
    rows.push_back({name, kFever, values[0][kFever], values[1][kFever], is_shap ? 0 : 2});
    rows.push_back({name, kCough, values[0][kCough], values[1][kCough], is_shap ? 1 : -1});
  }

  auto direction = [](double a, double b) { return b > a ? 1 : (b < a ? -1 : 0); };
  auto label = [](int d) {
    switch (d) {
      case 1:
        return "up";
      case -1:
        return "down";
      case 0:
        return "same";
      default:
        return "-";
    }
  };

  bool pass = oracle_gap <= kOracleAbsTol;
  const int status = write_artifact(config, out, err, [&](std::ostream& os) {
    os << "Fever/Cough trees at x = (Fever=1, Cough=1); model A is Fever AND Cough,\n"
          "model B adds +10 whenever Cough is present.\n\n";
    char line[128];
    std::snprintf(line, sizeof(line), "%-12s %-8s %10s %10s %8s %8s  %s\n", "method", "feature",
                  "model_a", "model_b", "expected", "observed", "status");
    os << line;
    for (const auto& row : rows) {
      const int observed = direction(row.a, row.b);
      const char* status = "";
      if (row.expected != 2) {
        const bool ok = observed == row.expected;
        pass = pass && ok;
        status = ok ? "PASS" : "FAIL";
      }
      std::snprintf(line, sizeof(line), "%-12s %-8s %10s %10s %8s %8s", row.method.c_str(),
                    row.feature == kFever ? "Fever" : "Cough", short_number(row.a).c_str(),
                    short_number(row.b).c_str(), label(row.expected), label(observed));
      os << line << (*status ? "  " : "") << status << "\n";
    }
    os << "\ntree_shap matches exact oracle: " << (oracle_gap <= kOracleAbsTol ? "yes" : "NO")
       << "\nconsistency: " << (pass ? "PASS" : "FAIL") << "\n";
  });
  if (status != kExitOk) return status;
  return pass ? kExitOk : kExitFailed;
}

int cmd_cluster(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Ensemble model;
  Eigen::MatrixXd features;
  Eigen::VectorXd outcomes;
  try {
    if (!config.data_path.empty()) {
      if (config.model_path.empty() && config.method != Method::kRaw) {
        err << "error: --model is required with --data unless --method raw\n";
        return kExitUsage;
      }
      int num_features = -1;
      if (!config.model_path.empty()) {
        model = load_ensemble_file(config.model_path);
        num_features = model.num_features;
      }
      Dataset data = read_dataset_csv(config.data_path, num_features);
      if (!data.outcomes) {
        err << "error: " << config.data_path << ": no outcome column\n";
        return kExitUsage;
      }
      features = std::move(data.features);
      outcomes = std::move(*data.outcomes);
    } else {
      if (!config.model_path.empty()) {
        err << "error: --model without --data; omit both to use the synthetic dataset\n";
        return kExitUsage;
      }
      SynthOptions options;
      options.seed = config.seed;
      SynthDataset synth = synth_dataset(options);
      model = std::move(synth.model);
      features = std::move(synth.features);
      outcomes = std::move(synth.outcomes);
    }
  } catch (const ModelError& e) {
    err << "error: " << config.model_path << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const DatasetError& e) {
    err << "error: " << config.data_path << ": " << e.what() << "\n";
    return kExitUsage;
  }

  if (features.rows() < 2) {
    err << "error: clustering needs at least two instances\n";
    return kExitUsage;
  }
  Eigen::MatrixXd matrix;
  Eigen::VectorXd curve;
  try {
    matrix = attribution_matrix(model, features, config.method);
    const MergeTrace trace = hierarchical_cluster(matrix);
    curve = r2_curve(trace.merges, outcomes);
  } catch (const FeatureCapError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DegenerateOutcomeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const double auc = r2_auc(curve);

  if (!config.matrix_out_path.empty()) {
    std::ofstream file(config.matrix_out_path);
    if (!file) {
      err << "error: cannot write " << config.matrix_out_path << "\n";
      return kExitUsage;
    }
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) file << (c ? "," : "") << "phi_" << c;
    file << "\n";
    for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
      for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
        file << (c ? "," : "") << format_double(matrix(r, c));
      }
      file << "\n";
    }
  }

  const int status = write_artifact(config, out, err, [&](std::ostream& os) {
    os << "groups_remaining,r2\n";
    for (Eigen::Index g = curve.size(); g >= 1; --g) {
      os << g << "," << format_double(curve[g - 1]) << "\n";
    }
  });
  if (status != kExitOk) return status;
  ordered_json summary;
  summary["method"] = std::string(to_string(config.method));
  summary["instances"] = curve.size();
  summary["r2_auc"] = auc;
  (config.out_path.empty() ? err : out) << summary.dump() << "\n";
  return kExitOk;
}

int cmd_bench(const RunConfig& config, std::ostream& out, std::ostream& err) {
  using Clock = std::chrono::steady_clock;
  struct Point {
    int trees, leaves, depth, features;
    double shap_seconds;
    std::uint64_t shap_ops;
    std::optional<double> brute_seconds;
    std::optional<std::uint64_t> brute_subsets;
  };
  std::vector<Point> points;
  const int brute_limit = std::min(config.oracle_cap, config.bench_brute_max_features);
  std::uint64_t point_index = 0;
  for (int trees : config.bench_trees) {
    for (int depth : config.bench_depths) {
      for (int features : config.bench_features) {
        ++point_index;
        if (trees <= 0 || depth < 0 || features <= 0) continue;
        std::mt19937_64 rng(config.seed * 1000003 + point_index);
        RandomTreeOptions options;
        options.num_features = features;
        options.max_depth = depth;
        options.split_probability = 1.0;
        const Ensemble model = random_ensemble(rng, trees, options);
        const Eigen::VectorXd x = random_instance(rng, features);

        Point p{trees, model.max_leaves(), depth, features, 0, 0, std::nullopt, std::nullopt};
        OpCounter counter;
        auto start = Clock::now();
        const auto phi = tree_shap(model, x, &counter);
        p.shap_seconds = std::chrono::duration<double>(Clock::now() - start).count();
        p.shap_ops = counter.total();
        if (features <= brute_limit) {
          OracleStats stats;
          start = Clock::now();
          const auto exact = shapley_brute_force(model, x, config.oracle_cap, &stats);
          p.brute_seconds = std::chrono::duration<double>(Clock::now() - start).count();
          p.brute_subsets = stats.subset_evaluations;
          if ((exact.phi - phi.phi).cwiseAbs().maxCoeff() >
              kOracleAbsTol * std::max(1.0, exact.phi.cwiseAbs().maxCoeff())) {
            err << "warning: tree_shap and oracle disagree at T=" << trees << " D=" << depth
                << " M=" << features << "\n";
          }
        }
        points.push_back(p);
      }
    }
  }

  return write_artifact(config, out, err, [&](std::ostream& os) {
    os << "T,L,D,M,treeshap_seconds,treeshap_ops,brute_seconds,brute_subsets\n";
    for (const auto& p : points) {
      os << p.trees << "," << p.leaves << "," << p.depth << "," << p.features << ","
         << short_number(p.shap_seconds) << "," << p.shap_ops << ","
         << (p.brute_seconds ? short_number(*p.brute_seconds) : "") << ","
         << (p.brute_subsets ? std::to_string(*p.brute_subsets) : "") << "\n";
    }
    // Per (T, M): work per leaf against depth, and oracle subsets against M.
    std::map<std::pair<int, int>, std::pair<std::vector<double>, std::vector<double>>> by_tm;
    std::map<std::pair<int, int>, std::vector<std::pair<int, double>>> brute_by_td;
    for (const auto& p : points) {
      if (p.depth >= 1) {
        auto& [ds, ops] = by_tm[{p.trees, p.features}];
        ds.push_back(p.depth);
        ops.push_back(static_cast<double>(p.shap_ops) / (static_cast<double>(p.trees) * p.leaves));
      }
      if (p.brute_subsets) {
        brute_by_td[{p.trees, p.depth}].emplace_back(p.features,
                                                     static_cast<double>(*p.brute_subsets));
      }
    }
    for (const auto& [key, series] : by_tm) {
      if (series.first.size() < 2) continue;
      os << "# fit T=" << key.first << " M=" << key.second
         << " treeshap_ops_per_leaf_vs_depth_exponent="
         << short_number(loglog_slope(series.first, series.second)) << "\n";
    }
    for (auto [key, series] : brute_by_td) {
      if (series.size() < 2) continue;
      std::sort(series.begin(), series.end());
      const auto& [m0, s0] = series.front();
      const auto& [m1, s1] = series.back();
      if (m1 == m0) continue;
      os << "# fit T=" << key.first << " D=" << key.second
         << " brute_subsets_growth_per_feature="
         << short_number(std::pow(s1 / s0, 1.0 / (m1 - m0))) << "\n";
    }
  });
}

}  // namespace treeshap
