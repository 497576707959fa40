// Copyright 2026 The ppvar Authors
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

#include "ppvar/experiment.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

#include "ppvar/admm.hpp"
#include "ppvar/admm_distributed.hpp"
#include "ppvar/ar_model.hpp"
#include "ppvar/errors.hpp"
#include "ppvar/stationary.hpp"
#include "ppvar/var_model.hpp"

namespace ppvar {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct FitOutcome {
  MatrixXd coefficients;
  bool converged = true;
  std::vector<MatrixXd> iterates;
};

FitOutcome fit_estimator(const std::string& estimator, const MatrixXd& Z,
                         const MatrixXd& Y,
                         const std::vector<std::string>& owners, double lambda,
                         double rho, int iters, bool record_iterates) {
  AdmmConfig admm;
  admm.lambda = lambda;
  admm.rho = rho;
  admm.max_iter = iters;
  admm.record_iterates = record_iterates;
  FitOutcome out;
  if (estimator == "lasso_admm") {
    AdmmResult res = fit_lasso_admm_central(Z, Y, admm);
    out.coefficients = std::move(res.coefficients);
    out.converged = res.converged || res.iterations == iters;
    out.iterates = std::move(res.iterates);
  } else if (estimator == "lasso_admm_distributed") {
    DistributedAdmmOptions options;
    options.admm = admm;
    options.record_transcript = false;
    const auto parties = split_parties(Z, Y, owners);
    DistributedAdmmResult res = fit_lasso_admm_distributed(parties, Y, options);
    out.coefficients = res.stacked;
    out.converged = res.converged || res.iterations == iters;
    // Iterates are not tracked party-side; the coefficient trace is only
    // recorded for the centralized path.
  } else {
    throw Error("unknown estimator '" + estimator + "'");
  }
  return out;
}

struct ReplicationOutput {
  std::vector<MetricRow> metrics;
  std::vector<CoefErrorRow> coef_errors;
};

// One replication of a synthetic scenario: simulate, split, fit per noise
// setting, score against per-owner baselines fitted on original data.
ReplicationOutput run_replication(const ExperimentConfig& config,
                                  const VarModel& model, int replication,
                                  double lambda) {
  const std::uint64_t rep_seed = derive_seed(config.seed,
                                             static_cast<std::uint64_t>(replication));
  const TimeSeriesPanel panel =
      simulate_var(model, config.T,
                   MatrixXd::Identity(model.n_series, model.n_series),
                   config.burn_in, rep_seed);
  const int n = model.n_series;
  const LagSpec& lags = model.lag_spec;
  const int L = lags.max_lag();
  const Eigen::Index split =
      config.T - static_cast<Eigen::Index>(
                     std::floor(config.test_fraction *
                                static_cast<double>(config.T)));
  if (split <= L + lags.count() * n || split >= config.T)
    throw ShapeError("split leaves too few rows for fitting");

  const MatrixXd train = panel.values.topRows(split);
  const LagEmbedding full = build_lag_embedding(panel.values, lags);
  const Eigen::Index test_rows = config.T - split;
  const MatrixXd Z_test = full.Z.bottomRows(test_rows);
  const MatrixXd Y_test = full.Y.bottomRows(test_rows);

  // Univariate baselines on original (unmasked) series.
  std::vector<VectorXd> ar_pred(static_cast<size_t>(n));
  std::vector<double> ar_mae(static_cast<size_t>(n)), ar_rmse(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    const VectorXd own_train = train.col(j);
    const VectorXd coef = fit_ar_baseline(own_train, lags);
    const VectorXd all_pred =
        ar_one_step_predictions(panel.values.col(j), lags, coef);
    const VectorXd pred = all_pred.tail(test_rows);
    ar_pred[static_cast<size_t>(j)] = pred;
    ar_mae[static_cast<size_t>(j)] =
        mean_absolute_error(Y_test.col(j), pred);
    ar_rmse[static_cast<size_t>(j)] =
        root_mean_squared_error(Y_test.col(j), pred);
  }

  ReplicationOutput out;
  int setting_index = 0;
  for (const auto& setting : config.noise_grid) {
    MatrixXd fit_data = train;
    if (setting.spec && setting.spec->scale != 0.0)
      fit_data = add_noise(train, *setting.spec,
                           derive_seed(rep_seed,
                                       static_cast<std::uint64_t>(
                                           1000 + setting_index)));
    const LagEmbedding emb = build_lag_embedding(fit_data, lags);
    const bool trace = config.estimator == "lasso_admm";
    const FitOutcome fit =
        fit_estimator(config.estimator, emb.Z, emb.Y, panel.owners, lambda,
                      config.rho, config.admm_iters, trace);
    for (size_t it = 0; it < fit.iterates.size(); ++it)
      out.coef_errors.push_back(
          {config.scenario, replication, setting.name(),
           static_cast<int>(it) + 1,
           (fit.iterates[it] - model.coefficients).cwiseAbs().mean()});

    const MatrixXd pred = Z_test * fit.coefficients;
    for (int j = 0; j < n; ++j) {
      MetricRow row;
      row.scenario = config.scenario;
      row.owner = panel.owners[static_cast<size_t>(j)];
      row.replication = replication;
      row.estimator = config.estimator;
      row.noise = setting.name();
      row.mae = mean_absolute_error(Y_test.col(j), pred.col(j));
      row.rmse = root_mean_squared_error(Y_test.col(j), pred.col(j));
      row.mae_ar = ar_mae[static_cast<size_t>(j)];
      row.rmse_ar = ar_rmse[static_cast<size_t>(j)];
      row.improvement_mae_pct = improvement_pct(row.mae_ar, row.mae);
      row.improvement_rmse_pct = improvement_pct(row.rmse_ar, row.rmse);
      row.converged = fit.converged;
      row.seed = rep_seed;
      out.metrics.push_back(std::move(row));
    }
    ++setting_index;
  }
  return out;
}

double select_lambda(const ExperimentConfig& config, const VarModel& model) {
  if (config.lambda >= 0) return config.lambda;
  const std::vector<double> grid = {0.01, 0.1, 1.0, 10.0, 100.0};
  ExperimentConfig probe = config;
  probe.noise_grid = {NoiseSetting{}};
  double best_lambda = grid.front();
  double best_mae = std::numeric_limits<double>::infinity();
  for (double lambda : grid) {
    const ReplicationOutput out = run_replication(probe, model, 0, lambda);
    double mae = 0.0;
    for (const auto& row : out.metrics) mae += row.mae;
    if (mae < best_mae) {
      best_mae = mae;
      best_lambda = lambda;
    }
  }
  return best_lambda;
}

VarModel scenario_model(const ExperimentConfig& config, int replication) {
  if (config.scenario == "var2") return var2_scenario();
  if (config.scenario == "var10") return var10_sparse_scenario();
  if (config.scenario == "random2")
    return generate_stationary_coefficients(
        2, 2, derive_seed(config.seed, 700000u + static_cast<std::uint64_t>(
                                           replication)));
  if (config.scenario == "random10")
    return generate_stationary_coefficients(
        10, 3, derive_seed(config.seed, 700000u + static_cast<std::uint64_t>(
                                            replication)));
  throw Error("unknown scenario '" + config.scenario + "'");
}

// Bounded worker pool over replications; rows merge in replication order.
std::vector<ReplicationOutput> run_all_replications(
    const ExperimentConfig& config, double lambda, bool fresh_model_per_rep) {
  std::vector<ReplicationOutput> outputs(
      static_cast<size_t>(config.replications));
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = std::min<unsigned>(
      config.threads > 0 ? static_cast<unsigned>(config.threads) : hw,
      static_cast<unsigned>(config.replications));
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const int r = next.fetch_add(1);
        if (r >= config.replications || failed.load()) return;
        try {
          const VarModel model =
              fresh_model_per_rep ? scenario_model(config, r)
                                  : scenario_model(config, 0);
          outputs[static_cast<size_t>(r)] =
              run_replication(config, model, r, lambda);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(error_mutex);
          failed.store(true);
          error_message = e.what();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failed.load()) throw Error("replication failed: " + error_message);
  return outputs;
}

}  // namespace

std::string NoiseSetting::name() const {
  if (!spec || spec->scale == 0.0) return "none";
  return noise_family_name(spec->family) + ":" + format_double(spec->scale);
}

void ExperimentConfig::validate() const {
  if (replications < 1) throw ShapeError("replications must be >= 1");
  if (!(test_fraction > 0 && test_fraction < 1))
    throw ShapeError("test fraction must lie in (0, 1)");
  if (noise_grid.empty()) throw ShapeError("noise grid must be non-empty");
  if (admm_iters < 1) throw ShapeError("admm_iters must be >= 1");
}

double mean_absolute_error(const VectorXd& truth, const VectorXd& predicted) {
  if (truth.size() != predicted.size()) throw ShapeError("length mismatch");
  return (truth - predicted).cwiseAbs().mean();
}

double root_mean_squared_error(const VectorXd& truth,
                               const VectorXd& predicted) {
  if (truth.size() != predicted.size()) throw ShapeError("length mismatch");
  return std::sqrt((truth - predicted).squaredNorm() /
                   static_cast<double>(truth.size()));
}

double improvement_pct(double err_baseline, double err_model) {
  return 100.0 * (err_baseline - err_model) / err_baseline;
}

SyntheticResult run_synthetic(const ExperimentConfig& config) {
  config.validate();
  if (config.scenario != "var2" && config.scenario != "var10")
    throw Error("run_synthetic expects a fixed-matrix scenario");
  const VarModel model = scenario_model(config, 0);
  const double lambda = select_lambda(config, model);
  const auto outputs = run_all_replications(config, lambda, false);
  SyntheticResult result;
  for (const auto& out : outputs) {
    result.metrics.insert(result.metrics.end(), out.metrics.begin(),
                          out.metrics.end());
    result.coefficient_errors.insert(result.coefficient_errors.end(),
                                     out.coef_errors.begin(),
                                     out.coef_errors.end());
  }
  return result;
}

RandomCoefficientsResult run_random_coefficients(
    const ExperimentConfig& config) {
  config.validate();
  if (config.scenario != "random2" && config.scenario != "random10")
    throw Error("run_random_coefficients expects a generated scenario");
  const double lambda =
      config.lambda >= 0
          ? config.lambda
          : select_lambda(config, scenario_model(config, 0));
  const auto outputs = run_all_replications(config, lambda, true);
  RandomCoefficientsResult result;
  for (const auto& out : outputs)
    result.metrics.insert(result.metrics.end(), out.metrics.begin(),
                          out.metrics.end());

  result.summary.header = {"scenario", "noise", "owner_cases",
                           "baseline_wins", "baseline_win_fraction"};
  for (const auto& setting : config.noise_grid) {
    const std::string name = setting.name();
    long cases = 0, wins = 0;
    for (const auto& row : result.metrics) {
      if (row.noise != name) continue;
      ++cases;
      if (row.improvement_mae_pct < 0.0) ++wins;
    }
    result.summary.rows.push_back(
        {config.scenario, name, std::to_string(cases), std::to_string(wins),
         cases ? format_double(static_cast<double>(wins) /
                               static_cast<double>(cases))
               : "0"});
  }
  return result;
}

std::vector<MetricRow> run_solar(const std::string& csv_path,
                                 const ExperimentConfig& config) {
  config.validate();
  PanelReadOptions read_options;
  read_options.drop_missing_rows = true;
  const PanelReadResult loaded = read_panel_csv(csv_path, read_options);
  const TimeSeriesPanel& panel = loaded.panel;
  const LagSpec& lags = config.solar_lags;
  const int n = static_cast<int>(panel.n_series());
  const Eigen::Index T = panel.length();
  if (lags.max_lag() >= T)
    throw InvalidLagError("panel shorter than the configured lags");

  const Eigen::Index split =
      T - static_cast<Eigen::Index>(
              std::floor(config.test_fraction * static_cast<double>(T)));
  const MatrixXd train = panel.values.topRows(split);
  const LagEmbedding full = build_lag_embedding(panel.values, lags);
  const Eigen::Index test_rows = T - split;
  const MatrixXd Z_test = full.Z.bottomRows(test_rows);
  const MatrixXd Y_test = full.Y.bottomRows(test_rows);

  double lambda = config.lambda;
  if (lambda < 0) {
    // Validation pick on the clean fit only.
    const std::vector<double> grid = {0.01, 0.1, 1.0, 10.0, 100.0};
    double best = std::numeric_limits<double>::infinity();
    for (double cand : grid) {
      const LagEmbedding emb = build_lag_embedding(train, lags);
      const FitOutcome fit =
          fit_estimator("lasso_admm", emb.Z, emb.Y, panel.owners, cand,
                        config.rho, config.admm_iters, false);
      const MatrixXd pred = Z_test * fit.coefficients;
      double mae = 0.0;
      for (int j = 0; j < n; ++j)
        mae += mean_absolute_error(Y_test.col(j), pred.col(j));
      if (mae < best) {
        best = mae;
        lambda = cand;
      }
    }
  }

  std::vector<double> ar_mae(static_cast<size_t>(n)), ar_rmse(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    const VectorXd coef = fit_ar_baseline(train.col(j), lags);
    const VectorXd pred =
        ar_one_step_predictions(panel.values.col(j), lags, coef).tail(test_rows);
    ar_mae[static_cast<size_t>(j)] = mean_absolute_error(Y_test.col(j), pred);
    ar_rmse[static_cast<size_t>(j)] =
        root_mean_squared_error(Y_test.col(j), pred);
  }

  std::vector<MetricRow> rows;
  int setting_index = 0;
  for (const auto& setting : config.noise_grid) {
    MatrixXd fit_data = train;
    if (setting.spec && setting.spec->scale != 0.0)
      fit_data = add_noise(train, *setting.spec,
                           derive_seed(config.seed,
                                       static_cast<std::uint64_t>(
                                           9000 + setting_index)));
    const LagEmbedding emb = build_lag_embedding(fit_data, lags);
    const FitOutcome fit =
        fit_estimator(config.estimator == "lasso_admm_distributed"
                          ? "lasso_admm_distributed"
                          : "lasso_admm",
                      emb.Z, emb.Y, panel.owners, lambda, config.rho,
                      config.admm_iters, false);
    const MatrixXd pred = Z_test * fit.coefficients;
    for (int j = 0; j < n; ++j) {
      MetricRow row;
      row.scenario = "solar";
      row.owner = panel.owners[static_cast<size_t>(j)];
      row.replication = 0;
      row.estimator = config.estimator;
      row.noise = setting.name();
      row.mae = mean_absolute_error(Y_test.col(j), pred.col(j));
      row.rmse = root_mean_squared_error(Y_test.col(j), pred.col(j));
      row.mae_ar = ar_mae[static_cast<size_t>(j)];
      row.rmse_ar = ar_rmse[static_cast<size_t>(j)];
      row.improvement_mae_pct = improvement_pct(row.mae_ar, row.mae);
      row.improvement_rmse_pct = improvement_pct(row.rmse_ar, row.rmse);
      row.converged = fit.converged;
      row.seed = config.seed;
      rows.push_back(std::move(row));
    }
    ++setting_index;
  }
  return rows;
}

Table metric_table(const std::vector<MetricRow>& rows) {
  Table table;
  table.header = {"scenario",     "owner",   "replication",
                  "estimator",    "noise",   "mae",
                  "rmse",         "mae_ar",  "rmse_ar",
                  "improvement_mae_pct", "improvement_rmse_pct",
                  "converged",    "seed"};
  for (const auto& r : rows)
    table.rows.push_back({r.scenario, r.owner, std::to_string(r.replication),
                          r.estimator, r.noise, format_double(r.mae),
                          format_double(r.rmse), format_double(r.mae_ar),
                          format_double(r.rmse_ar),
                          format_double(r.improvement_mae_pct),
                          format_double(r.improvement_rmse_pct),
                          r.converged ? "true" : "false",
                          std::to_string(r.seed)});
  return table;
}

Table coef_error_summary(const std::vector<CoefErrorRow>& rows) {
  // Aggregate over replications, keyed by (noise, iteration); key order
  // follows first appearance so output stays deterministic.
  std::vector<std::pair<std::string, int>> keys;
  std::map<std::pair<std::string, int>, std::vector<double>> groups;
  std::string scenario;
  for (const auto& row : rows) {
    scenario = row.scenario;
    const auto key = std::make_pair(row.noise, row.iteration);
    if (groups.find(key) == groups.end()) keys.push_back(key);
    groups[key].push_back(row.mean_abs_error);
  }
  Table table;
  table.header = {"scenario", "noise", "iteration", "replications", "mean",
                  "sd"};
  for (const auto& key : keys) {
    const auto& values = groups[key];
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    const double sd =
        values.size() > 1
            ? std::sqrt(var / (static_cast<double>(values.size()) - 1.0))
            : 0.0;
    table.rows.push_back({scenario, key.first, std::to_string(key.second),
                          std::to_string(values.size()),
                          format_double(mean), format_double(sd)});
  }
  return table;
}

Table coef_error_table(const std::vector<CoefErrorRow>& rows) {
  Table table;
  table.header = {"scenario", "replication", "noise", "iteration",
                  "mean_abs_error"};
  for (const auto& r : rows)
    table.rows.push_back({r.scenario, std::to_string(r.replication), r.noise,
                          std::to_string(r.iteration),
                          format_double(r.mean_abs_error)});
  return table;
}

}  // namespace ppvar
