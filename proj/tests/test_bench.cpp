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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "ppvar/errors.hpp"
#include "ppvar/experiment.hpp"
#include "ppvar/stationary.hpp"
#include "ppvar/svg_plot.hpp"
#include "ppvar/var_model.hpp"

namespace {

std::string table_to_string(const ppvar::Table& t) {
  std::ostringstream os;
  ppvar::write_table_csv(os, t);
  return os.str();
}

ppvar::ExperimentConfig small_config() {
  ppvar::ExperimentConfig config;
  config.scenario = "var2";
  config.replications = 3;
  config.T = 800;
  config.burn_in = 200;
  config.lambda = 1.0;
  config.admm_iters = 50;
  config.estimator = "lasso_admm";
  config.seed = 11;
  config.threads = 2;
  ppvar::NoiseSpec laplace;
  laplace.family = ppvar::NoiseFamily::kLaplace;
  laplace.scale = 0.6;
  config.noise_grid = {ppvar::NoiseSetting{},
                       ppvar::NoiseSetting{laplace}};
  return config;
}

}  // namespace

TEST_CASE("metric identity: improvement recomputes from the error columns") {
  const auto result = ppvar::run_synthetic(small_config());
  REQUIRE_FALSE(result.metrics.empty());
  for (const auto& row : result.metrics) {
    CHECK(row.improvement_mae_pct ==
          ppvar::improvement_pct(row.mae_ar, row.mae));
    CHECK(row.improvement_rmse_pct ==
          ppvar::improvement_pct(row.rmse_ar, row.rmse));
    CHECK(row.seed != 0);  // every row carries its seed
  }
  // 3 replications x 2 settings x 2 owners.
  CHECK(result.metrics.size() == 12);
  // Coefficient-error traces cover every iteration actually run (fits may
  // meet the tolerances before the cap).
  CHECK_FALSE(result.coefficient_errors.empty());
  CHECK(result.coefficient_errors.size() <= static_cast<size_t>(3 * 2 * 50));
  for (const auto& row : result.coefficient_errors) {
    CHECK(row.iteration >= 1);
    CHECK(row.iteration <= 50);
  }
}

TEST_CASE("coefficient-error summary aggregates over replications") {
  const auto result = ppvar::run_synthetic(small_config());
  const auto summary = ppvar::coef_error_summary(result.coefficient_errors);
  CHECK(summary.header ==
        std::vector<std::string>{"scenario", "noise", "iteration",
                                 "replications", "mean", "sd"});
  REQUIRE_FALSE(summary.rows.empty());
  // Iteration 1 exists for every fit, so it aggregates all 3 replications.
  bool found_full_group = false;
  for (const auto& row : summary.rows)
    if (row[2] == "1" && row[3] == "3") found_full_group = true;
  CHECK(found_full_group);
}

TEST_CASE("synthetic runs are bitwise deterministic") {
  const auto a = ppvar::run_synthetic(small_config());
  const auto b = ppvar::run_synthetic(small_config());
  CHECK(table_to_string(ppvar::metric_table(a.metrics)) ==
        table_to_string(ppvar::metric_table(b.metrics)));
  CHECK(table_to_string(ppvar::coef_error_table(a.coefficient_errors)) ==
        table_to_string(ppvar::coef_error_table(b.coefficient_errors)));
}

TEST_CASE("clean collaborative fit beats the univariate baseline") {
  ppvar::ExperimentConfig config = small_config();
  config.T = 4000;
  config.replications = 2;
  config.noise_grid = {ppvar::NoiseSetting{}};
  const auto result = ppvar::run_synthetic(config);
  int improved = 0;
  for (const auto& row : result.metrics)
    if (row.improvement_mae_pct > 0) ++improved;
  CHECK(improved == static_cast<int>(result.metrics.size()));
}

TEST_CASE("noise shrinks estimated coefficients toward zero") {
  // Mean |Bhat| under masking stays below the clean fit's mean |Bhat|.
  ppvar::ExperimentConfig config = small_config();
  config.T = 4000;
  config.replications = 1;
  const auto result = ppvar::run_synthetic(config);
  double clean_final = 0, noisy_final = 0;
  int clean_last = 0, noisy_last = 0;
  for (const auto& row : result.coefficient_errors) {
    if (row.noise == "none" && row.iteration > clean_last) {
      clean_last = row.iteration;
      clean_final = row.mean_abs_error;
    }
    if (row.noise != "none" && row.iteration > noisy_last) {
      noisy_last = row.iteration;
      noisy_final = row.mean_abs_error;
    }
  }
  CHECK(clean_last >= 1);
  CHECK(noisy_last >= 1);
  CHECK(noisy_final > clean_final);
}

TEST_CASE("results do not depend on the worker-pool width") {
  ppvar::ExperimentConfig config = small_config();
  config.threads = 1;
  const auto serial = ppvar::run_synthetic(config);
  config.threads = 4;
  const auto parallel = ppvar::run_synthetic(config);
  CHECK(table_to_string(ppvar::metric_table(serial.metrics)) ==
        table_to_string(ppvar::metric_table(parallel.metrics)));
}

TEST_CASE("masking hits the ten-owner scenario harder than the two-owner one") {
  ppvar::NoiseSpec laplace;
  laplace.family = ppvar::NoiseFamily::kLaplace;
  laplace.scale = 0.6;
  auto run = [&](const std::string& scenario) {
    ppvar::ExperimentConfig config;
    config.scenario = scenario;
    config.replications = 6;
    config.T = 4000;
    config.burn_in = 300;
    config.lambda = 1.0;
    config.admm_iters = 50;
    config.estimator = "lasso_admm";
    config.seed = 7;
    config.noise_grid = {ppvar::NoiseSetting{}, ppvar::NoiseSetting{laplace}};
    const auto result = ppvar::run_synthetic(config);
    double clean = 0, noisy = 0;
    int clean_count = 0, noisy_count = 0;
    for (const auto& row : result.metrics) {
      if (row.noise == "none") {
        clean += row.improvement_mae_pct;
        ++clean_count;
      } else {
        noisy += row.improvement_mae_pct;
        ++noisy_count;
      }
    }
    return std::make_pair(clean / clean_count, noisy / noisy_count);
  };
  const auto [clean2, noisy2] = run("var2");
  const auto [clean10, noisy10] = run("var10");
  // Collaboration pays off on original data and erodes under masking.
  CHECK(clean2 > 0.0);
  CHECK(noisy2 < clean2);
  CHECK(noisy10 < clean10);
  // The mostly-sparse ten-owner dependencies drown first: masking pushes
  // the collaborative fit below the univariate baseline there.
  CHECK(noisy10 < 0.0);
  const double relative_loss2 = (clean2 - noisy2) / std::abs(clean2);
  const double relative_loss10 = (clean10 - noisy10) / std::abs(clean10);
  CHECK(relative_loss10 > relative_loss2);
}

TEST_CASE("random-coefficient study reports baseline win fractions") {
  ppvar::ExperimentConfig config = small_config();
  config.scenario = "random2";
  config.replications = 4;
  config.T = 1500;
  const auto result = ppvar::run_random_coefficients(config);
  CHECK(result.metrics.size() == 16);
  REQUIRE(result.summary.rows.size() == 2);
  for (const auto& row : result.summary.rows) {
    const double fraction = std::stod(row[4]);
    CHECK(fraction >= 0.0);
    CHECK(fraction <= 1.0);
  }
}

TEST_CASE("solar study: ingestion, metrics and masking settings") {
  // Synthetic stand-in with the real file's layout: a timestamp column and
  // one column per plant.
  const auto dir = std::filesystem::temp_directory_path() / "ppvar_solar";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "plants.csv").string();
  const int plants = 5;
  const auto model = ppvar::generate_stationary_coefficients(plants, 2, 3);
  const auto panel = ppvar::simulate_var(
      model, 900, Eigen::MatrixXd::Identity(plants, plants), 300, 5);
  {
    std::ofstream os(path);
    os << "timestamp";
    for (int j = 1; j <= plants; ++j) os << ",plant" << j;
    os << "\n";
    for (int t = 0; t < 900; ++t) {
      os << t;
      for (int j = 0; j < plants; ++j) os << ',' << panel.values(t, j);
      os << "\n";
    }
  }
  ppvar::ExperimentConfig config;
  config.scenario = "solar";
  config.lambda = 1.0;
  config.admm_iters = 60;
  config.estimator = "lasso_admm";
  config.solar_lags = ppvar::LagSpec({1, 2, 24});
  ppvar::NoiseSpec laplace;
  laplace.family = ppvar::NoiseFamily::kLaplace;
  laplace.scale = 0.6;
  config.noise_grid = {ppvar::NoiseSetting{}, ppvar::NoiseSetting{laplace}};
  const auto rows = ppvar::run_solar(path, config);
  CHECK(rows.size() == static_cast<size_t>(2 * plants));
  for (const auto& row : rows) CHECK(std::isfinite(row.mae));
}

TEST_CASE("solar ingestion rejects non-finite cells with row numbers") {
  const auto dir = std::filesystem::temp_directory_path() / "ppvar_solar_bad";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "bad.csv").string();
  {
    std::ofstream os(path);
    os << "timestamp,p1,p2\n";
    os << "1,0.5,0.5\n2,inf,0.5\n3,0.5,0.5\n";
  }
  ppvar::ExperimentConfig config;
  config.scenario = "solar";
  CHECK_THROWS_AS(ppvar::run_solar(path, config), ppvar::IngestionError);
}

TEST_CASE("boxplot writer emits an SVG document") {
  const auto dir = std::filesystem::temp_directory_path() / "ppvar_svg";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "box.svg").string();
  ppvar::write_boxplot_svg(path, "demo",
                           {{"none", {1.0, 2.0, 3.0, 4.0}},
                            {"laplace:0.6", {-1.0, 0.5, 2.0}}});
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  CHECK(ss.str().find("<svg") != std::string::npos);
  CHECK(ss.str().find("</svg>") != std::string::npos);
}
