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

#include "ppvar/var_model.hpp"

#include <Eigen/Eigenvalues>

#include "ppvar/errors.hpp"
#include "ppvar/rng.hpp"

namespace ppvar {

void VarModel::validate() const {
  lag_spec.validate();
  if (n_series < 1) throw ShapeError("n_series must be positive");
  if (coefficients.rows() !=
      static_cast<Eigen::Index>(n_series) * lag_spec.count())
    throw ShapeError("coefficient rows must equal n_series * lag count");
  if (coefficients.cols() != n_series)
    throw ShapeError("coefficient columns must equal n_series");
  if (!coefficients.allFinite())
    throw ShapeError("coefficients contain non-finite entries");
}

double companion_spectral_radius(const VarModel& model) {
  model.validate();
  const int n = model.n_series;
  const int L = model.lag_spec.max_lag();
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(n) * L, static_cast<Eigen::Index>(n) * L);
  // Column-vector convention: A_l = (B^(l))^T; skipped lags stay zero.
  for (int li = 0; li < model.lag_spec.count(); ++li) {
    const int l = model.lag_spec.lags[static_cast<size_t>(li)];
    comp.block(0, static_cast<Eigen::Index>(l - 1) * n, n, n) =
        model.coefficients.middleRows(static_cast<Eigen::Index>(li) * n, n)
            .transpose();
  }
  if (L > 1)
    comp.block(n, 0, static_cast<Eigen::Index>(n) * (L - 1),
               static_cast<Eigen::Index>(n) * (L - 1)) =
        Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n) * (L - 1),
                                  static_cast<Eigen::Index>(n) * (L - 1));
  const Eigen::VectorXcd ev =
      Eigen::EigenSolver<Eigen::MatrixXd>(comp, false).eigenvalues();
  double radius = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    radius = std::max(radius, std::abs(ev(i)));
  return radius;
}

TimeSeriesPanel simulate_var(const VarModel& model, Eigen::Index T,
                             const Eigen::MatrixXd& error_cov, int burn_in,
                             std::uint64_t seed) {
  model.validate();
  if (T < 1) throw ShapeError("T must be positive");
  if (burn_in < 0) throw ShapeError("burn_in must be non-negative");
  const int n = model.n_series;
  if (error_cov.rows() != n || error_cov.cols() != n)
    throw ShapeError("error covariance must be n x n");
  if (!error_cov.isApprox(error_cov.transpose(), 1e-12))
    throw ShapeError("error covariance must be symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(error_cov);
  if (llt.info() != Eigen::Success)
    throw ShapeError("error covariance must be positive definite");
  const double radius = companion_spectral_radius(model);
  if (radius >= 1.0)
    throw StationarityError("companion spectral radius " +
                            std::to_string(radius) + " is not below 1");
  const Eigen::MatrixXd chol = llt.matrixL();

  const int L = model.lag_spec.max_lag();
  const Eigen::Index total = static_cast<Eigen::Index>(L) + burn_in + T;
  Eigen::MatrixXd buf = Eigen::MatrixXd::Zero(total, n);
  Rng rng(seed);
  Eigen::VectorXd z(n);
  for (Eigen::Index t = L; t < total; ++t) {
    Eigen::RowVectorXd y = Eigen::RowVectorXd::Zero(n);
    for (int li = 0; li < model.lag_spec.count(); ++li) {
      const int l = model.lag_spec.lags[static_cast<size_t>(li)];
      y += buf.row(t - l) *
           model.coefficients.middleRows(static_cast<Eigen::Index>(li) * n, n);
    }
    for (int j = 0; j < n; ++j) z(j) = rng.normal();
    y += (chol * z).transpose();
    buf.row(t) = y;
  }
  TimeSeriesPanel panel;
  panel.values = buf.bottomRows(T);
  panel.owners = default_owner_names(n);
  panel.validate();
  return panel;
}

Eigen::MatrixXd forecast(const VarModel& model, const Eigen::MatrixXd& history,
                         int horizon) {
  model.validate();
  if (horizon < 1) throw ShapeError("horizon must be positive");
  if (history.cols() != model.n_series)
    throw ShapeError("history column count does not match model");
  const int L = model.lag_spec.max_lag();
  if (history.rows() < L)
    throw InvalidLagError("history shorter than max lag");
  const int n = model.n_series;
  Eigen::MatrixXd ext(history.rows() + horizon, n);
  ext.topRows(history.rows()) = history;
  for (int h = 0; h < horizon; ++h) {
    const Eigen::Index t = history.rows() + h;
    Eigen::RowVectorXd y = Eigen::RowVectorXd::Zero(n);
    for (int li = 0; li < model.lag_spec.count(); ++li) {
      const int l = model.lag_spec.lags[static_cast<size_t>(li)];
      y += ext.row(t - l) *
           model.coefficients.middleRows(static_cast<Eigen::Index>(li) * n, n);
    }
    ext.row(t) = y;
  }
  return ext.bottomRows(horizon);
}

Eigen::MatrixXd forecast(const VarModel& model, const TimeSeriesPanel& history,
                         int horizon) {
  return forecast(model, history.values, horizon);
}

VarModel var2_scenario() {
  VarModel model;
  model.n_series = 2;
  model.lag_spec = LagSpec::consecutive(2);
  model.coefficients.resize(4, 2);
  model.coefficients << 0.5, 0.3,    //
      0.3, 0.75,                     //
      -0.3, -0.05,                   //
      -0.1, -0.4;
  return model;
}

VarModel var10_sparse_scenario() {
  const int n = 10;
  VarModel model;
  model.n_series = n;
  model.lag_spec = LagSpec::consecutive(3);
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(3 * n, n);
  // Dominant self-dependencies at every lag (30 entries)...
  for (int i = 0; i < n; ++i) {
    B(i, i) = 0.45;
    B(n + i, i) = -0.25;
    B(2 * n + i, i) = 0.15;
  }
  // ...plus a sparse ring of cross couplings at lag 1 and two extra links
  // (12 entries), for 42/300 = 14% non-null coefficients.
  for (int i = 0; i < n; ++i) B(i, (i + 1) % n) = 0.12;
  B(0, 2) = 0.1;
  B(5, 7) = 0.1;
  model.coefficients = B;
  return model;
}

}  // namespace ppvar
