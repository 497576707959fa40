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

#include "ppvar/admm.hpp"

#include "ppvar/errors.hpp"
#include "ppvar/ista.hpp"

namespace ppvar {

void AdmmConfig::validate() const {
  if (!(rho > 0)) throw ShapeError("rho must be positive");
  if (lambda < 0) throw ShapeError("lambda must be non-negative");
  if (max_iter < 1) throw ShapeError("max_iter must be positive");
  if (!(tol_primal > 0) || !(tol_dual > 0))
    throw ShapeError("tolerances must be positive");
}

double lasso_objective(const Eigen::MatrixXd& Z, const Eigen::MatrixXd& Y,
                       const Eigen::MatrixXd& B, double lambda) {
  return 0.5 * (Y - Z * B).squaredNorm() + lambda * B.lpNorm<1>();
}

AdmmResult fit_lasso_admm_central(const Eigen::MatrixXd& Z,
                                  const Eigen::MatrixXd& Y,
                                  const AdmmConfig& config) {
  config.validate();
  if (Z.rows() != Y.rows())
    throw ShapeError("Z and Y must have the same number of rows");
  const Eigen::Index m = Z.cols();
  const Eigen::Index n = Y.cols();

  const Eigen::MatrixXd gram =
      Z.transpose() * Z +
      config.rho * Eigen::MatrixXd::Identity(m, m);
  const Eigen::LLT<Eigen::MatrixXd> gram_llt(gram);
  if (gram_llt.info() != Eigen::Success)
    throw NumericalError("Gram matrix factorization failed");
  const Eigen::MatrixXd ZtY = Z.transpose() * Y;

  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m, n);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m, n);
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(m, n);

  AdmmResult result;
  result.history.reserve(static_cast<size_t>(config.max_iter));
  for (int k = 1; k <= config.max_iter; ++k) {
    B = gram_llt.solve(ZtY + config.rho * (H - U));
    const Eigen::MatrixXd H_prev = H;
    H = soft_threshold(B + U, config.lambda / config.rho);
    U += B - H;

    const double primal = (B - H).norm();
    const double dual = config.rho * (H - H_prev).norm();
    result.history.push_back(
        {k, primal, dual, lasso_objective(Z, Y, H, config.lambda)});
    if (config.record_iterates) {
      result.iterates.push_back(H);
      result.states.push_back({B, H, U});
    }
    result.iterations = k;
    if (primal < config.tol_primal && dual < config.tol_dual) {
      result.converged = true;
      break;
    }
  }
  result.coefficients = H;
  return result;
}

}  // namespace ppvar
