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

#ifndef PPVAR_ADMM_HPP_
#define PPVAR_ADMM_HPP_

#include <vector>

#include <Eigen/Dense>

namespace ppvar {

struct AdmmConfig {
  double rho = 1.0;         // augmented-Lagrangian penalty, > 0
  double lambda = 0.0;      // l1 regularizer, >= 0
  int max_iter = 500;
  double tol_primal = 1e-6;
  double tol_dual = 1e-6;
  bool record_iterates = false;  // keep every H^k (small problems only)

  void validate() const;
};

struct AdmmIterationStats {
  int iteration;
  double primal_residual;  // ||B^k - H^k||_F
  double dual_residual;    // rho * ||H^k - H^{k-1}||_F
  double objective;        // 1/2||Y-ZB||^2 + lambda ||H||_1 at the iterate
};

// Snapshot of one splitting iteration (kept only when record_iterates).
struct AdmmState {
  Eigen::MatrixXd B;
  Eigen::MatrixXd H;
  Eigen::MatrixXd U;  // scaled dual
};

struct AdmmResult {
  Eigen::MatrixXd coefficients;  // sparse iterate H at exit
  bool converged = false;
  int iterations = 0;
  std::vector<AdmmIterationStats> history;
  std::vector<Eigen::MatrixXd> iterates;  // H^k when record_iterates
  std::vector<AdmmState> states;          // full B/H/U when record_iterates
};

// Splitting iteration for min 1/2||Y - ZB||_F^2 + lambda ||B||_1:
//   B-step  (Z^T Z + rho I) B = Z^T Y + rho (H - U)
//   H-step  soft-threshold of B + U at lambda / rho
//   U-step  U += B - H
// The Gram factorization is iteration-invariant and computed once.
AdmmResult fit_lasso_admm_central(const Eigen::MatrixXd& Z,
                                  const Eigen::MatrixXd& Y,
                                  const AdmmConfig& config);

double lasso_objective(const Eigen::MatrixXd& Z, const Eigen::MatrixXd& Y,
                       const Eigen::MatrixXd& B, double lambda);

}  // namespace ppvar

#endif  // PPVAR_ADMM_HPP_
