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

#ifndef PPVAR_ISTA_HPP_
#define PPVAR_ISTA_HPP_

#include <Eigen/Dense>

namespace ppvar {

// Elementwise shrinkage toward zero by `threshold`.
Eigen::MatrixXd soft_threshold(const Eigen::MatrixXd& x, double threshold);

struct IstaOptions {
  int max_iter = 20000;
  double tol = 1e-8;          // max elementwise change between iterates
  bool backtracking = true;   // halve the step until sufficient decrease
  double initial_step = 0.0;  // 0 = 1 / lambda_max(Z^T Z)
};

// Proximal-gradient solve of min_B 1/2 ||V - Z B||_F^2 + penalty ||B||_1,
// warm-started at B0.
Eigen::MatrixXd solve_lasso_ista(const Eigen::MatrixXd& Z,
                                 const Eigen::MatrixXd& V, double penalty,
                                 const Eigen::MatrixXd& B0,
                                 const IstaOptions& options = {});

}  // namespace ppvar

#endif  // PPVAR_ISTA_HPP_
