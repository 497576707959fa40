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

#ifndef PPVAR_LEAST_SQUARES_HPP_
#define PPVAR_LEAST_SQUARES_HPP_

#include <Eigen/Dense>

namespace ppvar {

// argmin_B ||Y - Z B||_F^2. Rank-deficient systems fall back to the
// minimum-norm solution so degenerate synthetic inputs never abort a run.
Eigen::MatrixXd fit_ls(const Eigen::MatrixXd& Z, const Eigen::MatrixXd& Y);

// (Z^T Z + lambda I)^{-1} Z^T y with lambda > 0.
Eigen::VectorXd fit_ridge(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y,
                          double lambda);
Eigen::MatrixXd fit_ridge(const Eigen::MatrixXd& Z, const Eigen::MatrixXd& Y,
                          double lambda);

}  // namespace ppvar

#endif  // PPVAR_LEAST_SQUARES_HPP_
