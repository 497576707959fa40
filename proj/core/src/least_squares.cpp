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

#include "ppvar/least_squares.hpp"

#include "ppvar/errors.hpp"

namespace ppvar {

Eigen::MatrixXd fit_ls(const Eigen::MatrixXd& Z, const Eigen::MatrixXd& Y) {
  if (Z.rows() != Y.rows())
    throw ShapeError("Z and Y must have the same number of rows");
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(Z);
  return cod.solve(Y);
}

Eigen::MatrixXd fit_ridge(const Eigen::MatrixXd& Z, const Eigen::MatrixXd& Y,
                          double lambda) {
  if (Z.rows() != Y.rows())
    throw ShapeError("Z and Y must have the same number of rows");
  if (!(lambda > 0)) throw ShapeError("ridge penalty must be positive");
  const Eigen::Index m = Z.cols();
  const Eigen::MatrixXd G =
      Z.transpose() * Z + lambda * Eigen::MatrixXd::Identity(m, m);
  return Eigen::LLT<Eigen::MatrixXd>(G).solve(Z.transpose() * Y);
}

Eigen::VectorXd fit_ridge(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y,
                          double lambda) {
  const Eigen::MatrixXd B = fit_ridge(Z, Eigen::MatrixXd(y), lambda);
  return B.col(0);
}

}  // namespace ppvar
