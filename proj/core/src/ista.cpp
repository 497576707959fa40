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

#include "ppvar/ista.hpp"

#include <Eigen/Eigenvalues>

#include "ppvar/errors.hpp"

namespace ppvar {

Eigen::MatrixXd soft_threshold(const Eigen::MatrixXd& x, double threshold) {
  return x.unaryExpr([threshold](double v) {
    if (v > threshold) return v - threshold;
    if (v < -threshold) return v + threshold;
    return 0.0;
  });
}

Eigen::MatrixXd solve_lasso_ista(const Eigen::MatrixXd& Z,
                                 const Eigen::MatrixXd& V, double penalty,
                                 const Eigen::MatrixXd& B0,
                                 const IstaOptions& options) {
  if (Z.rows() != V.rows()) throw ShapeError("Z and V row counts differ");
  if (B0.rows() != Z.cols() || B0.cols() != V.cols())
    throw ShapeError("warm start has wrong shape");
  const Eigen::MatrixXd G = Z.transpose() * Z;
  double step = options.initial_step;
  if (step <= 0) {
    const double lmax =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(G).eigenvalues()
            .maxCoeff();
    step = lmax > 0 ? 1.0 / lmax : 1.0;
  }
  const Eigen::MatrixXd ZtV = Z.transpose() * V;
  Eigen::MatrixXd B = B0;
  auto objective = [&](const Eigen::MatrixXd& X) {
    return 0.5 * (V - Z * X).squaredNorm() + penalty * X.lpNorm<1>();
  };
  double obj = objective(B);
  for (int it = 0; it < options.max_iter; ++it) {
    const Eigen::MatrixXd grad = G * B - ZtV;
    double s = step;
    Eigen::MatrixXd next = soft_threshold(B - s * grad, s * penalty);
    if (options.backtracking) {
      double next_obj = objective(next);
      int guard = 0;
      while (next_obj > obj + 1e-12 && guard++ < 60) {
        s *= 0.5;
        next = soft_threshold(B - s * grad, s * penalty);
        next_obj = objective(next);
      }
      obj = next_obj;
    }
    const double change = (next - B).cwiseAbs().maxCoeff();
    B = std::move(next);
    if (change < options.tol) break;
    if (!options.backtracking) obj = objective(B);
  }
  return B;
}

}  // namespace ppvar
