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

#include "ppvar/gradient_descent.hpp"

#include <Eigen/Eigenvalues>

#include "ppvar/errors.hpp"

namespace ppvar {

double gradient_lipschitz_constant(const Eigen::MatrixXd& Z) {
  const Eigen::MatrixXd G = Z.transpose() * Z;
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(G).eigenvalues()
      .maxCoeff();
}

GdResult fit_gd_noisy(const Eigen::MatrixXd& Z, const Eigen::MatrixXd& Y,
                      double eta, const std::optional<NoiseSpec>& noise,
                      int iterations, std::uint64_t seed) {
  if (Z.rows() != Y.rows())
    throw ShapeError("Z and Y must have the same number of rows");
  if (!(eta > 0)) throw ShapeError("step size must be positive");
  if (iterations < 1) throw ShapeError("iterations must be positive");
  if (noise) noise->validate();

  const double lipschitz = gradient_lipschitz_constant(Z);
  GdResult result;
  result.step_size_ok = eta <= 1.0 / lipschitz * (1.0 + 1e-12);

  const Eigen::MatrixXd G = Z.transpose() * Z;
  const Eigen::MatrixXd ZtY = Z.transpose() * Y;
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(Z.cols(), Y.cols());
  Rng rng(seed);
  const bool noisy = noise && noise->scale != 0.0;
  result.objective_history.reserve(static_cast<size_t>(iterations));
  for (int k = 0; k < iterations; ++k) {
    Eigen::MatrixXd grad = G * B - ZtY;
    if (noisy)
      grad += sample_noise_matrix(grad.rows(), grad.cols(), *noise, rng);
    B -= eta * grad;
    result.objective_history.push_back(0.5 * (Y - Z * B).squaredNorm());
  }
  result.coefficients = std::move(B);
  return result;
}

}  // namespace ppvar
