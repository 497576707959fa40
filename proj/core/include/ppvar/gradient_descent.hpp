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

#ifndef PPVAR_GRADIENT_DESCENT_HPP_
#define PPVAR_GRADIENT_DESCENT_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ppvar/noise.hpp"

namespace ppvar {

struct GdResult {
  Eigen::MatrixXd coefficients;
  // False when eta exceeds 1/L with L the largest eigenvalue of Z^T Z; the
  // iteration still runs, flagged instead of aborted.
  bool step_size_ok = true;
  std::vector<double> objective_history;
};

// Gradient iteration on 1/2 ||Y - Z B||_F^2 from B = 0. With a noise spec,
// every update perturbs the gradient with a fresh elementwise draw.
GdResult fit_gd_noisy(const Eigen::MatrixXd& Z, const Eigen::MatrixXd& Y,
                      double eta, const std::optional<NoiseSpec>& noise,
                      int iterations, std::uint64_t seed);

// Largest eigenvalue of Z^T Z (the gradient's Lipschitz constant).
double gradient_lipschitz_constant(const Eigen::MatrixXd& Z);

}  // namespace ppvar

#endif  // PPVAR_GRADIENT_DESCENT_HPP_
