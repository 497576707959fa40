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

#ifndef PPVAR_NOISE_HPP_
#define PPVAR_NOISE_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "ppvar/rng.hpp"

namespace ppvar {

enum class NoiseFamily { kLaplace, kGaussian, kUniform };

std::string noise_family_name(NoiseFamily family);
NoiseFamily parse_noise_family(const std::string& name);

// Additive masking noise: Gaussian N(0, b^2), Laplace L(0, b) or Uniform on
// [-b, b], optionally annotated with the privacy budget it realizes.
struct NoiseSpec {
  NoiseFamily family = NoiseFamily::kLaplace;
  double scale = 0.0;                   // b
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::optional<double> sensitivity;    // Delta f

  void validate() const;
};

// Empirical sensitivity convention for panel masking: the spread
// max - min of the observed values. Override when a tighter bound on the
// query is known.
double data_range_sensitivity(const Eigen::MatrixXd& data);

// Laplace mechanism budget: epsilon = sensitivity / scale.
double laplace_epsilon(double sensitivity, double scale);

// Minimal Gaussian sigma meeting (epsilon, delta)-differential privacy:
// sigma = sqrt(2 log(1.25/delta)) * sensitivity / epsilon, delta in (0, 1).
double gaussian_sigma(double sensitivity, double epsilon, double delta);

double sample_noise(const NoiseSpec& spec, Rng& rng);
Eigen::MatrixXd sample_noise_matrix(Eigen::Index rows, Eigen::Index cols,
                                    const NoiseSpec& spec, Rng& rng);

// Elementwise independent draws added to the input; identity when scale = 0.
Eigen::MatrixXd add_noise(const Eigen::MatrixXd& data, const NoiseSpec& spec,
                          std::uint64_t seed);

}  // namespace ppvar

#endif  // PPVAR_NOISE_HPP_
