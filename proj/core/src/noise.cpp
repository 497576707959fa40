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

#include "ppvar/noise.hpp"

#include <cmath>

#include "ppvar/errors.hpp"

namespace ppvar {

std::string noise_family_name(NoiseFamily family) {
  switch (family) {
    case NoiseFamily::kLaplace: return "laplace";
    case NoiseFamily::kGaussian: return "gaussian";
    case NoiseFamily::kUniform: return "uniform";
  }
  return "unknown";
}

NoiseFamily parse_noise_family(const std::string& name) {
  if (name == "laplace") return NoiseFamily::kLaplace;
  if (name == "gaussian" || name == "normal") return NoiseFamily::kGaussian;
  if (name == "uniform") return NoiseFamily::kUniform;
  throw Error("unknown noise family '" + name + "'");
}

void NoiseSpec::validate() const {
  if (scale < 0) throw CalibrationError("noise scale must be non-negative");
  if (delta && (*delta < 0 || *delta >= 1))
    throw CalibrationError("delta must lie in [0, 1)");
  if (epsilon && *epsilon <= 0)
    throw CalibrationError("epsilon must be positive");
  if (sensitivity && *sensitivity <= 0)
    throw CalibrationError("sensitivity must be positive");
}

double data_range_sensitivity(const Eigen::MatrixXd& data) {
  if (data.size() == 0) throw ShapeError("empty data has no range");
  if (!data.allFinite()) throw ShapeError("data contains non-finite entries");
  return data.maxCoeff() - data.minCoeff();
}

double laplace_epsilon(double sensitivity, double scale) {
  if (!(sensitivity > 0) || !(scale > 0))
    throw CalibrationError("sensitivity and scale must be positive");
  return sensitivity / scale;
}

double gaussian_sigma(double sensitivity, double epsilon, double delta) {
  if (!(sensitivity > 0)) throw CalibrationError("sensitivity must be positive");
  if (!(epsilon > 0)) throw CalibrationError("epsilon must be positive");
  if (!(delta > 0) || !(delta < 1))
    throw CalibrationError(
        "gaussian calibration requires delta in (0, 1); got " +
        std::to_string(delta));
  return std::sqrt(2.0 * std::log(1.25 / delta)) * sensitivity / epsilon;
}

double sample_noise(const NoiseSpec& spec, Rng& rng) {
  if (spec.scale == 0.0) return 0.0;
  switch (spec.family) {
    case NoiseFamily::kLaplace: return rng.laplace(spec.scale);
    case NoiseFamily::kGaussian: return rng.normal(0.0, spec.scale);
    case NoiseFamily::kUniform: return rng.uniform(-spec.scale, spec.scale);
  }
  return 0.0;
}

Eigen::MatrixXd sample_noise_matrix(Eigen::Index rows, Eigen::Index cols,
                                    const NoiseSpec& spec, Rng& rng) {
  Eigen::MatrixXd w(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) w(i, j) = sample_noise(spec, rng);
  return w;
}

Eigen::MatrixXd add_noise(const Eigen::MatrixXd& data, const NoiseSpec& spec,
                          std::uint64_t seed) {
  spec.validate();
  if (!data.allFinite()) throw ShapeError("input contains non-finite entries");
  if (spec.scale == 0.0) return data;
  Rng rng(seed);
  return data + sample_noise_matrix(data.rows(), data.cols(), spec, rng);
}

}  // namespace ppvar
