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

#include "ppvar/admm_consensus.hpp"

#include "ppvar/errors.hpp"
#include "ppvar/ista.hpp"

namespace ppvar {

AdmmResult fit_consensus_admm(const std::vector<RecordBlock>& parties,
                              const AdmmConfig& config) {
  config.validate();
  if (parties.empty()) throw ShapeError("at least one record block required");
  const Eigen::Index m = parties.front().Z.cols();
  const Eigen::Index n = parties.front().Y.cols();
  const size_t R = parties.size();
  for (const auto& party : parties) {
    if (party.Z.cols() != m || party.Y.cols() != n)
      throw ShapeError("record blocks must share column counts");
    if (party.Z.rows() != party.Y.rows())
      throw ShapeError("record block Z and Y row counts differ");
  }

  const double rho = config.rho;
  std::vector<Eigen::LLT<Eigen::MatrixXd>> grams;
  std::vector<Eigen::MatrixXd> ZtY;
  grams.reserve(R);
  ZtY.reserve(R);
  for (const auto& party : parties) {
    grams.emplace_back(Eigen::MatrixXd(
        party.Z.transpose() * party.Z +
        rho * Eigen::MatrixXd::Identity(m, m)));
    if (grams.back().info() != Eigen::Success)
      throw NumericalError("Gram matrix factorization failed");
    ZtY.push_back(party.Z.transpose() * party.Y);
  }

  std::vector<Eigen::MatrixXd> B(R, Eigen::MatrixXd::Zero(m, n));
  std::vector<Eigen::MatrixXd> U(R, Eigen::MatrixXd::Zero(m, n));
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m, n);

  auto pooled_objective = [&](const Eigen::MatrixXd& X) {
    double fit = 0.0;
    for (const auto& party : parties)
      fit += 0.5 * (party.Y - party.Z * X).squaredNorm();
    return fit + config.lambda * X.lpNorm<1>();
  };

  AdmmResult result;
  for (int k = 1; k <= config.max_iter; ++k) {
    Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(m, n);
    for (size_t r = 0; r < R; ++r) {
      B[r] = grams[r].solve(ZtY[r] + rho * (H - U[r]));
      mean += B[r] + U[r];
    }
    mean /= static_cast<double>(R);
    const Eigen::MatrixXd H_prev = H;
    H = soft_threshold(mean, config.lambda / (rho * static_cast<double>(R)));
    double primal_sq = 0.0;
    for (size_t r = 0; r < R; ++r) {
      U[r] += B[r] - H;
      primal_sq += (B[r] - H).squaredNorm();
    }
    const double primal = std::sqrt(primal_sq);
    const double dual =
        rho * std::sqrt(static_cast<double>(R)) * (H - H_prev).norm();
    result.history.push_back({k, primal, dual, pooled_objective(H)});
    if (config.record_iterates) result.iterates.push_back(H);
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
