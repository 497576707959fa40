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

#include "ppvar/admm_distributed.hpp"

#include "ppvar/errors.hpp"
#include "ppvar/lag.hpp"
#include "ppvar/rng.hpp"

namespace ppvar {

std::string noise_placement_name(NoisePlacement placement) {
  switch (placement) {
    case NoisePlacement::kNone: return "none";
    case NoisePlacement::kCoefficients: return "coefficients";
    case NoisePlacement::kIntermediate: return "intermediate";
  }
  return "unknown";
}

NoisePlacement parse_noise_placement(const std::string& name) {
  if (name == "none") return NoisePlacement::kNone;
  if (name == "coefficients") return NoisePlacement::kCoefficients;
  if (name == "intermediate") return NoisePlacement::kIntermediate;
  throw Error("unknown noise placement '" + name + "'");
}

std::vector<PartyView> split_parties(const Eigen::MatrixXd& Z,
                                     const Eigen::MatrixXd& Y,
                                     const std::vector<std::string>& owners) {
  const int n = static_cast<int>(owners.size());
  if (Y.cols() != n) throw ShapeError("one owner per target column expected");
  std::vector<PartyView> parties;
  parties.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    PartyView party;
    party.owner = owners[static_cast<size_t>(i)];
    party.Z = owner_covariate_block(Z, n, i);
    party.y = Y.col(i);
    parties.push_back(std::move(party));
  }
  return parties;
}

DistributedAdmmResult fit_lasso_admm_distributed(
    const std::vector<PartyView>& parties, const Eigen::MatrixXd& Y,
    const DistributedAdmmOptions& options) {
  options.admm.validate();
  if (parties.empty()) throw ShapeError("at least one party required");
  const int n_parties = static_cast<int>(parties.size());
  const Eigen::Index T = parties.front().Z.rows();
  const Eigen::Index p = parties.front().Z.cols();
  const Eigen::Index n_targets = Y.cols();
  if (Y.rows() != T) throw ShapeError("target row count mismatch");
  for (const auto& party : parties) {
    if (party.Z.rows() != T || party.Z.cols() != p)
      throw ShapeError("all parties must share T and p");
    if (party.y.size() != T)
      throw ShapeError("party target column must have T rows");
  }

  const double rho = options.admm.rho;
  const double lambda = options.admm.lambda;
  const double scale_n = options.consensus_scale > 0
                             ? options.consensus_scale
                             : static_cast<double>(n_targets);
  const double c = 1.0 / (scale_n + rho);

  DistributedAdmmResult result;
  result.transcript.set_protocol_id("lasso_admm_distributed");

  Rng init_rng(options.init_seed);
  Eigen::MatrixXd U = options.random_init
                          ? init_rng.normal_matrix(T, n_targets)
                          : Eigen::MatrixXd::Zero(T, n_targets);
  result.initial_dual = U;

  std::vector<Eigen::MatrixXd> B(static_cast<size_t>(n_parties));
  std::vector<Rng> noise_rngs;
  for (int i = 0; i < n_parties; ++i) {
    B[static_cast<size_t>(i)] =
        options.random_init
            ? Rng(derive_seed(options.init_seed, 1000 + static_cast<std::uint64_t>(i)))
                  .normal_matrix(p, n_targets)
            : Eigen::MatrixXd::Zero(p, n_targets);
    noise_rngs.emplace_back(
        derive_seed(options.noise_seed, static_cast<std::uint64_t>(i)));
  }
  result.initial_party_coefficients = B;

  // Equivalent product-space perturbation of a contribution-level noise
  // matrix: contribution = c I_Y + (rho c - 1) ZB / n_parties.
  const double intermediate_factor =
      static_cast<double>(n_parties) / (rho * c - 1.0);

  Eigen::MatrixXd Hbar = Eigen::MatrixXd::Zero(T, n_targets);
  Eigen::MatrixXd Hbar_prev = Hbar;
  std::vector<Eigen::MatrixXd> transmitted(static_cast<size_t>(n_parties));

  auto global_objective = [&](const std::vector<Eigen::MatrixXd>& Bs) {
    Eigen::MatrixXd fitted = Eigen::MatrixXd::Zero(T, n_targets);
    double l1 = 0.0;
    for (int i = 0; i < n_parties; ++i) {
      fitted += parties[static_cast<size_t>(i)].Z * Bs[static_cast<size_t>(i)];
      l1 += Bs[static_cast<size_t>(i)].lpNorm<1>();
    }
    return 0.5 * (Y - fitted).squaredNorm() + lambda * l1;
  };

  for (int k = 1; k <= options.admm.max_iter; ++k) {
    // Parties transmit their local products (optionally noised).
    for (int i = 0; i < n_parties; ++i) {
      const auto ui = static_cast<size_t>(i);
      Eigen::MatrixXd sent;
      switch (options.noise_placement) {
        case NoisePlacement::kNone:
          sent = parties[ui].Z * B[ui];
          break;
        case NoisePlacement::kCoefficients:
          sent = parties[ui].Z *
                 (B[ui] + sample_noise_matrix(p, n_targets, options.noise,
                                              noise_rngs[ui]));
          break;
        case NoisePlacement::kIntermediate:
          sent = parties[ui].Z * B[ui] +
                 intermediate_factor *
                     sample_noise_matrix(T, n_targets, options.noise,
                                         noise_rngs[ui]);
          break;
      }
      if (options.record_transcript)
        result.transcript.record(parties[ui].owner, kCentralNode,
                                 kLabelLocalProduct, k, sent);
      transmitted[ui] = std::move(sent);
    }

    Eigen::MatrixXd ZBbar = Eigen::MatrixXd::Zero(T, n_targets);
    for (const auto& t : transmitted) ZBbar += t;
    ZBbar /= static_cast<double>(n_parties);

    Hbar_prev = Hbar;
    Hbar = c * (Y + rho * ZBbar + rho * U);
    U += ZBbar - Hbar;
    const Eigen::MatrixXd D = Hbar - ZBbar - U;
    if (options.record_transcript)
      result.transcript.record(kCentralNode, kBroadcast, kLabelNodeUpdate, k,
                               D);

    // Local l1 subproblems against the broadcast update.
    for (int i = 0; i < n_parties; ++i) {
      const auto ui = static_cast<size_t>(i);
      const Eigen::MatrixXd target = parties[ui].Z * B[ui] + D;
      B[ui] = solve_lasso_ista(parties[ui].Z, target, lambda / rho, B[ui],
                               options.inner);
    }

    const double primal = (ZBbar - Hbar).norm();
    const double dual = rho * (Hbar - Hbar_prev).norm();
    result.history.push_back({k, primal, dual, global_objective(B)});
    result.iterations = k;
    if (primal < options.admm.tol_primal && dual < options.admm.tol_dual) {
      result.converged = true;
      break;
    }
  }

  result.party_coefficients = B;
  result.stacked = merge_owner_blocks(B, n_parties);
  return result;
}

}  // namespace ppvar
