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

#ifndef PPVAR_ADMM_DISTRIBUTED_HPP_
#define PPVAR_ADMM_DISTRIBUTED_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ppvar/admm.hpp"
#include "ppvar/ista.hpp"
#include "ppvar/noise.hpp"
#include "ppvar/transcript.hpp"

namespace ppvar {

// Feature-split view of one data owner: its lag covariates, its own target
// column and (during fitting) its local coefficient block.
struct PartyView {
  std::string owner;
  Eigen::MatrixXd Z;  // T x p
  Eigen::VectorXd y;  // T
};

// Where differential-privacy noise enters the exchanged messages.
//   kCoefficients: parties transmit Z_i (B_i + W) each iteration.
//   kIntermediate: noise lands on the party's additive contribution to the
//     aggregation; algebraically equivalent to a rescaled perturbation of
//     the transmitted product, which is how it is applied here.
enum class NoisePlacement { kNone, kCoefficients, kIntermediate };

std::string noise_placement_name(NoisePlacement placement);
NoisePlacement parse_noise_placement(const std::string& name);

inline constexpr const char* kCentralNode = "central";
inline constexpr const char* kLabelLocalProduct = "local_product";
inline constexpr const char* kLabelNodeUpdate = "node_update";

struct DistributedAdmmOptions {
  AdmmConfig admm;
  // The scale constant in the averaging update 1/(N + rho). Defaults to the
  // number of target columns; configurable because the roles of target count
  // and owner count coincide in the square VAR layout.
  double consensus_scale = -1.0;
  bool record_transcript = true;
  // Random U^0 at the node and B^1 at the parties (private values); zero
  // initialization otherwise.
  bool random_init = false;
  std::uint64_t init_seed = 0;
  NoisePlacement noise_placement = NoisePlacement::kNone;
  NoiseSpec noise;
  std::uint64_t noise_seed = 0;
  IstaOptions inner;  // per-party subproblem solver

  DistributedAdmmOptions() { inner.tol = 1e-8; }
};

struct DistributedAdmmResult {
  std::vector<Eigen::MatrixXd> party_coefficients;  // p x n each
  Eigen::MatrixXd stacked;                          // lag-major (np) x n
  ProtocolTranscript transcript;
  bool converged = false;
  int iterations = 0;
  std::vector<AdmmIterationStats> history;
  // Initialization actually used; private in-protocol, exposed for tests
  // and ground-truth bookkeeping.
  Eigen::MatrixXd initial_dual;                            // U^0
  std::vector<Eigen::MatrixXd> initial_party_coefficients; // B^1
};

// Sharing-form distributed solve of the feature-split l1 problem: each
// iteration every party transmits its local prediction Z_i B_i^k, the
// central node (which holds Y) aggregates
//   Hbar^k = (Y + rho ZBbar^k + rho U^{k-1}) / (N + rho)
//   U^k    = U^{k-1} + ZBbar^k - Hbar^k
// and broadcasts Hbar^k - ZBbar^k - U^k, from which each party solves its
// local l1 subproblem for B_i^{k+1}. The stacked solution coincides with
// the centralized estimate.
DistributedAdmmResult fit_lasso_admm_distributed(
    const std::vector<PartyView>& parties, const Eigen::MatrixXd& Y,
    const DistributedAdmmOptions& options);

// Splits a lag-major embedding into per-owner views (owner i takes columns
// {l*n + i}) paired with its own target column.
std::vector<PartyView> split_parties(const Eigen::MatrixXd& Z,
                                     const Eigen::MatrixXd& Y,
                                     const std::vector<std::string>& owners);

}  // namespace ppvar

#endif  // PPVAR_ADMM_DISTRIBUTED_HPP_
