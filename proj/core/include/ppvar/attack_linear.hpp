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

#ifndef PPVAR_ATTACK_LINEAR_HPP_
#define PPVAR_ATTACK_LINEAR_HPP_

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "ppvar/lag.hpp"
#include "ppvar/transcript.hpp"

namespace ppvar {

// What the attacking party (the second owner) holds after the two-party
// product protocol ran for Z1^T Z2 and Z1^T Y2 (mask matrices are jointly
// generated, hence known to it), plus optionally the run of Z2^T Y1 in
// which it received a masked projection of Y1.
struct LinearProtocolAttackInputs {
  ProtocolTranscript run_zz;   // product Z1^T Z2
  ProtocolTranscript run_zy;   // product Z1^T Y2
  Eigen::MatrixXd mask_zz;     // M used by run_zz (T x T)
  Eigen::MatrixXd mask_zy;     // M* used by run_zy
  std::optional<ProtocolTranscript> run_yz;  // product Z2^T Y1
  Eigen::MatrixXd mask_yz;     // M** used by run_yz
  bool masks_known = true;     // attack degenerates without joint masks
  std::string attacker = "owner2";
  std::string victim = "owner1";
};

struct LinearProtocolAttackResult {
  bool solved = false;
  std::string note;
  Eigen::MatrixXd recovered_Z;  // T x p
  Eigen::VectorXd recovered_Y;  // T (when run_yz present)
  double residual = 0.0;        // consistency residual of the linear solve
};

// Reconstruction of the first owner's covariates (and target) from the
// messages the second owner legitimately received: stacking the two masked
// right-halves gives Z1^T [M_right, M*_right], invertible for generic
// masks, so Z1 follows exactly; Y1 follows from the lag ties plus the
// masked projection received in the third run.
LinearProtocolAttackResult attack_linear_algebra_protocol(
    const LinearProtocolAttackInputs& inputs, int T, const LagSpec& lags);

}  // namespace ppvar

#endif  // PPVAR_ATTACK_LINEAR_HPP_
