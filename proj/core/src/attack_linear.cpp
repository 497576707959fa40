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

#include "ppvar/attack_linear.hpp"

#include <vector>

#include "ppvar/errors.hpp"

namespace ppvar {

namespace {

const TranscriptEntry* single_received(const ProtocolTranscript& t,
                                       const std::string& party,
                                       const std::string& label) {
  const auto entries = t.received_by(party, label);
  if (entries.size() != 1) return nullptr;
  return entries.front();
}

}  // namespace

LinearProtocolAttackResult attack_linear_algebra_protocol(
    const LinearProtocolAttackInputs& inputs, int T, const LagSpec& lags) {
  lags.validate();
  LinearProtocolAttackResult result;
  if (!inputs.masks_known) {
    result.note =
        "masks not jointly known: each received block is underdetermined";
    return result;
  }
  const TranscriptEntry* r1 =
      single_received(inputs.run_zz, inputs.attacker, "A*M_right");
  const TranscriptEntry* r2 =
      single_received(inputs.run_zy, inputs.attacker, "A*M_right");
  if (!r1 || !r2) {
    result.note = "expected masked blocks missing from transcripts";
    return result;
  }
  const Eigen::Index p = r1->values.rows();
  const Eigen::Index half = r1->values.cols();
  if (2 * half != T || r2->values.rows() != p || r2->values.cols() != half) {
    result.note = "masked block shapes inconsistent with T";
    return result;
  }

  // Z1^T [M_right, M*_right] = [R1, R2]; invert the stacked mask halves.
  Eigen::MatrixXd stacked(T, T);
  stacked.leftCols(half) = inputs.mask_zz.rightCols(half);
  stacked.rightCols(half) = inputs.mask_zy.rightCols(half);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(stacked.transpose());
  if (!lu.isInvertible()) {
    result.note = "stacked mask halves are singular: attack inconclusive";
    return result;
  }
  Eigen::MatrixXd received(p, T);
  received.leftCols(half) = r1->values;
  received.rightCols(half) = r2->values;
  // Solve X * stacked = received  <=>  stacked^T X^T = received^T.
  result.recovered_Z = lu.solve(received.transpose());  // T x p

  if (!inputs.run_yz) {
    result.solved = true;
    result.note = "covariates recovered; no target-run transcript supplied";
    return result;
  }

  // Y1 from the lag ties of the recovered covariates plus the masked
  // projection received while computing Z2^T Y1.
  const TranscriptEntry* r3 =
      single_received(*inputs.run_yz, inputs.attacker, "Minv_top*C");
  if (!r3 || r3->values.rows() != half || r3->values.cols() != 1) {
    result.note = "projection block missing from target-run transcript";
    return result;
  }
  const Eigen::MatrixXd proj = inputs.mask_yz.inverse().topRows(half);

  std::vector<std::pair<int, double>> ties;  // (target index, value)
  for (int li = 0; li < lags.count(); ++li) {
    const int lag = lags.lags[static_cast<size_t>(li)];
    for (int t = 1; t <= T; ++t) {
      const int target = t - lag;  // Y index the covariate cell pins down
      if (target >= 1)
        ties.emplace_back(target,
                          result.recovered_Z(t - 1, li));
    }
  }
  const Eigen::Index rows = static_cast<Eigen::Index>(ties.size()) + half;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, T);
  Eigen::VectorXd b(rows);
  Eigen::Index r = 0;
  for (const auto& [idx, value] : ties) {
    A(r, idx - 1) = 1.0;
    b(r) = value;
    ++r;
  }
  A.bottomRows(half) = proj;
  b.tail(half) = r3->values.col(0);
  const Eigen::VectorXd y = A.colPivHouseholderQr().solve(b);
  result.recovered_Y = y;
  result.residual = (A * y - b).norm();
  result.solved = result.residual < 1e-6;
  result.note = result.solved ? "exact recovery" : "inconsistent system";
  return result;
}

}  // namespace ppvar
