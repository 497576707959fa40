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

#include "ppvar/secure_product.hpp"

#include "ppvar/errors.hpp"
#include "ppvar/masking.hpp"
#include "ppvar/rng.hpp"

namespace ppvar {

Eigen::MatrixXd ac_two_party_mask(Eigen::Index s, std::uint64_t seed,
                                  const AcOptions& options) {
  return random_invertible(s, seed, options.max_mask_condition);
}

ShareSplit ac_two_party_into(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C,
                             std::uint64_t seed, const AcOptions& options,
                             ProtocolTranscript& transcript) {
  if (A.cols() != C.rows())
    throw ShapeError("inner dimensions of A and C differ");
  Eigen::MatrixXd Aw = A;
  Eigen::MatrixXd Cw = C;
  if (Aw.cols() % 2 != 0) {
    if (!options.pad_odd)
      throw ProtocolError(
          "two-party product requires an even inner dimension (enable "
          "padding or reshape)");
    Aw.conservativeResize(Eigen::NoChange, Aw.cols() + 1);
    Aw.col(Aw.cols() - 1).setZero();
    Cw.conservativeResize(Cw.rows() + 1, Eigen::NoChange);
    Cw.row(Cw.rows() - 1).setZero();
  }
  const Eigen::Index s = Aw.cols();
  const Eigen::Index half = s / 2;

  // Jointly generated from the shared seed; both parties can reproduce it,
  // so it is never transmitted.
  const Eigen::MatrixXd M = ac_two_party_mask(s, seed, options);
  const Eigen::MatrixXd Minv = M.partialPivLu().inverse();
  const Eigen::MatrixXd M_left = M.leftCols(half);
  const Eigen::MatrixXd M_right = M.rightCols(half);
  const Eigen::MatrixXd Minv_top = Minv.topRows(half);
  const Eigen::MatrixXd Minv_bottom = Minv.bottomRows(half);

  const Eigen::MatrixXd msg_first_to_second = Aw * M_right;
  const Eigen::MatrixXd msg_second_to_first = Minv_top * Cw;
  transcript.record(options.first_party, options.second_party,
                    options.label_prefix + "A*M_right", 0,
                    msg_first_to_second);
  transcript.record(options.second_party, options.first_party,
                    options.label_prefix + "Minv_top*C", 0,
                    msg_second_to_first);

  ShareSplit shares;
  shares.share_first = (Aw * M_left) * msg_second_to_first;
  shares.share_second = msg_first_to_second * (Minv_bottom * Cw);
  return shares;
}

AcResult ac_two_party(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C,
                      std::uint64_t seed, const AcOptions& options) {
  AcResult result;
  result.transcript.set_protocol_id("ac_two_party");
  result.shares = ac_two_party_into(A, C, seed, options, result.transcript);
  return result;
}

AcResult ac_commodity(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C,
                      std::uint64_t seed, const AcOptions& options) {
  if (A.cols() != C.rows())
    throw ShapeError("inner dimensions of A and C differ");
  const Eigen::Index m = A.rows();
  const Eigen::Index s = A.cols();
  const Eigen::Index k = C.cols();

  AcResult result;
  result.transcript.set_protocol_id("ac_commodity");
  auto& transcript = result.transcript;

  // Third entity: R_a, R_c random, r_a + r_c = R_a R_c.
  Rng rng(seed);
  const Eigen::MatrixXd R_a = rng.normal_matrix(m, s);
  const Eigen::MatrixXd R_c = rng.normal_matrix(s, k);
  const Eigen::MatrixXd r_c = rng.normal_matrix(m, k);
  const Eigen::MatrixXd r_a = R_a * R_c - r_c;
  transcript.record(kCommodityServer, options.first_party,
                    options.label_prefix + "R_a", 0, R_a);
  transcript.record(kCommodityServer, options.first_party,
                    options.label_prefix + "r_a", 0, r_a);
  transcript.record(kCommodityServer, options.second_party,
                    options.label_prefix + "R_c", 0, R_c);
  transcript.record(kCommodityServer, options.second_party,
                    options.label_prefix + "r_c", 0, r_c);

  const Eigen::MatrixXd A_masked = A + R_a;
  const Eigen::MatrixXd C_masked = C + R_c;
  transcript.record(options.first_party, options.second_party,
                    options.label_prefix + "A+R_a", 0, A_masked);
  transcript.record(options.second_party, options.first_party,
                    options.label_prefix + "C+R_c", 0, C_masked);

  const Eigen::MatrixXd V_c = rng.normal_matrix(m, k);
  const Eigen::MatrixXd T_msg = A_masked * C + (r_c - V_c);
  transcript.record(options.second_party, options.first_party,
                    options.label_prefix + "T", 0, T_msg);

  ShareSplit shares;
  shares.share_first = T_msg + r_a - R_a * C_masked;
  shares.share_second = V_c;
  result.shares = shares;
  return result;
}

}  // namespace ppvar
