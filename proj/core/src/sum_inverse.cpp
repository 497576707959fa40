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

#include "ppvar/sum_inverse.hpp"

#include "ppvar/errors.hpp"
#include "ppvar/masking.hpp"
#include "ppvar/rng.hpp"

namespace ppvar {

AcResult sum_inverse(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C,
                     std::uint64_t seed, const AcOptions& options) {
  if (A.rows() != A.cols() || C.rows() != C.cols() || A.rows() != C.rows())
    throw ShapeError("sum_inverse expects square matrices of equal size");
  const Eigen::Index m = A.rows();

  AcResult result;
  result.transcript.set_protocol_id("sum_inverse");
  auto& transcript = result.transcript;

  // Private to the second party.
  const Eigen::MatrixXd P =
      random_invertible(m, derive_seed(seed, 1), options.max_mask_condition);
  const Eigen::MatrixXd Q =
      random_invertible(m, derive_seed(seed, 2), options.max_mask_condition);

  AcOptions swapped = options;  // second party supplies the left factor
  swapped.first_party = options.second_party;
  swapped.second_party = options.first_party;

  // Step 1: first party learns P (A + C) Q.
  AcOptions sub = swapped;
  sub.label_prefix = options.label_prefix + "step1.PA.";
  const ShareSplit pa =
      ac_two_party_into(P, A, derive_seed(seed, 3), sub, transcript);
  // pa.share_first -> second party, pa.share_second -> first party.
  sub = options;
  sub.label_prefix = options.label_prefix + "step1.PAQ.";
  const ShareSplit paq = ac_two_party_into(pa.share_second, Q,
                                           derive_seed(seed, 4), sub,
                                           transcript);
  const Eigen::MatrixXd second_sum =
      pa.share_first * Q + paq.share_second + P * C * Q;
  transcript.record(options.second_party, options.first_party,
                    options.label_prefix + "step1.masked_sum", 0, second_sum);
  const Eigen::MatrixXd masked = paq.share_first + second_sum;  // P(A+C)Q

  Eigen::FullPivLU<Eigen::MatrixXd> lu(masked);
  if (!lu.isInvertible())
    throw NumericalError("A + C is singular; inverse protocol aborted");
  const Eigen::MatrixXd G = lu.inverse();  // Q^{-1} (A+C)^{-1} P^{-1}

  // Step 2: strip Q^{-1} on the left and P^{-1} on the right.
  sub = swapped;
  sub.label_prefix = options.label_prefix + "step2.QG.";
  const ShareSplit qg =
      ac_two_party_into(Q, G, derive_seed(seed, 5), sub, transcript);
  sub = options;
  sub.label_prefix = options.label_prefix + "step2.QGP.";
  const ShareSplit qgp = ac_two_party_into(qg.share_second, P,
                                           derive_seed(seed, 6), sub,
                                           transcript);

  result.shares.share_first = qgp.share_first;                 // first party
  result.shares.share_second = qg.share_first * P + qgp.share_second;
  return result;
}

}  // namespace ppvar
