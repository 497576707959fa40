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

#include "ppvar/karr.hpp"

#include <Eigen/QR>

#include "ppvar/errors.hpp"
#include "ppvar/secure_product.hpp"

namespace ppvar {

KarrResult karr_multiply(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C,
                         int g, std::uint64_t seed) {
  if (A.rows() != C.rows())
    throw ShapeError("A and C must share the row dimension");
  const Eigen::Index m = A.rows();
  const Eigen::Index k = A.cols();
  if (g < 0 || g > m - k)
    throw ProtocolError("g must satisfy 0 <= g <= m - k for W^T A = 0");

  KarrResult result;
  result.transcript.set_protocol_id("karr_w_projection");

  // Orthonormal basis of the orthogonal complement of col(A): trailing g
  // columns of the full Q factor. The seed feeds no randomness here; W is
  // a deterministic function of A, kept in the signature for drivers that
  // randomize instances.
  (void)seed;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
  const Eigen::MatrixXd Qfull =
      qr.householderQ() * Eigen::MatrixXd::Identity(m, m);
  const Eigen::MatrixXd W = Qfull.rightCols(g);
  result.degenerate_clear_send = (g == 0);

  result.transcript.record(kOwner1, kOwner2, "W", 0, W);
  const Eigen::MatrixXd masked_C = C - W * (W.transpose() * C);
  result.transcript.record(kOwner2, kOwner1, "(I-WW^T)C", 0, masked_C);

  result.product = A.transpose() * masked_C;
  result.transcript.record(kOwner1, kOwner2, "A^T*C", 0, result.product);

  result.masked_rank = static_cast<int>(
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(masked_C).rank());
  return result;
}

double nlie_owner1(int k, int s, double g) {
  return static_cast<double>(k) * s + static_cast<double>(k) * g;
}

double nlie_owner2(int m, int k, int s, double g) {
  return static_cast<double>(k) * s + static_cast<double>(s) * (m - g);
}

NlieSplit nlie_optimal_g(int m, int k, int s) {
  if (m <= 0 || k <= 0 || s <= 0)
    throw ShapeError("m, k, s must be positive");
  NlieSplit split;
  split.g_star = static_cast<double>(s) * m / (k + s);
  split.nlie_owner1 = nlie_owner1(k, s, split.g_star);
  split.nlie_owner2 = nlie_owner2(m, k, s, split.g_star);
  return split;
}

}  // namespace ppvar
