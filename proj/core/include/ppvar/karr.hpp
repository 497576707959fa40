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

#ifndef PPVAR_KARR_HPP_
#define PPVAR_KARR_HPP_

#include <cstdint>

#include <Eigen/Dense>

#include "ppvar/transcript.hpp"

namespace ppvar {

struct KarrResult {
  Eigen::MatrixXd product;  // A^T C, exact
  // Numerical rank of (I - W W^T) C as transmitted; m - g holds for generic
  // C but is recorded rather than asserted.
  int masked_rank = 0;
  // True when g = 0, i.e. C was sent unprotected.
  bool degenerate_clear_send = false;
  ProtocolTranscript transcript;
};

// W-projection product protocol: the first party derives W (m x g, columns
// orthonormal and orthogonal to the column space of A) and sends it; the
// second party returns (I - W W^T) C, from which A^T (I - W W^T) C = A^T C
// exactly. The product is then shared back, so both parties end with A^T C.
KarrResult karr_multiply(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C,
                         int g, std::uint64_t seed);

// Equalized information accounting for the W-projection protocol. At
// g* = s m / (k + s) both parties hold the same number of linearly
// independent equations about each other's data:
//   owner1 exposure: k s + k g,  owner2 exposure: k s + s (m - g).
struct NlieSplit {
  double g_star;
  double nlie_owner1;
  double nlie_owner2;
};

NlieSplit nlie_optimal_g(int m, int k, int s);

double nlie_owner1(int k, int s, double g);
double nlie_owner2(int m, int k, int s, double g);

}  // namespace ppvar

#endif  // PPVAR_KARR_HPP_
