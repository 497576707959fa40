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

#ifndef PPVAR_MASKING_HPP_
#define PPVAR_MASKING_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ppvar/admm_consensus.hpp"

namespace ppvar {

// Private random matrices backing one of the multiplicative masking
// schemes. Square matrices are generated invertible with condition number
// below `condition_bound` (regenerated on failure); keys never appear in
// transcripts.
struct MaskingKey {
  enum class Kind { kPreRecord, kPostFeature, kRidgeOutsource };
  Kind kind;
  std::vector<Eigen::MatrixXd> matrices;
  double condition_bound = 1e8;
};

// Gaussian matrix with condition number below `max_condition`.
Eigen::MatrixXd random_invertible(Eigen::Index size, std::uint64_t seed,
                                  double max_condition = 1e8);
// Orthonormal rows/columns via QR of a Gaussian draw (square).
Eigen::MatrixXd random_orthogonal(Eigen::Index size, std::uint64_t seed);

// Per-owner left masks M_i (k x T_i) for record-split blocks. Orthogonal
// stacked masks require k = sum T_i.
MaskingKey make_premultiply_key(const std::vector<Eigen::Index>& block_rows,
                                Eigen::Index k, bool orthogonal,
                                std::uint64_t seed);
// Feature-side masks {N_z (M x M), N_y (N x N)}.
MaskingKey make_postmultiply_key(Eigen::Index z_cols, Eigen::Index y_cols,
                                 std::uint64_t seed);
// Outsourcing masks {M (m x m), N (m x m), r (m x 1)}.
MaskingKey make_ridge_outsource_key(Eigen::Index size, std::uint64_t seed);

struct PremultiplyResult {
  Eigen::MatrixXd masked_Z;  // sum_i M_i Z_i
  Eigen::MatrixXd masked_Y;  // sum_i M_i Y_i
  // False when k is below the covariate count, which cannot preserve the
  // normal equations' rank.
  bool rank_preserving = true;
};

// Record-split pre-multiplication: each owner publishes M_i Z_i and M_i Y_i;
// their sums equal the stacked mask applied to the pooled data.
PremultiplyResult premultiply_mask(const std::vector<RecordBlock>& parties,
                                   const MaskingKey& key);

struct PostmultiplyResult {
  Eigen::MatrixXd masked_Z;  // Z N_z
  Eigen::MatrixXd masked_Y;  // Y N_y
  // Frobenius gap of the recovery identity  B' = N_z^{-1} Bhat N_y,
  // i.e. how exactly the masked-domain estimate maps back to the raw one
  // (recovery requires disclosing both keys).
  double recovery_identity_error = 0.0;
  Eigen::MatrixXd masked_estimate;  // B' from the masked regression
};

PostmultiplyResult postmultiply_mask(const Eigen::MatrixXd& Z,
                                     const Eigen::MatrixXd& Y,
                                     const MaskingKey& key);

// Server-side solve of the masked ridge system (M A N) beta' = M (b + A r)
// followed by owner-side unmasking beta = N beta' - r. `A` is the
// owner-precomputed regularized Gram matrix, `b` the moment vector.
Eigen::VectorXd ridge_outsource(const Eigen::MatrixXd& A,
                                const Eigen::VectorXd& b,
                                const MaskingKey& key);

// Convenience wrapper generating keys (retrying on near-singular masked
// systems) for Z, y data with penalty lambda.
Eigen::VectorXd ridge_outsource_solve(const Eigen::MatrixXd& Z,
                                      const Eigen::VectorXd& y, double lambda,
                                      std::uint64_t seed);

}  // namespace ppvar

#endif  // PPVAR_MASKING_HPP_
