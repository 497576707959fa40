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

#include "ppvar/masking.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include "ppvar/errors.hpp"
#include "ppvar/least_squares.hpp"
#include "ppvar/rng.hpp"

namespace ppvar {

namespace {

double condition_number(const Eigen::MatrixXd& m) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const double smin = svd.singularValues().minCoeff();
  if (smin <= 0) return std::numeric_limits<double>::infinity();
  return svd.singularValues().maxCoeff() / smin;
}

}  // namespace

Eigen::MatrixXd random_invertible(Eigen::Index size, std::uint64_t seed,
                                  double max_condition) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    Eigen::MatrixXd m = rng.normal_matrix(size, size);
    if (condition_number(m) < max_condition) return m;
  }
  throw NumericalError("could not generate a well-conditioned mask");
}

Eigen::MatrixXd random_orthogonal(Eigen::Index size, std::uint64_t seed) {
  Rng rng(seed);
  const Eigen::MatrixXd g = rng.normal_matrix(size, size);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  // Fix the sign convention so the draw is deterministic across backends.
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < size; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

MaskingKey make_premultiply_key(const std::vector<Eigen::Index>& block_rows,
                                Eigen::Index k, bool orthogonal,
                                std::uint64_t seed) {
  Eigen::Index total = 0;
  for (Eigen::Index rows : block_rows) total += rows;
  MaskingKey key;
  key.kind = MaskingKey::Kind::kPreRecord;
  Eigen::MatrixXd stacked;
  if (orthogonal) {
    if (k != total)
      throw ShapeError("orthogonal premultiply mask requires k = total rows");
    stacked = random_orthogonal(total, seed);
  } else {
    Rng rng(seed);
    stacked = rng.normal_matrix(k, total);
  }
  Eigen::Index col = 0;
  for (Eigen::Index rows : block_rows) {
    key.matrices.push_back(stacked.middleCols(col, rows));
    col += rows;
  }
  return key;
}

MaskingKey make_postmultiply_key(Eigen::Index z_cols, Eigen::Index y_cols,
                                 std::uint64_t seed) {
  MaskingKey key;
  key.kind = MaskingKey::Kind::kPostFeature;
  key.matrices.push_back(
      random_invertible(z_cols, derive_seed(seed, 0), key.condition_bound));
  key.matrices.push_back(
      random_invertible(y_cols, derive_seed(seed, 1), key.condition_bound));
  return key;
}

MaskingKey make_ridge_outsource_key(Eigen::Index size, std::uint64_t seed) {
  MaskingKey key;
  key.kind = MaskingKey::Kind::kRidgeOutsource;
  key.matrices.push_back(
      random_invertible(size, derive_seed(seed, 0), key.condition_bound));
  key.matrices.push_back(
      random_invertible(size, derive_seed(seed, 1), key.condition_bound));
  Rng rng(derive_seed(seed, 2));
  key.matrices.push_back(rng.normal_matrix(size, 1));
  return key;
}

PremultiplyResult premultiply_mask(const std::vector<RecordBlock>& parties,
                                   const MaskingKey& key) {
  if (key.kind != MaskingKey::Kind::kPreRecord)
    throw ShapeError("premultiply_mask requires a pre-record key");
  if (key.matrices.size() != parties.size())
    throw ShapeError("one mask block per party expected");
  if (parties.empty()) throw ShapeError("at least one party required");
  const Eigen::Index k = key.matrices.front().rows();
  const Eigen::Index zc = parties.front().Z.cols();
  const Eigen::Index yc = parties.front().Y.cols();
  PremultiplyResult result;
  result.masked_Z = Eigen::MatrixXd::Zero(k, zc);
  result.masked_Y = Eigen::MatrixXd::Zero(k, yc);
  for (size_t i = 0; i < parties.size(); ++i) {
    const auto& m = key.matrices[i];
    const auto& party = parties[i];
    if (m.rows() != k) throw ShapeError("mask blocks must share row count k");
    if (m.cols() != party.Z.rows())
      throw ShapeError("mask block columns must match party record count");
    if (party.Z.cols() != zc || party.Y.cols() != yc)
      throw ShapeError("record blocks must share column counts");
    result.masked_Z += m * party.Z;
    result.masked_Y += m * party.Y;
  }
  result.rank_preserving = k >= zc;
  return result;
}

PostmultiplyResult postmultiply_mask(const Eigen::MatrixXd& Z,
                                     const Eigen::MatrixXd& Y,
                                     const MaskingKey& key) {
  if (key.kind != MaskingKey::Kind::kPostFeature)
    throw ShapeError("postmultiply_mask requires a post-feature key");
  const Eigen::MatrixXd& Nz = key.matrices.at(0);
  const Eigen::MatrixXd& Ny = key.matrices.at(1);
  if (Nz.rows() != Z.cols() || Ny.rows() != Y.cols())
    throw ShapeError("key dimensions do not match data");
  PostmultiplyResult result;
  result.masked_Z = Z * Nz;
  result.masked_Y = Y * Ny;
  result.masked_estimate = fit_ls(result.masked_Z, result.masked_Y);
  const Eigen::MatrixXd raw_estimate = fit_ls(Z, Y);
  const Eigen::MatrixXd mapped =
      Nz.partialPivLu().solve(raw_estimate) * Ny;
  result.recovery_identity_error = (result.masked_estimate - mapped).norm();
  return result;
}

Eigen::VectorXd ridge_outsource(const Eigen::MatrixXd& A,
                                const Eigen::VectorXd& b,
                                const MaskingKey& key) {
  if (key.kind != MaskingKey::Kind::kRidgeOutsource)
    throw ShapeError("ridge_outsource requires an outsourcing key");
  const Eigen::MatrixXd& M = key.matrices.at(0);
  const Eigen::MatrixXd& N = key.matrices.at(1);
  const Eigen::VectorXd r = key.matrices.at(2).col(0);
  if (A.rows() != A.cols() || A.rows() != b.size())
    throw ShapeError("A must be square and match b");
  if (M.rows() != A.rows() || N.rows() != A.rows() || r.size() != A.rows())
    throw ShapeError("key dimensions do not match the system");
  // Owner-side masking.
  const Eigen::MatrixXd masked_system = M * A * N;
  const Eigen::VectorXd masked_rhs = M * (b + A * r);
  // Server-side solve.
  Eigen::FullPivLU<Eigen::MatrixXd> lu(masked_system);
  if (!lu.isInvertible())
    throw NumericalError("masked system is singular; retry with fresh keys");
  const Eigen::VectorXd beta_masked = lu.solve(masked_rhs);
  // Owner-side unmasking.
  return N * beta_masked - r;
}

Eigen::VectorXd ridge_outsource_solve(const Eigen::MatrixXd& Z,
                                      const Eigen::VectorXd& y, double lambda,
                                      std::uint64_t seed) {
  if (!(lambda > 0)) throw ShapeError("ridge penalty must be positive");
  const Eigen::Index m = Z.cols();
  const Eigen::MatrixXd A =
      Z.transpose() * Z + lambda * Eigen::MatrixXd::Identity(m, m);
  const Eigen::VectorXd b = Z.transpose() * y;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const MaskingKey key = make_ridge_outsource_key(
        m, derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    try {
      return ridge_outsource(A, b, key);
    } catch (const NumericalError&) {
      continue;
    }
  }
  throw NumericalError("ridge outsourcing failed after key retries");
}

}  // namespace ppvar
