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

#include "ppvar/stationary.hpp"

#include <vector>

#include <Eigen/Cholesky>

#include "ppvar/errors.hpp"
#include "ppvar/rng.hpp"

namespace ppvar {

namespace {

using Eigen::MatrixXd;

// Maps an unconstrained matrix to one with singular values in (0, 1):
// P = chol(I + A A^T)^{-1} A.
MatrixXd contract_singular_values(const MatrixXd& A) {
  const Eigen::Index n = A.rows();
  const MatrixXd G = MatrixXd::Identity(n, n) + A * A.transpose();
  return Eigen::LLT<MatrixXd>(G).matrixL().solve(A);
}

// Forward recursion from partial autocorrelation matrices to the
// coefficients phi_1..phi_p of a stationary VAR in the column-vector
// convention x_t = sum_j phi_j x_{t-j} + e_t.
std::vector<MatrixXd> pacf_to_var(const std::vector<MatrixXd>& pacf, int n) {
  const int p = static_cast<int>(pacf.size());
  MatrixXd sigma_f = MatrixXd::Identity(n, n);
  MatrixXd sigma_b = MatrixXd::Identity(n, n);
  MatrixXd chol_f = MatrixXd::Identity(n, n);
  MatrixXd chol_b = MatrixXd::Identity(n, n);
  std::vector<MatrixXd> fwd, bwd;
  for (int s = 0; s < p; ++s) {
    const MatrixXd& P = pacf[static_cast<size_t>(s)];
    // phi_{s+1,s+1} = L_f P L_b^{-1}, psi_{s+1,s+1} = L_b P^T L_f^{-1}.
    const MatrixXd phi_ss =
        chol_f * chol_b.transpose()
                     .triangularView<Eigen::Upper>()
                     .solve(P.transpose())
                     .transpose();
    const MatrixXd psi_ss =
        chol_b *
        chol_f.transpose().triangularView<Eigen::Upper>().solve(P).transpose();
    std::vector<MatrixXd> nf, nb;
    nf.reserve(static_cast<size_t>(s) + 1);
    nb.reserve(static_cast<size_t>(s) + 1);
    for (int j = 0; j < s; ++j) {
      nf.push_back(fwd[static_cast<size_t>(j)] -
                   phi_ss * bwd[static_cast<size_t>(s - 1 - j)]);
      nb.push_back(bwd[static_cast<size_t>(j)] -
                   psi_ss * fwd[static_cast<size_t>(s - 1 - j)]);
    }
    nf.push_back(phi_ss);
    nb.push_back(psi_ss);
    const MatrixXd sigma_f_next = sigma_f - phi_ss * sigma_b * phi_ss.transpose();
    const MatrixXd sigma_b_next = sigma_b - psi_ss * sigma_f * psi_ss.transpose();
    fwd = std::move(nf);
    bwd = std::move(nb);
    sigma_f = sigma_f_next;
    sigma_b = sigma_b_next;
    Eigen::LLT<MatrixXd> llt_f(sigma_f), llt_b(sigma_b);
    if (llt_f.info() != Eigen::Success || llt_b.info() != Eigen::Success)
      throw NumericalError("innovation variance lost positive definiteness");
    chol_f = llt_f.matrixL();
    chol_b = llt_b.matrixL();
  }
  return fwd;
}

}  // namespace

VarModel generate_stationary_coefficients(int n, int lag_count,
                                          std::uint64_t seed) {
  if (n < 1 || lag_count < 1)
    throw ShapeError("n and lag_count must be positive");
  Rng rng(seed);
  std::vector<MatrixXd> pacf;
  pacf.reserve(static_cast<size_t>(lag_count));
  for (int l = 0; l < lag_count; ++l)
    pacf.push_back(contract_singular_values(rng.normal_matrix(n, n)));
  const std::vector<MatrixXd> phi = pacf_to_var(pacf, n);

  VarModel model;
  model.n_series = n;
  model.lag_spec = LagSpec::consecutive(lag_count);
  model.coefficients.resize(static_cast<Eigen::Index>(n) * lag_count, n);
  // Row-vector convention: B^(l) = phi_l^T.
  for (int l = 0; l < lag_count; ++l)
    model.coefficients.middleRows(static_cast<Eigen::Index>(l) * n, n) =
        phi[static_cast<size_t>(l)].transpose();
  return model;
}

}  // namespace ppvar
