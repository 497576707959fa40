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

#include <doctest.h>

#include "oracles.hpp"
#include "ppvar/errors.hpp"
#include "ppvar/lag.hpp"
#include "ppvar/least_squares.hpp"
#include "ppvar/masking.hpp"
#include "ppvar/noise.hpp"
#include "ppvar/var_model.hpp"

using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("laplace budget: sensitivity over scale") {
  CHECK(ppvar::laplace_epsilon(12.0, 0.6) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(ppvar::laplace_epsilon(12.0, 0.8) == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(ppvar::laplace_epsilon(3.5, 3.5) == doctest::Approx(1.0));
  CHECK(ppvar::laplace_epsilon(2.0, ppvar::laplace_epsilon(2.0, 4.0)) ==
        doctest::Approx(4.0));  // round-trip: scale = sensitivity / epsilon
  CHECK_THROWS_AS(ppvar::laplace_epsilon(0.0, 1.0), ppvar::CalibrationError);
}

TEST_CASE("empirical sensitivity is the observed spread") {
  MatrixXd data(2, 2);
  data << -1.5, 0.0, 2.5, 1.0;
  CHECK(ppvar::data_range_sensitivity(data) == 4.0);
  // The fixed two-owner process with unit innovations spans roughly
  // a dozen units over a long trajectory, the convention behind the
  // sensitivity-12 budget examples.
  const auto panel = ppvar::simulate_var(
      ppvar::var2_scenario(), 20000, MatrixXd::Identity(2, 2), 500, 99);
  const double spread = ppvar::data_range_sensitivity(panel.values);
  CHECK(spread > 8.0);
  CHECK(spread < 20.0);
}

TEST_CASE("gaussian sigma: formula value, scaling law, delta gate") {
  CHECK(ppvar::gaussian_sigma(1.0, 1.0, 0.05) ==
        doctest::Approx(std::sqrt(2.0 * std::log(25.0))).epsilon(1e-12));
  CHECK(ppvar::gaussian_sigma(1.0, 2.0, 0.05) ==
        doctest::Approx(0.5 * ppvar::gaussian_sigma(1.0, 1.0, 0.05)));
  CHECK_THROWS_AS(ppvar::gaussian_sigma(1.0, 1.0, 0.0),
                  ppvar::CalibrationError);
  CHECK_THROWS_AS(ppvar::gaussian_sigma(1.0, 1.0, 1.25),
                  ppvar::CalibrationError);
}

TEST_CASE("add_noise: zero scale is the identity") {
  const MatrixXd data = oracles::random_matrix(20, 3, 1);
  ppvar::NoiseSpec spec;
  spec.family = ppvar::NoiseFamily::kGaussian;
  spec.scale = 0.0;
  CHECK(ppvar::add_noise(data, spec, 99) == data);
}

TEST_CASE("add_noise is deterministic in the seed") {
  const MatrixXd data = oracles::random_matrix(10, 2, 2);
  ppvar::NoiseSpec spec;
  spec.family = ppvar::NoiseFamily::kLaplace;
  spec.scale = 0.5;
  CHECK(ppvar::add_noise(data, spec, 7) == ppvar::add_noise(data, spec, 7));
  CHECK(ppvar::add_noise(data, spec, 7) != ppvar::add_noise(data, spec, 8));
}

TEST_CASE("laplace draws have mean absolute deviation b") {
  ppvar::NoiseSpec spec;
  spec.family = ppvar::NoiseFamily::kLaplace;
  spec.scale = 0.7;
  ppvar::Rng rng(12345);
  const int n = 1000000;
  double sum_abs = 0.0;
  for (int i = 0; i < n; ++i)
    sum_abs += std::abs(ppvar::sample_noise(spec, rng));
  const double mad = sum_abs / n;
  CHECK(std::abs(mad - spec.scale) / spec.scale < 0.01);
}

TEST_CASE("uniform draws stay inside the support") {
  ppvar::NoiseSpec spec;
  spec.family = ppvar::NoiseFamily::kUniform;
  spec.scale = 0.3;
  ppvar::Rng rng(5);
  for (int i = 0; i < 10000; ++i) {
    const double v = ppvar::sample_noise(spec, rng);
    CHECK(v >= -0.3);
    CHECK(v <= 0.3);
  }
}

TEST_CASE("refit distortion grows with the noise scale") {
  const ppvar::VarModel model = ppvar::var2_scenario();
  std::vector<double> distortion_low, distortion_high;
  for (int rep = 0; rep < 20; ++rep) {
    const auto panel = ppvar::simulate_var(
        model, 2000, MatrixXd::Identity(2, 2), 500, 500 + rep);
    for (double b : {0.2, 0.6}) {
      ppvar::NoiseSpec spec;
      spec.family = ppvar::NoiseFamily::kLaplace;
      spec.scale = b;
      const MatrixXd noisy =
          ppvar::add_noise(panel.values, spec,
                           static_cast<std::uint64_t>(1000 + rep));
      const auto emb = ppvar::build_lag_embedding(noisy, model.lag_spec);
      const MatrixXd est = ppvar::fit_ls(emb.Z, emb.Y);
      const double err = (est - model.coefficients).cwiseAbs().mean();
      (b < 0.4 ? distortion_low : distortion_high).push_back(err);
    }
  }
  std::sort(distortion_low.begin(), distortion_low.end());
  std::sort(distortion_high.begin(), distortion_high.end());
  CHECK(distortion_high[10] > distortion_low[10]);  // medians
}

TEST_CASE("premultiply: identity masks pass the data through") {
  const MatrixXd Z = oracles::random_matrix(24, 4, 11);
  const MatrixXd Y = oracles::random_matrix(24, 2, 12);
  ppvar::MaskingKey key;
  key.kind = ppvar::MaskingKey::Kind::kPreRecord;
  key.matrices = {MatrixXd::Identity(24, 12), MatrixXd::Identity(24, 12)};
  // Identity halves: stack [I_top, I_bottom] column blocks.
  key.matrices[0] = MatrixXd::Identity(24, 24).leftCols(12);
  key.matrices[1] = MatrixXd::Identity(24, 24).rightCols(12);
  std::vector<ppvar::RecordBlock> parties = {
      {Z.topRows(12), Y.topRows(12)}, {Z.bottomRows(12), Y.bottomRows(12)}};
  const auto res = ppvar::premultiply_mask(parties, key);
  CHECK(res.masked_Z == Z);
  CHECK(res.masked_Y == Y);
  CHECK(res.rank_preserving);
}

TEST_CASE("premultiply with orthogonal masks preserves the LS solution") {
  const MatrixXd Z = oracles::random_matrix(40, 3, 13);
  const MatrixXd Y = oracles::random_matrix(40, 2, 14);
  std::vector<ppvar::RecordBlock> parties = {
      {Z.topRows(15), Y.topRows(15)}, {Z.bottomRows(25), Y.bottomRows(25)}};
  const auto key = ppvar::make_premultiply_key({15, 25}, 40, true, 77);
  const auto res = ppvar::premultiply_mask(parties, key);
  const MatrixXd raw = ppvar::fit_ls(Z, Y);
  const MatrixXd masked = ppvar::fit_ls(res.masked_Z, res.masked_Y);
  CHECK((masked - raw).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("premultiply by an invertible square mask preserves consistent solutions") {
  // A non-orthogonal invertible mask reweights the residuals, so noisy
  // least-squares estimates shift; what invertibility does preserve is the
  // solution set of a consistent system Z B = Y.
  const MatrixXd Z = oracles::random_matrix(30, 3, 15);
  const MatrixXd B_true = oracles::random_matrix(3, 2, 16);
  const MatrixXd Y = Z * B_true;
  std::vector<ppvar::RecordBlock> parties = {
      {Z.topRows(10), Y.topRows(10)}, {Z.bottomRows(20), Y.bottomRows(20)}};
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    const auto key = ppvar::make_premultiply_key({10, 20}, 30, false, seed);
    const auto res = ppvar::premultiply_mask(parties, key);
    const MatrixXd masked = ppvar::fit_ls(res.masked_Z, res.masked_Y);
    CHECK((masked - B_true).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("premultiply LS invariance holds for every orthogonal stacked mask") {
  const MatrixXd Z = oracles::random_matrix(36, 3, 45);
  const MatrixXd Y = oracles::random_matrix(36, 2, 46);
  std::vector<ppvar::RecordBlock> parties = {
      {Z.topRows(12), Y.topRows(12)}, {Z.bottomRows(24), Y.bottomRows(24)}};
  const MatrixXd raw = ppvar::fit_ls(Z, Y);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto key = ppvar::make_premultiply_key({12, 24}, 36, true, seed);
    const auto res = ppvar::premultiply_mask(parties, key);
    const MatrixXd masked = ppvar::fit_ls(res.masked_Z, res.masked_Y);
    CHECK((masked - raw).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("premultiply flags rank-losing mask heights") {
  const MatrixXd Z = oracles::random_matrix(20, 6, 17);
  const MatrixXd Y = oracles::random_matrix(20, 1, 18);
  std::vector<ppvar::RecordBlock> parties = {{Z, Y}};
  const auto key = ppvar::make_premultiply_key({20}, 4, false, 3);
  const auto res = ppvar::premultiply_mask(parties, key);
  CHECK_FALSE(res.rank_preserving);
}

TEST_CASE("postmultiply: identity keys change nothing") {
  const MatrixXd Z = oracles::random_matrix(30, 4, 19);
  const MatrixXd Y = oracles::random_matrix(30, 2, 20);
  ppvar::MaskingKey key;
  key.kind = ppvar::MaskingKey::Kind::kPostFeature;
  key.matrices = {MatrixXd::Identity(4, 4), MatrixXd::Identity(2, 2)};
  const auto res = ppvar::postmultiply_mask(Z, Y, key);
  CHECK(res.recovery_identity_error < 1e-10);
  CHECK((res.masked_estimate - ppvar::fit_ls(Z, Y)).cwiseAbs().maxCoeff() <
        1e-10);
}

TEST_CASE("postmultiply satisfies the key-recovery identity exactly") {
  const MatrixXd Z = oracles::random_matrix(50, 4, 21);
  const MatrixXd Y = oracles::random_matrix(50, 3, 22);
  for (std::uint64_t seed : {10u, 11u, 12u}) {
    const auto key = ppvar::make_postmultiply_key(4, 3, seed);
    const auto res = ppvar::postmultiply_mask(Z, Y, key);
    CHECK(res.recovery_identity_error < 1e-8);
  }
}

TEST_CASE("postmultiplied model predicts in the wrong space") {
  const ppvar::VarModel model = ppvar::var2_scenario();
  const auto panel =
      ppvar::simulate_var(model, 600, MatrixXd::Identity(2, 2), 300, 23);
  const auto emb = ppvar::build_lag_embedding(panel, model.lag_spec);
  const auto key = ppvar::make_postmultiply_key(4, 2, 31);
  const auto res = ppvar::postmultiply_mask(emb.Z, emb.Y, key);
  const MatrixXd raw_estimate = ppvar::fit_ls(emb.Z, emb.Y);
  // Applying the masked-domain estimate to raw covariates misses badly.
  const double masked_err =
      (emb.Z * res.masked_estimate - emb.Y).cwiseAbs().mean();
  const double raw_err = (emb.Z * raw_estimate - emb.Y).cwiseAbs().mean();
  CHECK(masked_err > raw_err + 0.05);
}

TEST_CASE("ridge outsourcing round-trips through the masked server solve") {
  const MatrixXd Z = oracles::random_matrix(60, 5, 24);
  const VectorXd y = oracles::random_matrix(60, 1, 25).col(0);
  const double lambda = 1.3;
  const VectorXd direct = ppvar::fit_ridge(Z, y, lambda);
  const VectorXd outsourced = ppvar::ridge_outsource_solve(Z, y, lambda, 42);
  CHECK((outsourced - direct).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("ridge outsourcing: trivial keys and r-cancellation") {
  const MatrixXd Z = oracles::random_matrix(40, 3, 26);
  const VectorXd y = oracles::random_matrix(40, 1, 27).col(0);
  const double lambda = 0.9;
  const MatrixXd A =
      Z.transpose() * Z + lambda * MatrixXd::Identity(3, 3);
  const VectorXd b = Z.transpose() * y;
  ppvar::MaskingKey key;
  key.kind = ppvar::MaskingKey::Kind::kRidgeOutsource;
  key.matrices = {MatrixXd::Identity(3, 3), MatrixXd::Identity(3, 3),
                  MatrixXd::Zero(3, 1)};
  const VectorXd direct = ppvar::fit_ridge(Z, y, lambda);
  CHECK((ppvar::ridge_outsource(A, b, key) - direct).cwiseAbs().maxCoeff() <
        1e-10);

  // Nonzero r with identity masks cancels exactly.
  key.matrices[2] = oracles::random_matrix(3, 1, 28);
  CHECK((ppvar::ridge_outsource(A, b, key) - direct).cwiseAbs().maxCoeff() <
        1e-9);
}

TEST_CASE("masking keys are generated within their condition bound") {
  const MatrixXd m = ppvar::random_invertible(8, 3, 1e4);
  const Eigen::JacobiSVD<MatrixXd> svd(m);
  CHECK(svd.singularValues().maxCoeff() / svd.singularValues().minCoeff() <
        1e4);
  const MatrixXd q = ppvar::random_orthogonal(8, 4);
  CHECK((q * q.transpose() - MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() <
        1e-12);
}
