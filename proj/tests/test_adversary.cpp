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

#include <set>

#include "oracles.hpp"
#include "ppvar/attack_admm.hpp"
#include "ppvar/attack_linear.hpp"
#include "ppvar/breach.hpp"
#include "ppvar/errors.hpp"
#include "ppvar/lag.hpp"
#include "ppvar/secure_product.hpp"
#include "ppvar/stationary.hpp"
#include "ppvar/var_model.hpp"

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

struct AttackFixture {
  ppvar::DistributedAdmmResult fit;
  ppvar::LagEmbedding emb;
  ppvar::TimeSeriesPanel panel;
};

AttackFixture run_protocol_instance(int T, int n, int p, int iterations,
                                    ppvar::NoisePlacement placement,
                                    double noise_scale, std::uint64_t seed) {
  AttackFixture fx;
  const auto model = ppvar::generate_stationary_coefficients(
      n, p, ppvar::derive_seed(seed, 1));
  fx.panel = ppvar::simulate_var(model, T + p, MatrixXd::Identity(n, n), 200,
                                 ppvar::derive_seed(seed, 2));
  fx.emb = ppvar::build_lag_embedding(fx.panel,
                                      ppvar::LagSpec::consecutive(p));
  ppvar::DistributedAdmmOptions options;
  options.admm.lambda = 0.1;
  options.admm.max_iter = iterations;
  options.admm.tol_primal = 1e-14;  // run every iteration
  options.admm.tol_dual = 1e-14;
  options.random_init = true;
  options.init_seed = ppvar::derive_seed(seed, 3);
  options.noise_placement = placement;
  if (placement != ppvar::NoisePlacement::kNone) {
    options.noise.family = ppvar::NoiseFamily::kLaplace;
    options.noise.scale = noise_scale;
    options.noise_seed = ppvar::derive_seed(seed, 4);
  }
  const auto parties =
      ppvar::split_parties(fx.emb.Z, fx.emb.Y, fx.panel.owners);
  fx.fit = ppvar::fit_lasso_admm_distributed(parties, fx.emb.Y, options);
  return fx;
}

ppvar::AdmmAttackKnowledge owner_knowledge(const AttackFixture& fx, int n,
                                           int p) {
  ppvar::AdmmAttackKnowledge knowledge;
  knowledge.attacker = ppvar::Attacker::kSemiTrustedOwner;
  knowledge.attacker_name = fx.panel.owners.front();
  knowledge.attacker_index = 0;
  knowledge.T = static_cast<int>(fx.emb.Y.rows());
  knowledge.n = n;
  knowledge.p = p;
  knowledge.rho = 1.0;
  knowledge.owners = fx.panel.owners;
  knowledge.own_target = fx.emb.Y.col(0);
  return knowledge;
}

}  // namespace

TEST_CASE("central breach formula equals the counting oracle") {
  CHECK(*ppvar::predict_breach_central(1000, 10, 3).k_breach == 1);
  CHECK(*ppvar::predict_breach_central(1000, 10, 3).k_breach ==
        oracles::count_k_central(1000, 10, 3));
  for (int T : {500, 1500, 3000})
    for (int n : {1, 2, 5, 12})
      for (int p : {1, 3, 8}) {
        if (T <= n * p) continue;
        const auto pred = ppvar::predict_breach_central(T, n, p);
        REQUIRE(pred.k_breach.has_value());
        CHECK(*pred.k_breach == oracles::count_k_central(T, n, p));
        CHECK(pred.equations_at_k >= pred.unknowns_at_k);
      }
}

TEST_CASE("central breach tends to ceil(p/n) for long records") {
  CHECK(*ppvar::predict_breach_central(2000000, 10, 3).k_breach == 1);
  CHECK(*ppvar::predict_breach_central(2000000, 2, 5).k_breach ==
        3);  // ceil(5/2)
}

TEST_CASE("owner breach formula equals the counting oracle") {
  for (int T : {500, 1000, 2500, 5000})
    for (int n : {2, 3, 7, 15, 20})
      for (int p : {1, 2, 5, 8}) {
        if (T <= n * p) continue;
        const auto pred = ppvar::predict_breach_owner(T, n, p);
        const long long oracle = oracles::count_k_owner(T, n, p);
        if (pred.k_breach) {
          CHECK(*pred.k_breach == oracle);
        } else {
          CHECK(oracle == -1);
        }
      }
}

TEST_CASE("owner breach: tight regimes stay consistent with the counting") {
  // Any regime passing the T > n p gate has a positive denominator, so the
  // closed form always lands on the brute-force minimum, even when that
  // minimum is huge.
  const auto tight = ppvar::predict_breach_owner(91, 10, 9);
  REQUIRE(tight.k_breach.has_value());
  CHECK(*tight.k_breach == 91);
  CHECK(*tight.k_breach == oracles::count_k_owner(91, 10, 9));
  // Sub-threshold iteration counts leave the attacker short of equations.
  CHECK(ppvar::breach_unknowns(ppvar::Attacker::kSemiTrustedOwner, 91, 10, 9,
                               90) >
        ppvar::breach_equations(ppvar::Attacker::kSemiTrustedOwner, 91, 10, 9,
                                90));
}

TEST_CASE("breach preconditions rejected") {
  CHECK_THROWS_AS(ppvar::predict_breach_central(30, 10, 3), ppvar::Error);
  CHECK_THROWS_AS(ppvar::predict_breach_owner(30, 10, 3), ppvar::Error);
}

TEST_CASE("owner iterations-to-breach follow the plotted monotonicities") {
  std::vector<int> Ts;
  for (int T = 500; T <= 5000; T += 500) Ts.push_back(T);
  for (int n : {2, 5, 10, 20})
    for (int p : {1, 3, 8}) {
      long long prev = std::numeric_limits<long long>::max();
      for (int T : Ts) {
        const auto pred = ppvar::predict_breach_owner(T, n, p);
        REQUIRE(pred.k_breach.has_value());
        CHECK(*pred.k_breach <= prev);  // non-increasing in T
        prev = *pred.k_breach;
      }
    }
  for (int T : {1000, 3000})
    for (int p : {1, 3}) {
      long long prev = 0;
      for (int n = 2; n <= 20; ++n) {
        const auto pred = ppvar::predict_breach_owner(T, n, p);
        CHECK(*pred.k_breach >= prev);  // non-decreasing in n
        prev = *pred.k_breach;
      }
    }
  for (int T : {1000, 3000})
    for (int n : {2, 10}) {
      long long prev = 0;
      for (int p = 1; p <= 8; ++p) {
        const auto pred = ppvar::predict_breach_owner(T, n, p);
        CHECK(*pred.k_breach >= prev);  // non-decreasing in p
        prev = *pred.k_breach;
      }
    }
}

TEST_CASE("breach grid emits long-format rows") {
  const auto table = ppvar::breach_grid({500, 1000}, {2, 3}, {1, 2},
                                        {ppvar::Attacker::kCentralNode,
                                         ppvar::Attacker::kSemiTrustedOwner});
  CHECK(table.header ==
        std::vector<std::string>{"T", "n", "p", "attacker", "k"});
  CHECK(table.rows.size() == 16);
}

TEST_CASE("lag covariates hold T + p - 1 unique values") {
  const int T = 20, p = 3;
  const MatrixXd series = oracles::random_matrix(T + p, 1, 5);
  ppvar::TimeSeriesPanel panel;
  panel.values = series;
  panel.owners = {"A1"};
  const auto emb =
      ppvar::build_lag_embedding(panel, ppvar::LagSpec::consecutive(p));
  std::set<double> unique;
  for (int i = 0; i < emb.Z.rows(); ++i)
    for (int j = 0; j < emb.Z.cols(); ++j) unique.insert(emb.Z(i, j));
  CHECK(unique.size() == static_cast<size_t>(T + p - 1));
}

TEST_CASE("product-protocol attack recovers covariates and target") {
  const int T = 12, p = 2;
  const auto model = ppvar::generate_stationary_coefficients(2, p, 3);
  const auto panel =
      ppvar::simulate_var(model, T + p, MatrixXd::Identity(2, 2), 150, 4);
  const auto emb =
      ppvar::build_lag_embedding(panel, ppvar::LagSpec::consecutive(p));
  const MatrixXd Z1 = ppvar::owner_covariate_block(emb.Z, 2, 0);
  const MatrixXd Z2 = ppvar::owner_covariate_block(emb.Z, 2, 1);
  const VectorXd Y1 = emb.Y.col(0);
  const VectorXd Y2 = emb.Y.col(1);

  ppvar::LinearProtocolAttackInputs inputs;
  inputs.run_zz =
      ppvar::ac_two_party(Z1.transpose(), Z2, 101).transcript;
  inputs.run_zy =
      ppvar::ac_two_party(Z1.transpose(), MatrixXd(Y2), 102).transcript;
  ppvar::AcOptions swapped;
  swapped.first_party = ppvar::kOwner2;
  swapped.second_party = ppvar::kOwner1;
  inputs.run_yz =
      ppvar::ac_two_party(Z2.transpose(), MatrixXd(Y1), 103, swapped)
          .transcript;
  inputs.mask_zz = ppvar::ac_two_party_mask(T, 101);
  inputs.mask_zy = ppvar::ac_two_party_mask(T, 102);
  inputs.mask_yz = ppvar::ac_two_party_mask(T, 103);

  const auto res = ppvar::attack_linear_algebra_protocol(
      inputs, T, ppvar::LagSpec::consecutive(p));
  REQUIRE(res.solved);
  CHECK((res.recovered_Z - Z1).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((res.recovered_Y - Y1).cwiseAbs().maxCoeff() < 1e-8);

  // Without joint masks the attack must declare failure.
  ppvar::LinearProtocolAttackInputs blind = inputs;
  blind.masks_known = false;
  CHECK_FALSE(ppvar::attack_linear_algebra_protocol(
                  blind, T, ppvar::LagSpec::consecutive(p))
                  .solved);
}

TEST_CASE("transcript attack at the predicted iteration recovers the rival") {
  const int T = 30, n = 2, p = 1;
  const auto pred = ppvar::predict_breach_owner(T, n, p);
  REQUIRE(pred.k_breach.has_value());
  CHECK(*pred.k_breach == 3);
  const auto fx = run_protocol_instance(T, n, p,
                                        static_cast<int>(*pred.k_breach),
                                        ppvar::NoisePlacement::kNone, 0, 11);
  ppvar::AdmmAttackConfig config;
  config.seed = 21;
  const auto outcome = ppvar::attack_admm_transcript(
      fx.fit.transcript, owner_knowledge(fx, n, p), config);
  CHECK(outcome.attempted);
  REQUIRE(outcome.solved);
  CHECK(outcome.residual < 1e-10);
  REQUIRE(outcome.recovered.size() == 1);
  CHECK(outcome.recovered[0].owner_index == 1);
  CHECK((outcome.recovered[0].target() - fx.emb.Y.col(1))
            .cwiseAbs()
            .maxCoeff() < 1e-4);
  // The recovered presample matches the simulated prehistory as well.
  CHECK((outcome.recovered[0].series.head(p) -
         fx.panel.values.col(1).head(p))
            .cwiseAbs()
            .maxCoeff() < 1e-4);
}

TEST_CASE("transcript attack also succeeds past the predicted iteration") {
  const int T = 30, n = 2, p = 1;
  const auto fx = run_protocol_instance(T, n, p, 5,
                                        ppvar::NoisePlacement::kNone, 0, 43);
  ppvar::AdmmAttackConfig config;
  config.seed = 47;
  const auto outcome = ppvar::attack_admm_transcript(
      fx.fit.transcript, owner_knowledge(fx, n, p), config);
  REQUIRE(outcome.solved);
  CHECK(outcome.iterations_used == 5);
  CHECK((outcome.recovered[0].target() - fx.emb.Y.col(1))
            .cwiseAbs()
            .maxCoeff() < 1e-4);
}

TEST_CASE("transcript attack below the predicted iteration refuses to run") {
  const int T = 30, n = 2, p = 1;
  const auto fx = run_protocol_instance(T, n, p, 2,
                                        ppvar::NoisePlacement::kNone, 0, 13);
  ppvar::AdmmAttackConfig config;
  config.seed = 23;
  const auto outcome = ppvar::attack_admm_transcript(
      fx.fit.transcript, owner_knowledge(fx, n, p), config);
  CHECK_FALSE(outcome.attempted);
  CHECK_FALSE(outcome.solved);
  CHECK(outcome.equations < outcome.unknowns);
}

TEST_CASE("central-node attack consumes only inbound products") {
  const int T = 30, n = 2, p = 1;
  const auto pred = ppvar::predict_breach_central(T, n, p);
  const auto fx = run_protocol_instance(T, n, p,
                                        static_cast<int>(*pred.k_breach),
                                        ppvar::NoisePlacement::kNone, 0, 17);
  ppvar::AdmmAttackKnowledge knowledge;
  knowledge.attacker = ppvar::Attacker::kCentralNode;
  knowledge.attacker_name = ppvar::kCentralNode;
  knowledge.T = static_cast<int>(fx.emb.Y.rows());
  knowledge.n = n;
  knowledge.p = p;
  knowledge.rho = 1.0;
  knowledge.owners = fx.panel.owners;
  knowledge.target = fx.emb.Y;
  knowledge.initial_dual = fx.fit.initial_dual;
  ppvar::AdmmAttackConfig config;
  const auto outcome =
      ppvar::attack_admm_transcript(fx.fit.transcript, knowledge, config);
  REQUIRE(outcome.solved);
  for (const auto& rec : outcome.recovered)
    CHECK((rec.series.head(p) -
           fx.panel.values.col(rec.owner_index).head(p))
              .cwiseAbs()
              .maxCoeff() < 1e-8);
}

TEST_CASE("noisy coefficient transmissions do not stop the reconstruction") {
  const int T = 30, n = 2, p = 1;
  const auto pred = ppvar::predict_breach_owner(T, n, p);
  const auto fx = run_protocol_instance(
      T, n, p, static_cast<int>(*pred.k_breach),
      ppvar::NoisePlacement::kCoefficients, 0.4, 19);
  ppvar::AdmmAttackConfig config;
  config.seed = 29;
  config.noise_placement = ppvar::NoisePlacement::kCoefficients;
  const auto outcome = ppvar::attack_noisy_variants(
      fx.fit.transcript, owner_knowledge(fx, n, p), config);
  REQUIRE(outcome.solved);
  CHECK((outcome.recovered[0].target() - fx.emb.Y.col(1))
            .cwiseAbs()
            .maxCoeff() < 1e-3);
}

TEST_CASE("zero-scale noise reproduces the noiseless attack") {
  const int T = 30, n = 2, p = 1;
  const auto clean = run_protocol_instance(T, n, p, 3,
                                           ppvar::NoisePlacement::kNone, 0, 31);
  const auto zero_noise = run_protocol_instance(
      T, n, p, 3, ppvar::NoisePlacement::kCoefficients, 0.0, 31);
  // Identical transcripts => identical attacks.
  REQUIRE(clean.fit.transcript.size() == zero_noise.fit.transcript.size());
  for (size_t i = 0; i < clean.fit.transcript.size(); ++i)
    CHECK(clean.fit.transcript.entries()[i].values ==
          zero_noise.fit.transcript.entries()[i].values);
}

TEST_CASE("noise placements share the unknown count after rewriting") {
  for (int k : {1, 2, 3, 5})
    for (int n : {2, 3})
      for (int p : {1, 2}) {
        const long long clean = ppvar::admm_attack_unknowns(
            ppvar::Attacker::kSemiTrustedOwner, 30, n, p, k,
            ppvar::NoisePlacement::kNone);
        const long long coef = ppvar::admm_attack_unknowns(
            ppvar::Attacker::kSemiTrustedOwner, 30, n, p, k,
            ppvar::NoisePlacement::kCoefficients);
        const long long intermediate = ppvar::admm_attack_unknowns(
            ppvar::Attacker::kSemiTrustedOwner, 30, n, p, k,
            ppvar::NoisePlacement::kIntermediate);
        CHECK(coef == intermediate);
        CHECK(coef == clean);
      }
}

TEST_CASE("breach report carries the reconstruction error") {
  const int T = 30, n = 2, p = 1;
  const auto pred = ppvar::predict_breach_owner(T, n, p);
  const auto fx = run_protocol_instance(T, n, p,
                                        static_cast<int>(*pred.k_breach),
                                        ppvar::NoisePlacement::kNone, 0, 37);
  ppvar::AdmmAttackConfig config;
  config.seed = 41;
  const auto outcome = ppvar::attack_admm_transcript(
      fx.fit.transcript, owner_knowledge(fx, n, p), config);
  const auto report = ppvar::make_breach_report(outcome, pred, fx.emb.Y);
  CHECK(report.solved == outcome.solved);
  if (report.solved) CHECK(report.reconstruction_error < 1e-4);
  const auto table = ppvar::breach_report_table({report});
  CHECK(table.rows.size() == 1);
}
