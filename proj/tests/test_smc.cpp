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

#include <filesystem>

#include "oracles.hpp"
#include "ppvar/errors.hpp"
#include "ppvar/karr.hpp"
#include "ppvar/lag.hpp"
#include "ppvar/least_squares.hpp"
#include "ppvar/secure_product.hpp"
#include "ppvar/sum_inverse.hpp"

using Eigen::MatrixXd;

TEST_CASE("two-party product: identity case") {
  const MatrixXd I = MatrixXd::Identity(2, 2);
  const auto res = ppvar::ac_two_party(I, I, 5);
  CHECK((res.shares.sum() - I).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("two-party product: random rectangular instance") {
  const MatrixXd A = oracles::random_matrix(4, 6, 1);
  const MatrixXd C = oracles::random_matrix(6, 3, 2);
  const auto res = ppvar::ac_two_party(A, C, 7);
  CHECK((res.shares.sum() - A * C).cwiseAbs().maxCoeff() < 1e-10);
  // Neither share alone equals the product.
  CHECK((res.shares.share_first - A * C).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("two-party product: odd inner dimension rejected or padded") {
  const MatrixXd A = oracles::random_matrix(3, 5, 3);
  const MatrixXd C = oracles::random_matrix(5, 2, 4);
  CHECK_THROWS_AS(ppvar::ac_two_party(A, C, 9), ppvar::ProtocolError);
  ppvar::AcOptions pad;
  pad.pad_odd = true;
  const auto res = ppvar::ac_two_party(A, C, 9, pad);
  CHECK((res.shares.sum() - A * C).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("two-party transcript: each side shares p*T/2 values") {
  const int T = 12, p = 3;
  const MatrixXd Z1t = oracles::random_matrix(p, T, 5);  // owner1's A = Z1^T
  const MatrixXd Z2 = oracles::random_matrix(T, p, 6);
  const auto res = ppvar::ac_two_party(Z1t, Z2, 11);
  REQUIRE(res.transcript.size() == 2);
  const auto& first = res.transcript.entries()[0];
  CHECK(first.sender == ppvar::kOwner1);
  CHECK(first.values.size() == p * T / 2);
  const auto& second = res.transcript.entries()[1];
  CHECK(second.sender == ppvar::kOwner2);
  CHECK(second.values.size() == p * T / 2);
}

TEST_CASE("two-party product share-sum fuzz") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 engine(seed);
    const int m = 1 + static_cast<int>(engine() % 6);
    const int s = 2 * (1 + static_cast<int>(engine() % 4));
    const int k = 1 + static_cast<int>(engine() % 6);
    const MatrixXd A = oracles::random_matrix(m, s, seed * 2 + 1);
    const MatrixXd C = oracles::random_matrix(s, k, seed * 2 + 2);
    const auto res = ppvar::ac_two_party(A, C, seed + 100);
    const double scale = std::max(1.0, (A * C).cwiseAbs().maxCoeff());
    CHECK((res.shares.sum() - A * C).cwiseAbs().maxCoeff() / scale < 1e-10);
  }
}

TEST_CASE("commodity product: share sum and masked-traffic independence") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const MatrixXd A = oracles::random_matrix(3, 4, seed * 3 + 1);
    const MatrixXd C = oracles::random_matrix(4, 2, seed * 3 + 2);
    const auto res = ppvar::ac_commodity(A, C, seed + 500);
    const double scale = std::max(1.0, (A * C).cwiseAbs().maxCoeff());
    CHECK((res.shares.sum() - A * C).cwiseAbs().maxCoeff() / scale < 1e-10);
  }

  // The commodity randomness must not correlate with the data it masks.
  const int trials = 600;
  double sum_a = 0, sum_r = 0, sum_ar = 0, sum_a2 = 0, sum_r2 = 0;
  for (int t = 0; t < trials; ++t) {
    const MatrixXd A =
        oracles::random_matrix(2, 2, static_cast<std::uint64_t>(9000 + t));
    const MatrixXd C =
        oracles::random_matrix(2, 2, static_cast<std::uint64_t>(19000 + t));
    const auto res =
        ppvar::ac_commodity(A, C, static_cast<std::uint64_t>(29000 + t));
    const auto masks =
        res.transcript.received_by(ppvar::kOwner1, "R_a");
    REQUIRE(masks.size() == 1);
    const double a = A(0, 0);
    const double r = masks[0]->values(0, 0);
    sum_a += a;
    sum_r += r;
    sum_ar += a * r;
    sum_a2 += a * a;
    sum_r2 += r * r;
  }
  const double cov = sum_ar / trials - (sum_a / trials) * (sum_r / trials);
  const double corr =
      cov / std::sqrt((sum_a2 / trials - std::pow(sum_a / trials, 2)) *
                      (sum_r2 / trials - std::pow(sum_r / trials, 2)));
  CHECK(std::abs(corr) < 0.1);
}

TEST_CASE("sum-inverse protocol: identity and random SPD instances") {
  const MatrixXd I = MatrixXd::Identity(4, 4);
  const auto trivial = ppvar::sum_inverse(I, MatrixXd::Zero(4, 4), 3);
  CHECK((trivial.shares.sum() - I).cwiseAbs().maxCoeff() < 1e-8);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MatrixXd Ga = oracles::random_matrix(6, 6, seed * 5 + 1);
    const MatrixXd Gc = oracles::random_matrix(6, 6, seed * 5 + 2);
    const MatrixXd A = Ga * Ga.transpose() + MatrixXd::Identity(6, 6);
    const MatrixXd C = Gc * Gc.transpose() + MatrixXd::Identity(6, 6);
    const auto res = ppvar::sum_inverse(A, C, seed + 40);
    const MatrixXd direct = (A + C).inverse();
    CHECK((res.shares.sum() - direct).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("sum-inverse transcript logs every transmission exactly once") {
  const MatrixXd Ga = oracles::random_matrix(4, 4, 71);
  const MatrixXd Gc = oracles::random_matrix(4, 4, 72);
  const MatrixXd A = Ga * Ga.transpose() + MatrixXd::Identity(4, 4);
  const MatrixXd C = Gc * Gc.transpose() + MatrixXd::Identity(4, 4);
  const auto res = ppvar::sum_inverse(A, C, 73);
  // Four product-protocol invocations (two messages each) plus the masked
  // sum sent in step 1.
  CHECK(res.transcript.size() == 9);
  int masked_sum_count = 0;
  for (const auto& e : res.transcript.entries())
    if (e.label.find("masked_sum") != std::string::npos) ++masked_sum_count;
  CHECK(masked_sum_count == 1);
}

TEST_CASE("sum-inverse composes into the ridge normal-equations inverse") {
  // Two owners with feature-split covariates computing
  // (Z^T Z + lambda I)^{-1} without pooling raw blocks: the diagonal blocks
  // are local, the cross blocks come from product protocols, and the final
  // inverse runs through the sum-inverse protocol with an SPD split.
  const MatrixXd Z1 = oracles::random_matrix(14, 2, 61);
  const MatrixXd Z2 = oracles::random_matrix(14, 2, 62);
  MatrixXd Z(14, 4);
  Z << Z1, Z2;
  const double lambda = 0.7;

  const auto cross = ppvar::ac_two_party(Z1.transpose(), Z2, 99);
  MatrixXd A_part = MatrixXd::Zero(4, 4);
  A_part.topLeftCorner(2, 2) =
      Z1.transpose() * Z1 + lambda * MatrixXd::Identity(2, 2);
  A_part.topRightCorner(2, 2) = cross.shares.share_first;
  A_part.bottomLeftCorner(2, 2) = cross.shares.share_first.transpose();
  MatrixXd C_part = MatrixXd::Zero(4, 4);
  C_part.bottomRightCorner(2, 2) =
      Z2.transpose() * Z2 + lambda * MatrixXd::Identity(2, 2);
  C_part.topRightCorner(2, 2) = cross.shares.share_second;
  C_part.bottomLeftCorner(2, 2) = cross.shares.share_second.transpose();

  const auto res = ppvar::sum_inverse(A_part, C_part, 123);
  const MatrixXd direct =
      (Z.transpose() * Z + lambda * MatrixXd::Identity(4, 4)).inverse();
  CHECK((res.shares.sum() - direct).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("karr projection product is exact") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int m = 10 + static_cast<int>(seed % 5);
    const int k = 2, s = 3;
    const MatrixXd A = oracles::random_matrix(m, k, seed * 7 + 1);
    const MatrixXd C = oracles::random_matrix(m, s, seed * 7 + 2);
    const int g = m - k - static_cast<int>(seed % 3);
    const auto res = ppvar::karr_multiply(A, C, g, seed);
    CHECK((res.product - A.transpose() * C).cwiseAbs().maxCoeff() < 1e-10);
    // The projection genuinely changes what owner 2 transmits.
    const auto sent = res.transcript.received_by(ppvar::kOwner1, "(I-WW^T)C");
    REQUIRE(sent.size() == 1);
    if (g > 0) CHECK((sent[0]->values - C).cwiseAbs().maxCoeff() > 1e-6);
  }
}

TEST_CASE("karr: g = 0 sends the matrix in the clear") {
  const MatrixXd A = oracles::random_matrix(6, 2, 1);
  const MatrixXd C = oracles::random_matrix(6, 2, 2);
  const auto res = ppvar::karr_multiply(A, C, 0, 3);
  CHECK(res.degenerate_clear_send);
  const auto sent = res.transcript.received_by(ppvar::kOwner1, "(I-WW^T)C");
  CHECK(sent[0]->values == C);
}

TEST_CASE("karr: infeasible projection width rejected") {
  const MatrixXd A = oracles::random_matrix(6, 2, 4);
  const MatrixXd C = oracles::random_matrix(6, 2, 5);
  CHECK_THROWS_AS(ppvar::karr_multiply(A, C, 5, 6), ppvar::ProtocolError);
}

TEST_CASE("karr masked rank is recorded") {
  const MatrixXd A = oracles::random_matrix(12, 2, 7);
  const MatrixXd C = oracles::random_matrix(12, 8, 8);
  const auto res = ppvar::karr_multiply(A, C, 6, 9);
  CHECK(res.masked_rank <= 8);
  CHECK(res.masked_rank >= 1);
}

TEST_CASE("NLIE accounting: worked example and symmetric case") {
  const auto split = ppvar::nlie_optimal_g(100, 5, 5);
  CHECK(split.g_star == doctest::Approx(50.0));
  CHECK(split.nlie_owner1 == doctest::Approx(275.0));
  CHECK(split.nlie_owner2 == doctest::Approx(275.0));

  const auto sym = ppvar::nlie_optimal_g(64, 7, 7);
  CHECK(sym.g_star == doctest::Approx(32.0));  // k = s halves m
}

TEST_CASE("NLIE difference vanishes at g* across a parameter grid") {
  for (int m = 10; m <= 100; m += 10)
    for (int k = 1; k <= 8; k += 2)
      for (int s = 1; s <= 8; s += 2) {
        const auto split = ppvar::nlie_optimal_g(m, k, s);
        CHECK(std::abs(split.nlie_owner1 - split.nlie_owner2) < 1e-9);
        // And the counts match the two formulas evaluated independently.
        CHECK(split.nlie_owner1 ==
              doctest::Approx(k * s + k * split.g_star));
        CHECK(split.nlie_owner2 ==
              doctest::Approx(k * s + s * (m - split.g_star)));
      }
}

TEST_CASE("transcript JSONL round-trip") {
  const MatrixXd A = oracles::random_matrix(4, 6, 10);
  const MatrixXd C = oracles::random_matrix(6, 2, 11);
  const auto res = ppvar::ac_commodity(A, C, 12);
  const auto dir =
      std::filesystem::temp_directory_path() / "ppvar_transcript_rt";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "t.jsonl").string();
  res.transcript.save_jsonl(path);
  const auto loaded = ppvar::ProtocolTranscript::load_jsonl(path);
  REQUIRE(loaded.size() == res.transcript.size());
  CHECK(loaded.protocol_id() == res.transcript.protocol_id());
  for (size_t i = 0; i < loaded.size(); ++i) {
    CHECK(loaded.entries()[i].sender == res.transcript.entries()[i].sender);
    CHECK(loaded.entries()[i].receiver ==
          res.transcript.entries()[i].receiver);
    CHECK(loaded.entries()[i].label == res.transcript.entries()[i].label);
    CHECK(loaded.entries()[i].values == res.transcript.entries()[i].values);
  }
}

TEST_CASE("protocols are pure functions of their seed") {
  const MatrixXd A = oracles::random_matrix(4, 6, 20);
  const MatrixXd C = oracles::random_matrix(6, 3, 21);
  const auto a1 = ppvar::ac_two_party(A, C, 77);
  const auto a2 = ppvar::ac_two_party(A, C, 77);
  CHECK(a1.shares.share_first == a2.shares.share_first);
  CHECK(a1.shares.share_second == a2.shares.share_second);
  const auto b1 = ppvar::ac_commodity(A, C, 78);
  const auto b2 = ppvar::ac_commodity(A, C, 78);
  CHECK(b1.shares.share_first == b2.shares.share_first);
  const auto c1 = ppvar::ac_two_party(A, C, 79);
  CHECK(a1.shares.share_first != c1.shares.share_first);
}

TEST_CASE("transcript visibility filters by party") {
  ppvar::ProtocolTranscript t("demo");
  t.record("a", "b", "x", 1, MatrixXd::Zero(1, 1));
  t.record("b", "a", "y", 1, MatrixXd::Zero(1, 1));
  t.record("c", ppvar::kBroadcast, "z", 1, MatrixXd::Zero(1, 1));
  t.record("b", "c", "w", 1, MatrixXd::Zero(1, 1));
  CHECK(t.visible_to("a").size() == 3);  // sent, received, broadcast
  CHECK(t.received_by("a", "y").size() == 1);
  CHECK(t.received_by("a", "w").empty());
}
