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

#include <benchmark/benchmark.h>

#include "ppvar/karr.hpp"
#include "ppvar/rng.hpp"
#include "ppvar/secure_product.hpp"
#include "ppvar/sum_inverse.hpp"

namespace {

void BM_AcTwoParty(benchmark::State& state) {
  ppvar::Rng rng(1);
  const auto s = state.range(0);
  const Eigen::MatrixXd A = rng.normal_matrix(8, s);
  const Eigen::MatrixXd C = rng.normal_matrix(s, 8);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto res = ppvar::ac_two_party(A, C, seed++);
    benchmark::DoNotOptimize(res.shares.share_first.data());
  }
}
BENCHMARK(BM_AcTwoParty)->Arg(16)->Arg(64)->Arg(256);

void BM_AcCommodity(benchmark::State& state) {
  ppvar::Rng rng(2);
  const auto s = state.range(0);
  const Eigen::MatrixXd A = rng.normal_matrix(8, s);
  const Eigen::MatrixXd C = rng.normal_matrix(s, 8);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto res = ppvar::ac_commodity(A, C, seed++);
    benchmark::DoNotOptimize(res.shares.share_first.data());
  }
}
BENCHMARK(BM_AcCommodity)->Arg(16)->Arg(64)->Arg(256);

void BM_SumInverse(benchmark::State& state) {
  ppvar::Rng rng(3);
  const auto m = state.range(0);
  const Eigen::MatrixXd Ga = rng.normal_matrix(m, m);
  const Eigen::MatrixXd Gc = rng.normal_matrix(m, m);
  const Eigen::MatrixXd A =
      Ga * Ga.transpose() + Eigen::MatrixXd::Identity(m, m);
  const Eigen::MatrixXd C =
      Gc * Gc.transpose() + Eigen::MatrixXd::Identity(m, m);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto res = ppvar::sum_inverse(A, C, seed++);
    benchmark::DoNotOptimize(res.shares.share_first.data());
  }
}
BENCHMARK(BM_SumInverse)->Arg(8)->Arg(32);

void BM_KarrMultiply(benchmark::State& state) {
  ppvar::Rng rng(4);
  const auto m = state.range(0);
  const Eigen::MatrixXd A = rng.normal_matrix(m, 5);
  const Eigen::MatrixXd C = rng.normal_matrix(m, 5);
  const int g = static_cast<int>(m) / 2;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto res = ppvar::karr_multiply(A, C, g, seed++);
    benchmark::DoNotOptimize(res.product.data());
  }
}
BENCHMARK(BM_KarrMultiply)->Arg(50)->Arg(200);

}  // namespace
