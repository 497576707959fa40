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

#include "ppvar/lag.hpp"
#include "ppvar/stationary.hpp"
#include "ppvar/var_model.hpp"

namespace {

void BM_SimulateVar(benchmark::State& state) {
  const auto model = ppvar::var2_scenario();
  const Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(2, 2);
  const auto T = state.range(0);
  for (auto _ : state) {
    auto panel = ppvar::simulate_var(model, T, cov, 500, 1);
    benchmark::DoNotOptimize(panel.values.data());
  }
  state.SetItemsProcessed(state.iterations() * T);
}
BENCHMARK(BM_SimulateVar)->Arg(2000)->Arg(20000);

void BM_LagEmbedding(benchmark::State& state) {
  const auto model = ppvar::var10_sparse_scenario();
  const auto panel = ppvar::simulate_var(
      model, state.range(0), Eigen::MatrixXd::Identity(10, 10), 500, 2);
  for (auto _ : state) {
    auto emb = ppvar::build_lag_embedding(panel, model.lag_spec);
    benchmark::DoNotOptimize(emb.Z.data());
  }
}
BENCHMARK(BM_LagEmbedding)->Arg(2000)->Arg(20000);

void BM_StationaryGeneration(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto model = ppvar::generate_stationary_coefficients(
        static_cast<int>(state.range(0)), 3, seed++);
    benchmark::DoNotOptimize(model.coefficients.data());
  }
}
BENCHMARK(BM_StationaryGeneration)->Arg(2)->Arg(10)->Arg(44);

}  // namespace
