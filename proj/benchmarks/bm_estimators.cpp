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

#include "ppvar/admm.hpp"
#include "ppvar/admm_distributed.hpp"
#include "ppvar/lag.hpp"
#include "ppvar/least_squares.hpp"
#include "ppvar/var_model.hpp"

namespace {

struct Fixture {
  Eigen::MatrixXd Z, Y;
  std::vector<std::string> owners;
};

Fixture make_fixture(int T, int n, int p) {
  const auto model = (n == 2) ? ppvar::var2_scenario()
                              : ppvar::var10_sparse_scenario();
  const auto panel = ppvar::simulate_var(
      model, T, Eigen::MatrixXd::Identity(n, n), 500, 3);
  const auto emb = ppvar::build_lag_embedding(panel, model.lag_spec);
  (void)p;
  return {emb.Z, emb.Y, panel.owners};
}

void BM_FitLs(benchmark::State& state) {
  const Fixture fx = make_fixture(static_cast<int>(state.range(0)), 10, 3);
  for (auto _ : state) {
    auto B = ppvar::fit_ls(fx.Z, fx.Y);
    benchmark::DoNotOptimize(B.data());
  }
}
BENCHMARK(BM_FitLs)->Arg(2000)->Arg(20000);

void BM_CentralAdmm50(benchmark::State& state) {
  const Fixture fx = make_fixture(static_cast<int>(state.range(0)), 10, 3);
  ppvar::AdmmConfig config;
  config.lambda = 10.0;
  config.max_iter = 50;
  config.tol_primal = 1e-14;
  config.tol_dual = 1e-14;
  for (auto _ : state) {
    auto res = ppvar::fit_lasso_admm_central(fx.Z, fx.Y, config);
    benchmark::DoNotOptimize(res.coefficients.data());
  }
}
BENCHMARK(BM_CentralAdmm50)->Arg(2000)->Arg(20000);

void BM_DistributedAdmmIteration(benchmark::State& state) {
  const Fixture fx = make_fixture(1000, 2, 2);
  ppvar::DistributedAdmmOptions options;
  options.admm.lambda = 1.0;
  options.admm.max_iter = static_cast<int>(state.range(0));
  options.admm.tol_primal = 1e-14;
  options.admm.tol_dual = 1e-14;
  options.record_transcript = false;
  const auto parties = ppvar::split_parties(fx.Z, fx.Y, fx.owners);
  for (auto _ : state) {
    auto res = ppvar::fit_lasso_admm_distributed(parties, fx.Y, options);
    benchmark::DoNotOptimize(res.stacked.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DistributedAdmmIteration)->Arg(10)->Arg(50);

}  // namespace
