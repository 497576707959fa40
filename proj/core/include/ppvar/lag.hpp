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

#ifndef PPVAR_LAG_HPP_
#define PPVAR_LAG_HPP_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ppvar/panel.hpp"

namespace ppvar {

// Strictly increasing positive lag indices; sparse lags such as {1, 2, 24}
// are kept as-is rather than padded to a dense range.
struct LagSpec {
  std::vector<int> lags;

  LagSpec() = default;
  explicit LagSpec(std::vector<int> l) : lags(std::move(l)) {}
  static LagSpec consecutive(int p);

  int count() const { return static_cast<int>(lags.size()); }
  int max_lag() const { return lags.empty() ? 0 : lags.back(); }

  // Throws on empty, non-positive or non-increasing lag lists.
  void validate() const;

  std::string to_string() const;
  static LagSpec parse(const std::string& text);  // "1,2,24"
};

// Targets and lagged covariates of a panel. With L = max lag and lags
// (l_1 < ... < l_p):
//   Y row t = panel row t + L
//   Z row t = [panel row t+L-l_1, ..., panel row t+L-l_p]
// for t = 0..T-L-1, so the covariate of lag l of series i sits in Z column
// (lag index)*n + i.
struct LagEmbedding {
  Eigen::MatrixXd Z;  // (T-L) x (n*p)
  Eigen::MatrixXd Y;  // (T-L) x n
};

LagEmbedding build_lag_embedding(const TimeSeriesPanel& panel,
                                 const LagSpec& lags);
LagEmbedding build_lag_embedding(const Eigen::MatrixXd& values,
                                 const LagSpec& lags);

// Single-owner covariate block: the columns of Z belonging to series
// `owner` (its p lags), preserving lag order.
Eigen::MatrixXd owner_covariate_block(const Eigen::MatrixXd& Z, int n_series,
                                      int owner);

// Reassembles a lag-major coefficient matrix from per-owner p x n blocks.
Eigen::MatrixXd merge_owner_blocks(const std::vector<Eigen::MatrixXd>& blocks,
                                   int n_series);

// Inverse of merge_owner_blocks: extract the p x n block of owner i.
Eigen::MatrixXd owner_coefficient_block(const Eigen::MatrixXd& B,
                                        int n_series, int owner);

}  // namespace ppvar

#endif  // PPVAR_LAG_HPP_
