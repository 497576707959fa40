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

#include "ppvar/lag.hpp"

#include <sstream>

#include "ppvar/errors.hpp"

namespace ppvar {

LagSpec LagSpec::consecutive(int p) {
  std::vector<int> l;
  for (int i = 1; i <= p; ++i) l.push_back(i);
  return LagSpec(std::move(l));
}

void LagSpec::validate() const {
  if (lags.empty()) throw InvalidLagError("lag list must be non-empty");
  int prev = 0;
  for (int l : lags) {
    if (l <= prev)
      throw InvalidLagError("lags must be strictly increasing and positive");
    prev = l;
  }
}

std::string LagSpec::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < lags.size(); ++i) {
    if (i) os << ',';
    os << lags[i];
  }
  return os.str();
}

LagSpec LagSpec::parse(const std::string& text) {
  std::vector<int> lags;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      lags.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw InvalidLagError("cannot parse lag '" + item + "'");
    }
  }
  LagSpec spec(std::move(lags));
  spec.validate();
  return spec;
}

LagEmbedding build_lag_embedding(const Eigen::MatrixXd& values,
                                 const LagSpec& lags) {
  lags.validate();
  const Eigen::Index T = values.rows();
  const Eigen::Index n = values.cols();
  const int L = lags.max_lag();
  if (L >= T)
    throw InvalidLagError("max lag " + std::to_string(L) +
                          " must be smaller than panel length " +
                          std::to_string(T));
  const int p = lags.count();
  LagEmbedding emb;
  emb.Y = values.bottomRows(T - L);
  emb.Z.resize(T - L, n * p);
  for (int li = 0; li < p; ++li) {
    const int l = lags.lags[static_cast<size_t>(li)];
    emb.Z.middleCols(static_cast<Eigen::Index>(li) * n, n) =
        values.middleRows(L - l, T - L);
  }
  return emb;
}

LagEmbedding build_lag_embedding(const TimeSeriesPanel& panel,
                                 const LagSpec& lags) {
  panel.validate();
  return build_lag_embedding(panel.values, lags);
}

Eigen::MatrixXd owner_covariate_block(const Eigen::MatrixXd& Z, int n_series,
                                      int owner) {
  if (n_series <= 0 || Z.cols() % n_series != 0)
    throw ShapeError("covariate column count is not a multiple of n_series");
  if (owner < 0 || owner >= n_series) throw ShapeError("owner out of range");
  const int p = static_cast<int>(Z.cols()) / n_series;
  Eigen::MatrixXd block(Z.rows(), p);
  for (int li = 0; li < p; ++li)
    block.col(li) = Z.col(static_cast<Eigen::Index>(li) * n_series + owner);
  return block;
}

Eigen::MatrixXd merge_owner_blocks(const std::vector<Eigen::MatrixXd>& blocks,
                                   int n_series) {
  if (static_cast<int>(blocks.size()) != n_series)
    throw ShapeError("expected one coefficient block per owner");
  const Eigen::Index p = blocks.front().rows();
  const Eigen::Index n_targets = blocks.front().cols();
  for (const auto& b : blocks)
    if (b.rows() != p || b.cols() != n_targets)
      throw ShapeError("owner coefficient blocks must share a common shape");
  Eigen::MatrixXd B(p * n_series, n_targets);
  for (int i = 0; i < n_series; ++i)
    for (Eigen::Index li = 0; li < p; ++li)
      B.row(li * n_series + i) = blocks[static_cast<size_t>(i)].row(li);
  return B;
}

Eigen::MatrixXd owner_coefficient_block(const Eigen::MatrixXd& B,
                                        int n_series, int owner) {
  if (n_series <= 0 || B.rows() % n_series != 0)
    throw ShapeError("coefficient row count is not a multiple of n_series");
  if (owner < 0 || owner >= n_series) throw ShapeError("owner out of range");
  const int p = static_cast<int>(B.rows()) / n_series;
  Eigen::MatrixXd block(p, B.cols());
  for (int li = 0; li < p; ++li)
    block.row(li) = B.row(static_cast<Eigen::Index>(li) * n_series + owner);
  return block;
}

}  // namespace ppvar
