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

#include "ppvar/ar_model.hpp"

#include "ppvar/errors.hpp"
#include "ppvar/least_squares.hpp"

namespace ppvar {

Eigen::VectorXd fit_ar_baseline(const Eigen::VectorXd& series,
                                const LagSpec& lags) {
  lags.validate();
  if (series.size() <= lags.max_lag())
    throw InvalidLagError("series shorter than max lag");
  const LagEmbedding emb = build_lag_embedding(Eigen::MatrixXd(series), lags);
  return fit_ls(emb.Z, emb.Y).col(0);
}

Eigen::VectorXd ar_one_step_predictions(const Eigen::VectorXd& series,
                                        const LagSpec& lags,
                                        const Eigen::VectorXd& coefficients) {
  const LagEmbedding emb = build_lag_embedding(Eigen::MatrixXd(series), lags);
  if (emb.Z.cols() != coefficients.size())
    throw ShapeError("coefficient count does not match lag count");
  return emb.Z * coefficients;
}

}  // namespace ppvar
