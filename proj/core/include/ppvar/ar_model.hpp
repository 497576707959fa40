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

#ifndef PPVAR_AR_MODEL_HPP_
#define PPVAR_AR_MODEL_HPP_

#include <Eigen/Dense>

#include "ppvar/lag.hpp"

namespace ppvar {

// Least-squares fit of a single series on its own lags, one coefficient per
// lag. Degenerate designs resolve to the minimum-norm solution.
Eigen::VectorXd fit_ar_baseline(const Eigen::VectorXd& series,
                                const LagSpec& lags);

// One-step-ahead predictions of an AR fit over rows L..T-1 of `series`
// (aligned with the targets of build_lag_embedding).
Eigen::VectorXd ar_one_step_predictions(const Eigen::VectorXd& series,
                                        const LagSpec& lags,
                                        const Eigen::VectorXd& coefficients);

}  // namespace ppvar

#endif  // PPVAR_AR_MODEL_HPP_
