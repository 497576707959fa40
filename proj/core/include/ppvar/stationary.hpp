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

#ifndef PPVAR_STATIONARY_HPP_
#define PPVAR_STATIONARY_HPP_

#include <cstdint>

#include "ppvar/var_model.hpp"

namespace ppvar {

// Draws a random stationary VAR with `lag_count` consecutive lags via the
// partial-autocorrelation parametrization: unconstrained Gaussian matrices
// are contracted to singular values below one and mapped to autoregressive
// coefficients by the forward Levinson-type recursion. The construction is
// total: every seed yields a model whose companion spectral radius is < 1,
// and the generated matrices are dense with probability one.
VarModel generate_stationary_coefficients(int n, int lag_count,
                                          std::uint64_t seed);

}  // namespace ppvar

#endif  // PPVAR_STATIONARY_HPP_
