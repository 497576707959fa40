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

#ifndef PPVAR_SUM_INVERSE_HPP_
#define PPVAR_SUM_INVERSE_HPP_

#include <cstdint>

#include "ppvar/secure_product.hpp"

namespace ppvar {

// Two-party inverse of a sum of private matrices. Step 1 jointly converts
// A + C into P (A + C) Q with P, Q private to the second party, letting the
// first party invert it; step 2 strips Q^{-1} and P^{-1} again through
// product-protocol invocations. The result stays additively shared.
// Requires an even dimension (inherited from the product protocol).
AcResult sum_inverse(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C,
                     std::uint64_t seed, const AcOptions& options = {});

}  // namespace ppvar

#endif  // PPVAR_SUM_INVERSE_HPP_
