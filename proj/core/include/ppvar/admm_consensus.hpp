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

#ifndef PPVAR_ADMM_CONSENSUS_HPP_
#define PPVAR_ADMM_CONSENSUS_HPP_

#include <vector>

#include <Eigen/Dense>

#include "ppvar/admm.hpp"

namespace ppvar {

// Row block of one record-split party: same covariates, disjoint records.
struct RecordBlock {
  Eigen::MatrixXd Z;
  Eigen::MatrixXd Y;
};

// Global-consensus solve of the pooled l1 problem over record-partitioned
// data: per-party ridge-style B updates against the shared consensus
// variable, an averaged soft-threshold H update, per-party dual updates.
// Converges to the pooled-data solution for any partition.
AdmmResult fit_consensus_admm(const std::vector<RecordBlock>& parties,
                              const AdmmConfig& config);

}  // namespace ppvar

#endif  // PPVAR_ADMM_CONSENSUS_HPP_
