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

#ifndef PPVAR_SECURE_PRODUCT_HPP_
#define PPVAR_SECURE_PRODUCT_HPP_

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "ppvar/transcript.hpp"

namespace ppvar {

inline constexpr const char* kOwner1 = "owner1";
inline constexpr const char* kOwner2 = "owner2";
inline constexpr const char* kCommodityServer = "commodity_server";

// Additive shares of a matrix product: share_first is held by the party
// contributing the left factor, share_second by the right-factor party.
// Their sum equals the product; neither share alone reveals it.
struct ShareSplit {
  Eigen::MatrixXd share_first;
  Eigen::MatrixXd share_second;
  Eigen::MatrixXd sum() const { return share_first + share_second; }
};

struct AcOptions {
  // With an odd inner dimension the two-party mask cannot be halved;
  // either reject or zero-pad A and C (padding changes transcript shapes).
  bool pad_odd = false;
  double max_mask_condition = 1e4;
  std::string first_party = kOwner1;
  std::string second_party = kOwner2;
  std::string label_prefix;  // namespacing for composed protocols
};

struct AcResult {
  ShareSplit shares;
  ProtocolTranscript transcript;
};

// The jointly generated mask of the two-party protocol: both parties derive
// it from the shared seed, so it is common knowledge between them without
// ever being transmitted.
Eigen::MatrixXd ac_two_party_mask(Eigen::Index s, std::uint64_t seed,
                                  const AcOptions& options = {});

// Two-party product protocol: a jointly generated invertible mask M (s x s,
// derived from the shared seed, never transmitted) is split into halves,
//   share_first  = A M_left (M^{-1})_top C
//   share_second = A M_right (M^{-1})_bottom C,
// exchanging only A M_right and (M^{-1})_top C.
AcResult ac_two_party(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C,
                      std::uint64_t seed, const AcOptions& options = {});

// Variant appending to an existing transcript (used by composed protocols).
ShareSplit ac_two_party_into(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C,
                             std::uint64_t seed, const AcOptions& options,
                             ProtocolTranscript& transcript);

// Commodity-server product protocol: a third entity distributes correlated
// random matrices r_a + r_c = R_a R_c; the owners exchange A + R_a, C + R_c
// and one masked product, ending with additive shares of A C.
AcResult ac_commodity(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C,
                      std::uint64_t seed, const AcOptions& options = {});

}  // namespace ppvar

#endif  // PPVAR_SECURE_PRODUCT_HPP_
