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

#ifndef PPVAR_BREACH_HPP_
#define PPVAR_BREACH_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ppvar/csv.hpp"

namespace ppvar {

enum class Attacker { kCentralNode, kSemiTrustedOwner };

std::string attacker_name(Attacker a);

// Iterations-to-breach accounting for the distributed iteration with a
// central node. Every transmitted matrix contributes T*n equations per
// iteration; the unknown side counts the receiver's blind spots.
struct BreachPrediction {
  Attacker attacker;
  int T = 0, n = 0, p = 0;
  // Minimal k with equations >= unknowns; empty when the per-iteration
  // information gain cannot catch up (non-positive denominator).
  std::optional<long long> k_breach;
  long long equations_at_k = 0;
  long long unknowns_at_k = 0;

  bool breached() const { return k_breach.has_value(); }
};

// Central node: equations T n k against unknowns p n k + T p,
// k = ceil(T p / (T n - p n)). Requires T > n p.
BreachPrediction predict_breach_central(int T, int n, int p);

// Semi-trusted owner: equations T n k against unknowns
// T n + (n-1)(k p n + T p + T),
// k = ceil((T n + (n-1)(T p + T)) / (T n - (n-1) p n)). Requires T > n p.
BreachPrediction predict_breach_owner(int T, int n, int p);

// Equation/unknown counts at a given iteration k (the accounting used by
// the closed forms above).
long long breach_equations(Attacker attacker, int T, int n, int p,
                           long long k);
long long breach_unknowns(Attacker attacker, int T, int n, int p,
                          long long k);

// Long-format (T, n, p, attacker, k) table over a parameter grid.
Table breach_grid(const std::vector<int>& Ts, const std::vector<int>& ns,
                  const std::vector<int>& ps,
                  const std::vector<Attacker>& attackers);

}  // namespace ppvar

#endif  // PPVAR_BREACH_HPP_
