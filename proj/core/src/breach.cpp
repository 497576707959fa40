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

#include "ppvar/breach.hpp"

#include "ppvar/errors.hpp"

namespace ppvar {

namespace {

long long ceil_div(long long num, long long den) {
  return (num + den - 1) / den;
}

void check_regime(int T, int n, int p) {
  if (T <= 0 || n <= 0 || p <= 0)
    throw ShapeError("T, n, p must be positive");
  if (T <= static_cast<long long>(n) * p)
    throw Error(
        "invalid regime: T must exceed n*p, otherwise the system has more "
        "coefficients than equations");
}

}  // namespace

std::string attacker_name(Attacker a) {
  return a == Attacker::kCentralNode ? "central" : "owner";
}

long long breach_equations(Attacker, int T, int n, int, long long k) {
  return static_cast<long long>(T) * n * k;
}

long long breach_unknowns(Attacker attacker, int T, int n, int p,
                          long long k) {
  if (attacker == Attacker::kCentralNode)
    return static_cast<long long>(p) * n * k + static_cast<long long>(T) * p;
  return static_cast<long long>(T) * n +
         static_cast<long long>(n - 1) *
             (k * p * n + static_cast<long long>(T) * p + T);
}

BreachPrediction predict_breach_central(int T, int n, int p) {
  check_regime(T, n, p);
  BreachPrediction pred;
  pred.attacker = Attacker::kCentralNode;
  pred.T = T;
  pred.n = n;
  pred.p = p;
  const long long den =
      static_cast<long long>(T) * n - static_cast<long long>(p) * n;
  const long long num = static_cast<long long>(T) * p;
  if (den > 0) pred.k_breach = ceil_div(num, den);
  const long long k_eval = pred.k_breach.value_or(1);
  pred.equations_at_k = breach_equations(pred.attacker, T, n, p, k_eval);
  pred.unknowns_at_k = breach_unknowns(pred.attacker, T, n, p, k_eval);
  return pred;
}

BreachPrediction predict_breach_owner(int T, int n, int p) {
  check_regime(T, n, p);
  BreachPrediction pred;
  pred.attacker = Attacker::kSemiTrustedOwner;
  pred.T = T;
  pred.n = n;
  pred.p = p;
  const long long den =
      static_cast<long long>(T) * n -
      static_cast<long long>(n - 1) * p * n;
  const long long num =
      static_cast<long long>(T) * n +
      static_cast<long long>(n - 1) *
          (static_cast<long long>(T) * p + T);
  if (den > 0) pred.k_breach = ceil_div(num, den);
  const long long k_eval = pred.k_breach.value_or(1);
  pred.equations_at_k = breach_equations(pred.attacker, T, n, p, k_eval);
  pred.unknowns_at_k = breach_unknowns(pred.attacker, T, n, p, k_eval);
  return pred;
}

Table breach_grid(const std::vector<int>& Ts, const std::vector<int>& ns,
                  const std::vector<int>& ps,
                  const std::vector<Attacker>& attackers) {
  Table table;
  table.header = {"T", "n", "p", "attacker", "k"};
  for (Attacker a : attackers)
    for (int T : Ts)
      for (int n : ns)
        for (int p : ps) {
          if (T <= static_cast<long long>(n) * p) continue;
          const BreachPrediction pred = a == Attacker::kCentralNode
                                            ? predict_breach_central(T, n, p)
                                            : predict_breach_owner(T, n, p);
          table.rows.push_back(
              {std::to_string(T), std::to_string(n), std::to_string(p),
               attacker_name(a),
               pred.k_breach ? std::to_string(*pred.k_breach) : "inf"});
        }
  return table;
}

}  // namespace ppvar
