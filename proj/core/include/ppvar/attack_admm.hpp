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

#ifndef PPVAR_ATTACK_ADMM_HPP_
#define PPVAR_ATTACK_ADMM_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ppvar/admm_distributed.hpp"
#include "ppvar/breach.hpp"
#include "ppvar/transcript.hpp"

namespace ppvar {

// Everything a semi-trusted participant legitimately knows when attacking a
// distributed-fit transcript: the public algorithm parameters plus its own
// private column. The transcript itself is filtered down to entries this
// party could observe.
struct AdmmAttackKnowledge {
  Attacker attacker = Attacker::kSemiTrustedOwner;
  std::string attacker_name;         // owner name, or central node id
  int attacker_index = 0;            // its column in the joint panel
  int T = 0, n = 0, p = 0;
  double rho = 1.0;
  double consensus_scale = -1.0;     // N in the update; -1 = n
  std::vector<std::string> owners;   // party names in column order
  // Owner attacker: its own target column (the node's update equations
  // involve the full target matrix, of which this column is known).
  Eigen::VectorXd own_target;
  // Central attacker: the full target matrix and the dual it initialized.
  Eigen::MatrixXd target;
  Eigen::MatrixXd initial_dual;
};

struct AdmmAttackConfig {
  int multistarts = 20;
  int als_sweeps = 40;
  int lm_iterations = 200;
  double residual_tol = 1e-10;
  // Two zero-residual solutions whose recovered series differ by more than
  // this are distinct; distinct feasible solutions mean ambiguity.
  double ambiguity_tol = 1e-4;
  std::uint64_t seed = 0;
  NoisePlacement noise_placement = NoisePlacement::kNone;
};

struct RecoveredSeries {
  int owner_index = 0;     // column in the joint panel
  int presample_count = 0; // leading values predating the first target row
  // Series values y(1-p) .. y(T): presample followed by the target column.
  Eigen::VectorXd series;

  Eigen::VectorXd target() const {
    return series.tail(series.size() - presample_count);
  }
};

struct AdmmAttackOutcome {
  bool attempted = false;            // false when counting says underdetermined
  bool solved = false;
  bool ambiguous = false;
  double residual = std::numeric_limits<double>::infinity();
  long long equations = 0;
  long long unknowns = 0;
  int iterations_used = 0;           // transcript iterations consumed
  int distinct_solutions = 0;
  std::vector<RecoveredSeries> recovered;
  std::string note;
};

// Unknown count the attacker faces after k iterations, per the
// equation-counting argument. Noise on the coefficients (or, after the
// rewriting, on the intermediate messages) replaces the clean coefficient
// iterates with noisy ones without changing their number.
long long admm_attack_unknowns(Attacker attacker, int T, int n, int p,
                               int k, NoisePlacement placement);

// Semi-trusted-owner reconstruction: models every broadcast update as a
// bilinear function of the unknown dual initialization, competitor series
// (with lag ties as hard constraints) and competitor coefficient iterates,
// then solves by alternating linearization with Levenberg-Marquardt
// polishing from multiple starts. Never attempts when equations fall short
// of unknowns; reports ambiguity when distinct feasible solutions appear.
AdmmAttackOutcome attack_admm_transcript(const ProtocolTranscript& transcript,
                                         const AdmmAttackKnowledge& knowledge,
                                         const AdmmAttackConfig& config);

// Noisy-variant entry point: identical reconstruction with the noisy
// coefficient iterates as unknowns (the intermediate placement reduces to
// the coefficient placement, so both run the same solve).
AdmmAttackOutcome attack_noisy_variants(const ProtocolTranscript& transcript,
                                        const AdmmAttackKnowledge& knowledge,
                                        const AdmmAttackConfig& config);

struct BreachReport {
  BreachPrediction prediction;
  double reconstruction_error = std::numeric_limits<double>::quiet_NaN();
  int iterations_used = 0;
  bool solved = false;
  bool ambiguous = false;
  double residual = 0.0;
};

// Couples an attack outcome with its closed-form prediction; when ground
// truth is supplied the reconstruction error is the worst absolute
// deviation over the recovered competitor targets.
BreachReport make_breach_report(
    const AdmmAttackOutcome& outcome, const BreachPrediction& prediction,
    const std::optional<Eigen::MatrixXd>& true_targets);

Table breach_report_table(const std::vector<BreachReport>& reports);

}  // namespace ppvar

#endif  // PPVAR_ATTACK_ADMM_HPP_
