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

#include "ppvar/attack_admm.hpp"

#include <algorithm>
#include <cmath>

#include "ppvar/errors.hpp"
#include "ppvar/rng.hpp"

namespace ppvar {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Unknown/observation bookkeeping and the bilinear broadcast model shared by
// the solver stages. Unknown vector layout:
//   [ U0 (T*n, column-major) | series_1 .. series_{n-1} (T+p each)
//     | B_j^k blocks (p*n each, per competitor per iteration) ]
struct OwnerAttackProblem {
  int T, n, p, K;
  int attacker_index;
  double c, alpha;
  std::vector<int> competitor_columns;  // panel columns of the competitors
  std::vector<MatrixXd> observed_updates;  // D^k, T x n
  std::vector<MatrixXd> own_products;      // what the attacker sent, T x n
  VectorXd own_target;

  int dual_size() const { return T * n; }
  int series_size() const { return T + p; }
  int coef_size() const { return p * n; }
  int linear_size() const {
    return dual_size() + static_cast<int>(competitor_columns.size()) *
                             series_size();
  }
  int coef_total() const {
    return static_cast<int>(competitor_columns.size()) * K * coef_size();
  }
  int total_size() const { return linear_size() + coef_total(); }

  MatrixXd unpack_dual(const VectorXd& theta) const {
    return Eigen::Map<const MatrixXd>(theta.data(), T, n);
  }
  VectorXd unpack_series(const VectorXd& theta, int comp) const {
    return theta.segment(dual_size() + comp * series_size(), series_size());
  }
  MatrixXd unpack_coef(const VectorXd& theta, int comp, int k) const {
    const int offset =
        linear_size() +
        (k * static_cast<int>(competitor_columns.size()) + comp) * coef_size();
    return Eigen::Map<const MatrixXd>(theta.data() + offset, p, n);
  }

  // Lag-structured covariates implied by a series hypothesis.
  MatrixXd hankel(const VectorXd& series) const {
    MatrixXd Z(T, p);
    for (int t = 0; t < T; ++t)
      for (int l = 1; l <= p; ++l) Z(t, l - 1) = series(t + p - l);
    return Z;
  }

  VectorXd residual(const VectorXd& theta) const {
    const int n_comp = static_cast<int>(competitor_columns.size());
    MatrixXd Y = MatrixXd::Zero(T, n);
    Y.col(attacker_index) = own_target;
    std::vector<MatrixXd> Zs(static_cast<size_t>(n_comp));
    for (int j = 0; j < n_comp; ++j) {
      const VectorXd series = unpack_series(theta, j);
      Y.col(competitor_columns[static_cast<size_t>(j)]) = series.tail(T);
      Zs[static_cast<size_t>(j)] = hankel(series);
    }
    MatrixXd U = unpack_dual(theta);
    VectorXd res(static_cast<Eigen::Index>(K) * T * n);
    for (int k = 0; k < K; ++k) {
      MatrixXd ZBbar = own_products[static_cast<size_t>(k)];
      for (int j = 0; j < n_comp; ++j)
        ZBbar += Zs[static_cast<size_t>(j)] * unpack_coef(theta, j, k);
      ZBbar /= static_cast<double>(n);
      const MatrixXd D_model =
          2.0 * c * Y - 2.0 * alpha * ZBbar + (1.0 - 2.0 * alpha) * U;
      const MatrixXd diff = D_model - observed_updates[static_cast<size_t>(k)];
      res.segment(static_cast<Eigen::Index>(k) * T * n, T * n) =
          Eigen::Map<const VectorXd>(diff.data(), T * n);
      U = alpha * U + alpha * ZBbar - c * Y;
    }
    return res;
  }
};

// Least-squares update of one affine-in-theta block, holding the rest
// fixed (the residual is bilinear, so both blocks admit this).
void solve_affine_block(const OwnerAttackProblem& problem, VectorXd& theta,
                        int offset, int count) {
  const VectorXd base = problem.residual(theta);
  MatrixXd J(base.size(), count);
  VectorXd probe = theta;
  for (int j = 0; j < count; ++j) {
    probe(offset + j) += 1.0;
    J.col(j) = problem.residual(probe) - base;
    probe(offset + j) = theta(offset + j);
  }
  const VectorXd current = theta.segment(offset, count);
  // Min-norm solve; the dual initialization has flat directions, so the
  // system is rank-deficient by construction.
  const VectorXd delta =
      Eigen::CompleteOrthogonalDecomposition<MatrixXd>(J).solve(-base);
  theta.segment(offset, count) = current + delta;
}

double levenberg_marquardt(const OwnerAttackProblem& problem, VectorXd& theta,
                           int max_iter, double tol) {
  double mu = 1e-6;
  VectorXd res = problem.residual(theta);
  double norm = res.norm();
  const int dim = static_cast<int>(theta.size());
  const double fd_step = 1e-7;
  double window_norm = norm;
  for (int it = 0; it < max_iter && norm >= tol; ++it) {
    // Give up on starts that stall far from feasibility; fresh starts are
    // cheaper than grinding a bad basin.
    if (it > 0 && it % 10 == 0) {
      if (norm > 0.99 * window_norm && norm > tol * 1e3) break;
      window_norm = norm;
    }
    MatrixXd J(res.size(), dim);
    VectorXd probe = theta;
    for (int j = 0; j < dim; ++j) {
      probe(j) += fd_step;
      J.col(j) = (problem.residual(probe) - res) / fd_step;
      probe(j) = theta(j);
    }
    const MatrixXd JtJ = J.transpose() * J;
    const VectorXd g = J.transpose() * res;
    bool stepped = false;
    for (int tries = 0; tries < 12; ++tries) {
      const MatrixXd A =
          JtJ + mu * MatrixXd::Identity(dim, dim);
      const VectorXd step = Eigen::LDLT<MatrixXd>(A).solve(-g);
      const VectorXd candidate = theta + step;
      const VectorXd cand_res = problem.residual(candidate);
      if (cand_res.norm() < norm) {
        theta = candidate;
        res = cand_res;
        norm = res.norm();
        mu = std::max(mu * 0.3, 1e-14);
        stepped = true;
        break;
      }
      mu *= 10.0;
    }
    if (!stepped) break;
  }
  return norm;
}

AdmmAttackOutcome attack_owner(const ProtocolTranscript& transcript,
                               const AdmmAttackKnowledge& knowledge,
                               const AdmmAttackConfig& config) {
  AdmmAttackOutcome outcome;
  const int T = knowledge.T, n = knowledge.n, p = knowledge.p;

  const auto updates =
      transcript.received_by(knowledge.attacker_name, kLabelNodeUpdate);
  std::vector<const TranscriptEntry*> own_products;
  for (const auto& e : transcript.entries())
    if (e.sender == knowledge.attacker_name && e.label == kLabelLocalProduct)
      own_products.push_back(&e);
  const int K = static_cast<int>(
      std::min(updates.size(), own_products.size()));
  if (K == 0) {
    outcome.note = "transcript holds no observable iterations";
    return outcome;
  }
  outcome.iterations_used = K;
  outcome.equations =
      breach_equations(Attacker::kSemiTrustedOwner, T, n, p, K);
  outcome.unknowns =
      admm_attack_unknowns(Attacker::kSemiTrustedOwner, T, n, p, K,
                           config.noise_placement);
  if (outcome.equations < outcome.unknowns) {
    outcome.note = "underdetermined: fewer observed values than unknowns";
    return outcome;
  }
  outcome.attempted = true;

  OwnerAttackProblem problem;
  problem.T = T;
  problem.n = n;
  problem.p = p;
  problem.K = K;
  problem.attacker_index = knowledge.attacker_index;
  const double scale_n = knowledge.consensus_scale > 0
                             ? knowledge.consensus_scale
                             : static_cast<double>(n);
  problem.c = 1.0 / (scale_n + knowledge.rho);
  problem.alpha = 1.0 - knowledge.rho * problem.c;
  for (int j = 0; j < n; ++j)
    if (j != knowledge.attacker_index) problem.competitor_columns.push_back(j);
  problem.own_target = knowledge.own_target;
  for (int k = 0; k < K; ++k) {
    problem.observed_updates.push_back(updates[static_cast<size_t>(k)]->values);
    problem.own_products.push_back(own_products[static_cast<size_t>(k)]->values);
  }

  // Multi-start alternating linearization with LM polishing.
  struct Candidate {
    double residual;
    VectorXd theta;
  };
  std::vector<Candidate> feasible;
  double best = std::numeric_limits<double>::infinity();
  for (int start = 0; start < config.multistarts; ++start) {
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(start)));
    VectorXd theta(problem.total_size());
    for (int i = 0; i < theta.size(); ++i) theta(i) = rng.normal(0.0, 0.5);
    double prev_norm = std::numeric_limits<double>::infinity();
    for (int sweep = 0; sweep < config.als_sweeps; ++sweep) {
      solve_affine_block(problem, theta, 0, problem.linear_size());
      solve_affine_block(problem, theta, problem.linear_size(),
                         problem.coef_total());
      const double norm = problem.residual(theta).norm();
      if (norm < config.residual_tol) break;
      // Alternating sweeps have a long stall tail; LM finishes faster.
      if (norm > 0.999 * prev_norm) break;
      prev_norm = norm;
    }
    const double norm = levenberg_marquardt(problem, theta,
                                            config.lm_iterations,
                                            config.residual_tol);
    best = std::min(best, norm);
    if (norm < config.residual_tol) {
      feasible.push_back({norm, theta});
      if (feasible.size() >= 3) break;  // enough to judge ambiguity
    }
  }
  outcome.residual = best;
  if (feasible.empty()) {
    outcome.note = "solver did not reach a feasible reconstruction";
    return outcome;
  }

  // Cluster feasible solutions by the recovered competitor series.
  int distinct = 1;
  for (size_t a = 1; a < feasible.size(); ++a) {
    bool matches_existing = false;
    for (size_t b = 0; b < a && !matches_existing; ++b) {
      double diff = 0.0;
      for (int j = 0; j < static_cast<int>(problem.competitor_columns.size());
           ++j)
        diff = std::max(diff, (problem.unpack_series(feasible[a].theta, j) -
                               problem.unpack_series(feasible[b].theta, j))
                                  .cwiseAbs()
                                  .maxCoeff());
      matches_existing = diff < config.ambiguity_tol;
    }
    if (!matches_existing) ++distinct;
  }
  outcome.distinct_solutions = distinct;
  outcome.ambiguous = distinct > 1;
  outcome.solved = !outcome.ambiguous;
  outcome.residual = feasible.front().residual;
  const VectorXd& theta = feasible.front().theta;
  for (int j = 0; j < static_cast<int>(problem.competitor_columns.size());
       ++j) {
    RecoveredSeries rec;
    rec.owner_index = problem.competitor_columns[static_cast<size_t>(j)];
    rec.presample_count = p;
    rec.series = problem.unpack_series(theta, j);
    outcome.recovered.push_back(std::move(rec));
  }
  outcome.note = outcome.ambiguous
                     ? "multiple feasible reconstructions: ambiguous"
                     : "reconstruction feasible and unique across starts";
  return outcome;
}

AdmmAttackOutcome attack_central(const ProtocolTranscript& transcript,
                                 const AdmmAttackKnowledge& knowledge,
                                 const AdmmAttackConfig& config) {
  AdmmAttackOutcome outcome;
  const int T = knowledge.T, n = knowledge.n, p = knowledge.p;
  if (knowledge.target.rows() != T || knowledge.target.cols() != n)
    throw ShapeError("central attacker must know the full target matrix");
  if (static_cast<int>(knowledge.owners.size()) != n)
    throw ShapeError("owner list must name every party");

  // Inbound per-owner products, in iteration order.
  std::vector<std::vector<MatrixXd>> products(static_cast<size_t>(n));
  for (const auto& e : transcript.entries()) {
    if (e.label != kLabelLocalProduct) continue;
    for (int i = 0; i < n; ++i)
      if (e.sender == knowledge.owners[static_cast<size_t>(i)])
        products[static_cast<size_t>(i)].push_back(e.values);
  }
  int K = std::numeric_limits<int>::max();
  for (const auto& seq : products)
    K = std::min(K, static_cast<int>(seq.size()));
  if (K == 0 || K == std::numeric_limits<int>::max()) {
    outcome.note = "transcript holds no complete iteration";
    return outcome;
  }
  outcome.iterations_used = K;
  outcome.equations = breach_equations(Attacker::kCentralNode, T, n, p, K);
  outcome.unknowns = admm_attack_unknowns(Attacker::kCentralNode, T, n, p, K,
                                          config.noise_placement);
  if (outcome.equations < outcome.unknowns) {
    outcome.note = "underdetermined: fewer observed values than unknowns";
    return outcome;
  }
  outcome.attempted = true;

  // Rows t > p of every owner's lag matrix are known target values, so each
  // coefficient iterate solves linearly; the p presample values follow from
  // the first rows. Two triangular linear stages, no search.
  double residual_sq = 0.0;
  bool rank_ok = true;
  for (int i = 0; i < n; ++i) {
    const VectorXd column = knowledge.target.col(i);
    MatrixXd Z_known(T - p, p);
    for (int t = p; t < T; ++t)
      for (int l = 1; l <= p; ++l) Z_known(t - p, l - 1) = column(t - l);
    if (Eigen::ColPivHouseholderQR<MatrixXd>(Z_known).rank() < p)
      rank_ok = false;
    std::vector<MatrixXd> coefs;
    for (int k = 0; k < K; ++k) {
      const MatrixXd& sent = products[static_cast<size_t>(i)][static_cast<size_t>(k)];
      const MatrixXd B =
          Z_known.colPivHouseholderQr().solve(sent.bottomRows(T - p));
      residual_sq += (Z_known * B - sent.bottomRows(T - p)).squaredNorm();
      coefs.push_back(B);
    }
    // Presample rows: z_t = [y(t-1)..y(t-p)] with indices <= 0 unknown.
    MatrixXd A = MatrixXd::Zero(static_cast<Eigen::Index>(K) * p * n, p);
    VectorXd b(static_cast<Eigen::Index>(K) * p * n);
    Eigen::Index row = 0;
    for (int k = 0; k < K; ++k) {
      const MatrixXd& sent = products[static_cast<size_t>(i)][static_cast<size_t>(k)];
      const MatrixXd& B = coefs[static_cast<size_t>(k)];
      for (int t = 0; t < p; ++t) {
        for (int col = 0; col < n; ++col) {
          double known_part = 0.0;
          A.row(row).setZero();
          for (int l = 1; l <= p; ++l) {
            const int idx = t - l;  // target index, negative = presample
            if (idx >= 0)
              known_part += column(idx) * B(l - 1, col);
            else
              A(row, p + idx) += B(l - 1, col);  // presample slot
          }
          b(row) = sent(t, col) - known_part;
          ++row;
        }
      }
    }
    const VectorXd presample =
        A.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
    residual_sq += (A * presample - b).squaredNorm();
    if (Eigen::ColPivHouseholderQR<MatrixXd>(A).rank() < p) rank_ok = false;

    RecoveredSeries rec;
    rec.owner_index = i;
    rec.presample_count = p;
    rec.series.resize(T + p);
    rec.series.head(p) = presample;
    rec.series.tail(T) = column;
    outcome.recovered.push_back(std::move(rec));
  }
  outcome.residual = std::sqrt(residual_sq);
  outcome.distinct_solutions = rank_ok ? 1 : 2;
  outcome.ambiguous = !rank_ok;
  outcome.solved = rank_ok && outcome.residual < config.residual_tol;
  outcome.note = outcome.solved
                     ? "linear reconstruction from inbound products"
                     : "reconstruction inconsistent or rank-deficient";
  return outcome;
}

}  // namespace

long long admm_attack_unknowns(Attacker attacker, int T, int n, int p, int k,
                               NoisePlacement) {
  // Noisy coefficient iterates (directly, or after rewriting the
  // intermediate placement) substitute one-for-one for the clean ones.
  return breach_unknowns(attacker, T, n, p, k);
}

AdmmAttackOutcome attack_admm_transcript(const ProtocolTranscript& transcript,
                                         const AdmmAttackKnowledge& knowledge,
                                         const AdmmAttackConfig& config) {
  if (knowledge.T <= 0 || knowledge.n <= 0 || knowledge.p <= 0)
    throw ShapeError("T, n, p must be positive");
  if (knowledge.attacker == Attacker::kSemiTrustedOwner) {
    if (knowledge.own_target.size() != knowledge.T)
      throw ShapeError("owner attacker must supply its own target column");
    return attack_owner(transcript, knowledge, config);
  }
  return attack_central(transcript, knowledge, config);
}

AdmmAttackOutcome attack_noisy_variants(const ProtocolTranscript& transcript,
                                        const AdmmAttackKnowledge& knowledge,
                                        const AdmmAttackConfig& config) {
  return attack_admm_transcript(transcript, knowledge, config);
}

BreachReport make_breach_report(
    const AdmmAttackOutcome& outcome, const BreachPrediction& prediction,
    const std::optional<Eigen::MatrixXd>& true_targets) {
  BreachReport report;
  report.prediction = prediction;
  report.iterations_used = outcome.iterations_used;
  report.solved = outcome.solved;
  report.ambiguous = outcome.ambiguous;
  report.residual = outcome.residual;
  if (true_targets && !outcome.recovered.empty()) {
    double err = 0.0;
    for (const auto& rec : outcome.recovered) {
      const VectorXd truth = true_targets->col(rec.owner_index);
      err = std::max(err, (rec.target() - truth).cwiseAbs().maxCoeff());
    }
    report.reconstruction_error = err;
  }
  return report;
}

Table breach_report_table(const std::vector<BreachReport>& reports) {
  Table table;
  table.header = {"attacker", "T",          "n",
                  "p",        "k_predicted", "k_used",
                  "solved",   "ambiguous",   "residual",
                  "reconstruction_error"};
  for (const auto& r : reports) {
    table.rows.push_back(
        {attacker_name(r.prediction.attacker), std::to_string(r.prediction.T),
         std::to_string(r.prediction.n), std::to_string(r.prediction.p),
         r.prediction.k_breach ? std::to_string(*r.prediction.k_breach)
                               : "inf",
         std::to_string(r.iterations_used), r.solved ? "true" : "false",
         r.ambiguous ? "true" : "false", format_double(r.residual),
         format_double(r.reconstruction_error)});
  }
  return table;
}

}  // namespace ppvar
