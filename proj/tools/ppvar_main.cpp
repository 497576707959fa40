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

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ppvar/admm.hpp"
#include "ppvar/admm_consensus.hpp"
#include "ppvar/admm_distributed.hpp"
#include "ppvar/attack_admm.hpp"
#include "ppvar/attack_linear.hpp"
#include "ppvar/breach.hpp"
#include "ppvar/csv.hpp"
#include "ppvar/errors.hpp"
#include "ppvar/experiment.hpp"
#include "ppvar/gradient_descent.hpp"
#include "ppvar/karr.hpp"
#include "ppvar/least_squares.hpp"
#include "ppvar/secure_product.hpp"
#include "ppvar/stationary.hpp"
#include "ppvar/sum_inverse.hpp"
#include "ppvar/svg_plot.hpp"
#include "ppvar/var_model.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitInconclusive = 4;

std::string now_utc_iso() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

std::string default_outdir() {
  if (const char* env = std::getenv("PPVAR_OUTPUT_DIR")) return env;
  return "ppvar_out";
}

struct RunContext {
  std::string subcommand;
  ordered_json config;
  fs::path outdir;
  std::string started;
  std::vector<std::string> outputs;

  fs::path path(const std::string& name) {
    outputs.push_back(name);
    return outdir / name;
  }

  void write_manifest() {
    ordered_json m;
    m["subcommand"] = subcommand;
    m["artifact_version"] = kVersion;
    m["seed"] = config.contains("seed") ? config["seed"] : ordered_json(0);
    m["output_dir"] = outdir.string();
    m["started_utc"] = started;
    m["finished_utc"] = now_utc_iso();
    m["config"] = config;
    m["outputs"] = outputs;
    const fs::path tmp = outdir / "manifest.json.tmp";
    {
      std::ofstream os(tmp);
      os << m.dump(2) << '\n';
    }
    fs::rename(tmp, outdir / "manifest.json");
  }
};

// Overlay precedence: defaults < config file < command-line flags. Unknown
// config keys are all reported at once before anything runs.
ordered_json resolve_config(const CLI::App* sub, const ordered_json& defaults,
                            const std::string& config_path) {
  ordered_json resolved = defaults;
  if (!config_path.empty()) {
    std::ifstream is(config_path);
    if (!is) throw ppvar::Error("cannot open config file: " + config_path);
    json file_cfg = json::parse(is, nullptr, true, true);
    std::vector<std::string> problems;
    for (const auto& [key, value] : file_cfg.items()) {
      if (!defaults.contains(key)) {
        problems.push_back("unknown key '" + key + "'");
        continue;
      }
      if (defaults[key].type() != value.type() &&
          !(defaults[key].is_number() && value.is_number())) {
        problems.push_back("key '" + key + "' has wrong type");
        continue;
      }
      resolved[key] = value;
    }
    if (!problems.empty()) {
      std::string msg = "config schema violations:";
      for (const auto& p : problems) msg += "\n  - " + p;
      throw ppvar::Error(msg);
    }
  }
  for (const auto& [key, value] : defaults.items()) {
    (void)value;
    const std::string flag = "--" + key;
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    if (opt && opt->count() > 0) {
      if (defaults[key].is_number_integer())
        resolved[key] = static_cast<long long>(std::stoll(opt->results()[0]));
      else if (defaults[key].is_number_float())
        resolved[key] = std::stod(opt->results()[0]);
      else if (defaults[key].is_boolean())
        resolved[key] = true;
      else
        resolved[key] = opt->results()[0];
    }
  }
  return resolved;
}

std::vector<ppvar::NoiseSetting> parse_noise_grid(const std::string& text) {
  std::vector<ppvar::NoiseSetting> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "none") {
      grid.push_back(ppvar::NoiseSetting{});
      continue;
    }
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw ppvar::Error("noise setting '" + item +
                         "' must be none or family:scale");
    ppvar::NoiseSpec spec;
    spec.family = ppvar::parse_noise_family(item.substr(0, colon));
    spec.scale = std::stod(item.substr(colon + 1));
    grid.push_back(ppvar::NoiseSetting{spec});
  }
  if (grid.empty()) grid.push_back(ppvar::NoiseSetting{});
  return grid;
}

ppvar::ExperimentConfig experiment_from_json(const ordered_json& cfg) {
  ppvar::ExperimentConfig config;
  config.scenario = cfg["scenario"].get<std::string>();
  config.replications = cfg["replications"].get<int>();
  config.T = cfg["T"].get<Eigen::Index>();
  config.burn_in = cfg["burn_in"].get<int>();
  config.noise_grid = parse_noise_grid(cfg["noise"].get<std::string>());
  config.lambda = cfg["lambda"].get<double>();
  config.rho = cfg["rho"].get<double>();
  config.admm_iters = cfg["admm_iters"].get<int>();
  config.estimator = cfg["estimator"].get<std::string>();
  config.test_fraction = cfg["test_fraction"].get<double>();
  config.seed = cfg["seed"].get<std::uint64_t>();
  config.threads = cfg["threads"].get<int>();
  if (cfg.contains("lags"))
    config.solar_lags = ppvar::LagSpec::parse(cfg["lags"].get<std::string>());
  return config;
}

// ---------------------------------------------------------------------------
// simulate

int run_simulate(RunContext& ctx) {
  const auto& cfg = ctx.config;
  const std::string scenario = cfg["scenario"].get<std::string>();
  ppvar::VarModel model;
  const std::uint64_t seed = cfg["seed"].get<std::uint64_t>();
  if (scenario == "var2") {
    model = ppvar::var2_scenario();
  } else if (scenario == "var10") {
    model = ppvar::var10_sparse_scenario();
  } else if (scenario == "generated") {
    model = ppvar::generate_stationary_coefficients(
        cfg["n"].get<int>(), cfg["lag_count"].get<int>(),
        ppvar::derive_seed(seed, 1));
  } else {
    throw ppvar::Error("unknown scenario '" + scenario +
                       "' (var2 | var10 | generated)");
  }
  const ppvar::TimeSeriesPanel panel = ppvar::simulate_var(
      model, cfg["T"].get<Eigen::Index>(),
      Eigen::MatrixXd::Identity(model.n_series, model.n_series),
      cfg["burn_in"].get<int>(), seed);
  ppvar::write_panel_csv(ctx.path("panel.csv").string(), panel);
  std::vector<std::string> header;
  for (const auto& owner : panel.owners) header.push_back(owner);
  ppvar::write_matrix_csv_file(ctx.path("coefficients_true.csv").string(),
                               model.coefficients, header);
  std::cout << "simulated " << panel.length() << " rows for "
            << panel.n_series() << " owners (spectral radius "
            << ppvar::companion_spectral_radius(model) << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// fit

int run_fit(RunContext& ctx) {
  const auto& cfg = ctx.config;
  const auto loaded =
      ppvar::read_panel_csv(cfg["data"].get<std::string>(), {});
  const ppvar::TimeSeriesPanel& panel = loaded.panel;
  const ppvar::LagSpec lags =
      ppvar::LagSpec::parse(cfg["lags"].get<std::string>());
  const ppvar::LagEmbedding emb = ppvar::build_lag_embedding(panel, lags);
  const std::string estimator = cfg["estimator"].get<std::string>();
  const double lambda = cfg["lambda"].get<double>();
  const double rho = cfg["rho"].get<double>();

  Eigen::MatrixXd coefficients;
  std::vector<ppvar::AdmmIterationStats> history;
  bool converged = true;

  ppvar::AdmmConfig admm;
  admm.lambda = lambda;
  admm.rho = rho;
  admm.max_iter = cfg["max_iter"].get<int>();

  if (estimator == "ls") {
    coefficients = ppvar::fit_ls(emb.Z, emb.Y);
  } else if (estimator == "ridge") {
    coefficients = ppvar::fit_ridge(emb.Z, Eigen::MatrixXd(emb.Y), lambda);
  } else if (estimator == "lasso_admm") {
    const ppvar::AdmmResult res =
        ppvar::fit_lasso_admm_central(emb.Z, emb.Y, admm);
    coefficients = res.coefficients;
    history = res.history;
    converged = res.converged;
  } else if (estimator == "lasso_admm_distributed") {
    ppvar::DistributedAdmmOptions options;
    options.admm = admm;
    options.record_transcript = cfg["transcript"].get<bool>();
    options.random_init = cfg["random_init"].get<bool>();
    options.init_seed = ppvar::derive_seed(cfg["seed"].get<std::uint64_t>(), 11);
    options.noise_placement =
        ppvar::parse_noise_placement(cfg["noise_placement"].get<std::string>());
    if (options.noise_placement != ppvar::NoisePlacement::kNone) {
      options.noise.family =
          ppvar::parse_noise_family(cfg["noise_family"].get<std::string>());
      options.noise.scale = cfg["noise_scale"].get<double>();
      options.noise_seed = ppvar::derive_seed(cfg["seed"].get<std::uint64_t>(), 12);
    }
    const auto parties = ppvar::split_parties(emb.Z, emb.Y, panel.owners);
    const ppvar::DistributedAdmmResult res =
        ppvar::fit_lasso_admm_distributed(parties, emb.Y, options);
    coefficients = res.stacked;
    history = res.history;
    converged = res.converged;
    if (options.record_transcript)
      res.transcript.save_jsonl(ctx.path("transcript.jsonl").string());
  } else if (estimator == "consensus") {
    // Record split into equal halves across the embedding rows.
    const Eigen::Index half = emb.Z.rows() / 2;
    std::vector<ppvar::RecordBlock> blocks;
    blocks.push_back({emb.Z.topRows(half), emb.Y.topRows(half)});
    blocks.push_back(
        {emb.Z.bottomRows(emb.Z.rows() - half), emb.Y.bottomRows(emb.Z.rows() - half)});
    const ppvar::AdmmResult res = ppvar::fit_consensus_admm(blocks, admm);
    coefficients = res.coefficients;
    history = res.history;
    converged = res.converged;
  } else if (estimator == "gd") {
    const double lipschitz = ppvar::gradient_lipschitz_constant(emb.Z);
    const ppvar::GdResult res = ppvar::fit_gd_noisy(
        emb.Z, emb.Y, 1.0 / lipschitz, std::nullopt, admm.max_iter,
        cfg["seed"].get<std::uint64_t>());
    coefficients = res.coefficients;
  } else {
    throw ppvar::Error("unknown estimator '" + estimator + "'");
  }

  std::vector<std::string> header;
  for (const auto& owner : panel.owners) header.push_back(owner);
  ppvar::write_matrix_csv_file(ctx.path("coefficients.csv").string(),
                               coefficients, header);
  if (!history.empty()) {
    ppvar::Table residuals;
    residuals.header = {"iteration", "primal_residual", "dual_residual",
                        "objective"};
    for (const auto& h : history)
      residuals.rows.push_back({std::to_string(h.iteration),
                                ppvar::format_double(h.primal_residual),
                                ppvar::format_double(h.dual_residual),
                                ppvar::format_double(h.objective)});
    ppvar::write_table_csv_file(ctx.path("residuals.csv").string(), residuals);
  }
  if (!converged)
    std::cerr << "warning: estimator stopped at max_iter without meeting "
                 "tolerances\n";
  std::cout << "fitted " << estimator << " on " << emb.Z.rows() << " rows, "
            << emb.Z.cols() << " covariates\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// protocol

int run_protocol(RunContext& ctx) {
  const auto& cfg = ctx.config;
  const std::string demo = cfg["demo"].get<std::string>();
  const std::uint64_t seed = cfg["seed"].get<std::uint64_t>();
  const int m = cfg["m"].get<int>();
  const int s = cfg["s"].get<int>();
  const int k = cfg["k"].get<int>();
  ppvar::Rng rng(seed);

  if (demo == "karr") {
    const ppvar::NlieSplit split = ppvar::nlie_optimal_g(m, k, s);
    std::cout << "g* = " << ppvar::format_double(split.g_star)
              << "\nNLIE(owner1) = " << ppvar::format_double(split.nlie_owner1)
              << "\nNLIE(owner2) = " << ppvar::format_double(split.nlie_owner2)
              << "\n|difference| = "
              << ppvar::format_double(
                     std::abs(split.nlie_owner1 - split.nlie_owner2))
              << "\n";
    int g = cfg["g"].get<int>();
    if (g < 0) g = std::min<int>(m - k, static_cast<int>(split.g_star));
    const Eigen::MatrixXd A = rng.normal_matrix(m, k);
    const Eigen::MatrixXd C = rng.normal_matrix(m, s);
    const ppvar::KarrResult res =
        ppvar::karr_multiply(A, C, g, ppvar::derive_seed(seed, 1));
    res.transcript.save_jsonl(ctx.path("transcript.jsonl").string());
    ppvar::write_matrix_csv_file(ctx.path("product.csv").string(), res.product);
    std::cout << "product error vs direct = "
              << (res.product - A.transpose() * C).norm()
              << ", masked rank = " << res.masked_rank << "\n";
    return kExitOk;
  }

  const Eigen::MatrixXd A = rng.normal_matrix(m, s);
  const Eigen::MatrixXd C = rng.normal_matrix(s, k);
  if (demo == "ac2" || demo == "commodity") {
    const ppvar::AcResult res =
        demo == "ac2" ? ppvar::ac_two_party(A, C, ppvar::derive_seed(seed, 1))
                      : ppvar::ac_commodity(A, C, ppvar::derive_seed(seed, 1));
    res.transcript.save_jsonl(ctx.path("transcript.jsonl").string());
    ppvar::write_matrix_csv_file(ctx.path("share_sum.csv").string(),
                                 res.shares.sum());
    std::cout << "share-sum error vs direct product = "
              << (res.shares.sum() - A * C).norm() << "\n";
    return kExitOk;
  }
  if (demo == "suminverse") {
    const Eigen::MatrixXd A2 =
        A * A.transpose() + Eigen::MatrixXd::Identity(m, m);
    const Eigen::MatrixXd C2raw = rng.normal_matrix(m, m);
    const Eigen::MatrixXd C2 =
        C2raw * C2raw.transpose() + Eigen::MatrixXd::Identity(m, m);
    const ppvar::AcResult res =
        ppvar::sum_inverse(A2, C2, ppvar::derive_seed(seed, 1));
    res.transcript.save_jsonl(ctx.path("transcript.jsonl").string());
    ppvar::write_matrix_csv_file(ctx.path("share_sum.csv").string(),
                                 res.shares.sum());
    std::cout << "share-sum error vs direct inverse = "
              << (res.shares.sum() - (A2 + C2).inverse()).norm() << "\n";
    return kExitOk;
  }
  throw ppvar::Error("unknown protocol demo '" + demo +
                     "' (ac2 | commodity | suminverse | karr)");
}

// ---------------------------------------------------------------------------
// attack

int run_attack(RunContext& ctx) {
  const auto& cfg = ctx.config;
  const std::string mode = cfg["mode"].get<std::string>();
  const std::uint64_t seed = cfg["seed"].get<std::uint64_t>();

  if (mode == "predict") {
    const std::string attacker = cfg["attacker"].get<std::string>();
    const ppvar::BreachPrediction pred =
        attacker == "central"
            ? ppvar::predict_breach_central(cfg["T"].get<int>(),
                                            cfg["n"].get<int>(),
                                            cfg["p"].get<int>())
            : ppvar::predict_breach_owner(cfg["T"].get<int>(),
                                          cfg["n"].get<int>(),
                                          cfg["p"].get<int>());
    ppvar::Table table;
    table.header = {"attacker", "T", "n", "p", "k", "equations_at_k",
                    "unknowns_at_k"};
    table.rows.push_back(
        {attacker_name(pred.attacker), std::to_string(pred.T),
         std::to_string(pred.n), std::to_string(pred.p),
         pred.k_breach ? std::to_string(*pred.k_breach) : "inf",
         std::to_string(pred.equations_at_k),
         std::to_string(pred.unknowns_at_k)});
    ppvar::write_table_csv_file(ctx.path("breach.csv").string(), table);
    std::cout << "k = "
              << (pred.k_breach ? std::to_string(*pred.k_breach) : "inf")
              << "\n";
    return kExitOk;
  }

  if (mode == "grid") {
    std::vector<int> Ts, ns, ps;
    for (int T = 500; T <= 5000; T += 500) Ts.push_back(T);
    for (int n = 2; n <= 20; ++n) ns.push_back(n);
    for (int p = 1; p <= 8; ++p) ps.push_back(p);
    const ppvar::Table table = ppvar::breach_grid(
        Ts, ns, ps,
        {ppvar::Attacker::kCentralNode, ppvar::Attacker::kSemiTrustedOwner});
    ppvar::write_table_csv_file(ctx.path("grid.csv").string(), table);
    std::cout << "wrote " << table.rows.size() << " grid rows\n";
    return kExitOk;
  }

  if (mode == "linear") {
    const int T = cfg["T"].get<int>();
    const int p = cfg["p"].get<int>();
    if (T % 2 != 0) throw ppvar::Error("linear demo requires even T");
    // Two owners with private lag data; three protocol runs as in the
    // least-squares pipeline, then owner2 reconstructs owner1's data.
    const ppvar::VarModel model = ppvar::generate_stationary_coefficients(
        2, p, ppvar::derive_seed(seed, 1));
    const ppvar::TimeSeriesPanel panel = ppvar::simulate_var(
        model, T + p, Eigen::MatrixXd::Identity(2, 2), 200,
        ppvar::derive_seed(seed, 2));
    const ppvar::LagEmbedding emb =
        ppvar::build_lag_embedding(panel, ppvar::LagSpec::consecutive(p));
    const Eigen::MatrixXd Z1 = ppvar::owner_covariate_block(emb.Z, 2, 0);
    const Eigen::MatrixXd Z2 = ppvar::owner_covariate_block(emb.Z, 2, 1);
    const Eigen::VectorXd Y1 = emb.Y.col(0);
    const Eigen::VectorXd Y2 = emb.Y.col(1);

    const Eigen::MatrixXd M1 =
        ppvar::ac_two_party_mask(T, ppvar::derive_seed(seed, 3));
    const Eigen::MatrixXd M2 =
        ppvar::ac_two_party_mask(T, ppvar::derive_seed(seed, 4));
    const Eigen::MatrixXd M3 =
        ppvar::ac_two_party_mask(T, ppvar::derive_seed(seed, 5));
    ppvar::LinearProtocolAttackInputs inputs;
    inputs.run_zz = ppvar::ac_two_party(Z1.transpose(), Z2,
                                        ppvar::derive_seed(seed, 3))
                        .transcript;
    inputs.run_zy = ppvar::ac_two_party(Z1.transpose(), Eigen::MatrixXd(Y2),
                                        ppvar::derive_seed(seed, 4))
                        .transcript;
    ppvar::AcOptions swapped;
    swapped.first_party = ppvar::kOwner2;
    swapped.second_party = ppvar::kOwner1;
    inputs.run_yz = ppvar::ac_two_party(Z2.transpose(), Eigen::MatrixXd(Y1),
                                        ppvar::derive_seed(seed, 5), swapped)
                        .transcript;
    inputs.mask_zz = M1;
    inputs.mask_zy = M2;
    inputs.mask_yz = M3;
    const ppvar::LinearProtocolAttackResult res =
        ppvar::attack_linear_algebra_protocol(
            inputs, T, ppvar::LagSpec::consecutive(p));
    ppvar::Table table;
    table.header = {"solved", "z_error", "y_error", "residual", "note"};
    const double z_err =
        res.solved ? (res.recovered_Z - Z1).cwiseAbs().maxCoeff() : -1;
    const double y_err =
        res.solved ? (res.recovered_Y - Y1).cwiseAbs().maxCoeff() : -1;
    table.rows.push_back({res.solved ? "true" : "false",
                          ppvar::format_double(z_err),
                          ppvar::format_double(y_err),
                          ppvar::format_double(res.residual), res.note});
    ppvar::write_table_csv_file(ctx.path("attack_linear.csv").string(), table);
    std::cout << (res.solved ? "recovered" : "inconclusive")
              << ": max |Z1 error| = " << z_err
              << ", max |Y1 error| = " << y_err << "\n";
    return res.solved ? kExitOk : kExitInconclusive;
  }

  if (mode == "transcript") {
    // Attack a recorded fit: the attacker is the first owner of the given
    // panel, armed only with its own column and the transcript file.
    const auto loaded =
        ppvar::read_panel_csv(cfg["data"].get<std::string>(), {});
    const ppvar::TimeSeriesPanel& panel = loaded.panel;
    const ppvar::LagSpec lags =
        ppvar::LagSpec::parse(cfg["lags"].get<std::string>());
    const ppvar::LagEmbedding emb = ppvar::build_lag_embedding(panel, lags);
    const ppvar::ProtocolTranscript transcript =
        ppvar::ProtocolTranscript::load_jsonl(
            cfg["transcript"].get<std::string>());
    const int n = static_cast<int>(panel.n_series());
    const int p = lags.count();
    const int T = static_cast<int>(emb.Y.rows());
    ppvar::AdmmAttackKnowledge knowledge;
    knowledge.attacker = ppvar::Attacker::kSemiTrustedOwner;
    knowledge.attacker_name = panel.owners.front();
    knowledge.attacker_index = 0;
    knowledge.T = T;
    knowledge.n = n;
    knowledge.p = p;
    knowledge.rho = cfg["rho"].get<double>();
    knowledge.owners = panel.owners;
    knowledge.own_target = emb.Y.col(0);
    ppvar::AdmmAttackConfig attack_config;
    attack_config.seed = ppvar::derive_seed(seed, 5);
    const ppvar::AdmmAttackOutcome outcome =
        ppvar::attack_admm_transcript(transcript, knowledge, attack_config);
    const ppvar::BreachPrediction pred =
        ppvar::predict_breach_owner(T, n, p);
    const ppvar::BreachReport report =
        ppvar::make_breach_report(outcome, pred, emb.Y);
    ppvar::write_table_csv_file(ctx.path("breach_report.csv").string(),
                                ppvar::breach_report_table({report}));
    std::cout << "k_used = " << outcome.iterations_used
              << ", solved = " << (outcome.solved ? "true" : "false")
              << ", residual = " << outcome.residual << "\n"
              << outcome.note << "\n";
    if (outcome.solved)
      std::cout << "max reconstruction error vs panel = "
                << report.reconstruction_error << "\n";
    return outcome.solved ? kExitOk : kExitInconclusive;
  }

  if (mode == "admm") {
    const int T = cfg["T"].get<int>();
    const int n = cfg["n"].get<int>();
    const int p = cfg["p"].get<int>();
    const std::string attacker = cfg["attacker"].get<std::string>();
    const ppvar::BreachPrediction pred =
        attacker == "central" ? ppvar::predict_breach_central(T, n, p)
                              : ppvar::predict_breach_owner(T, n, p);
    int k = cfg["k"].get<int>();
    if (k < 0) {
      if (!pred.k_breach)
        throw ppvar::Error("no finite breach iteration for this regime");
      k = static_cast<int>(*pred.k_breach);
    }

    const ppvar::VarModel model = ppvar::generate_stationary_coefficients(
        n, p, ppvar::derive_seed(seed, 1));
    const ppvar::TimeSeriesPanel panel = ppvar::simulate_var(
        model, T + p, Eigen::MatrixXd::Identity(n, n), 200,
        ppvar::derive_seed(seed, 2));
    const ppvar::LagEmbedding emb =
        ppvar::build_lag_embedding(panel, ppvar::LagSpec::consecutive(p));

    ppvar::DistributedAdmmOptions options;
    options.admm.lambda = cfg["lambda"].get<double>();
    options.admm.rho = cfg["rho"].get<double>();
    options.admm.max_iter = k;
    options.random_init = true;
    options.init_seed = ppvar::derive_seed(seed, 3);
    options.noise_placement =
        ppvar::parse_noise_placement(cfg["noise_placement"].get<std::string>());
    if (options.noise_placement != ppvar::NoisePlacement::kNone) {
      options.noise.family =
          ppvar::parse_noise_family(cfg["noise_family"].get<std::string>());
      options.noise.scale = cfg["noise_scale"].get<double>();
      options.noise_seed = ppvar::derive_seed(seed, 4);
    }
    const auto parties = ppvar::split_parties(emb.Z, emb.Y, panel.owners);
    const ppvar::DistributedAdmmResult fit =
        ppvar::fit_lasso_admm_distributed(parties, emb.Y, options);

    ppvar::AdmmAttackKnowledge knowledge;
    knowledge.T = static_cast<int>(emb.Y.rows());
    knowledge.n = n;
    knowledge.p = p;
    knowledge.rho = options.admm.rho;
    knowledge.owners = panel.owners;
    if (attacker == "central") {
      knowledge.attacker = ppvar::Attacker::kCentralNode;
      knowledge.attacker_name = ppvar::kCentralNode;
      knowledge.target = emb.Y;
      knowledge.initial_dual = fit.initial_dual;
    } else {
      knowledge.attacker = ppvar::Attacker::kSemiTrustedOwner;
      knowledge.attacker_name = panel.owners.front();
      knowledge.attacker_index = 0;
      knowledge.own_target = emb.Y.col(0);
    }
    ppvar::AdmmAttackConfig attack_config;
    attack_config.seed = ppvar::derive_seed(seed, 5);
    attack_config.noise_placement = options.noise_placement;
    const ppvar::AdmmAttackOutcome outcome =
        ppvar::attack_admm_transcript(fit.transcript, knowledge, attack_config);
    const ppvar::BreachReport report =
        ppvar::make_breach_report(outcome, pred, emb.Y);
    ppvar::write_table_csv_file(ctx.path("breach_report.csv").string(),
                                ppvar::breach_report_table({report}));
    std::cout << "k_predicted = "
              << (pred.k_breach ? std::to_string(*pred.k_breach) : "inf")
              << ", k_used = " << outcome.iterations_used
              << ", solved = " << (outcome.solved ? "true" : "false")
              << ", residual = " << outcome.residual << "\n"
              << outcome.note << "\n";
    if (outcome.solved)
      std::cout << "max reconstruction error = "
                << report.reconstruction_error << "\n";
    return outcome.solved ? kExitOk : kExitInconclusive;
  }

  throw ppvar::Error("unknown attack mode '" + mode +
                     "' (predict | grid | linear | admm | transcript)");
}

// ---------------------------------------------------------------------------
// bench

int run_bench(RunContext& ctx) {
  const auto& cfg = ctx.config;
  const ppvar::ExperimentConfig config = experiment_from_json(cfg);
  std::vector<ppvar::MetricRow> metrics;
  if (config.scenario == "solar") {
    metrics = ppvar::run_solar(cfg["data"].get<std::string>(), config);
  } else if (config.scenario == "random2" || config.scenario == "random10") {
    const ppvar::RandomCoefficientsResult res =
        ppvar::run_random_coefficients(config);
    metrics = res.metrics;
    ppvar::write_table_csv_file(ctx.path("summary.csv").string(), res.summary);
  } else {
    const ppvar::SyntheticResult res = ppvar::run_synthetic(config);
    metrics = res.metrics;
    ppvar::write_table_csv_file(ctx.path("coef_errors.csv").string(),
                                ppvar::coef_error_table(res.coefficient_errors));
    ppvar::write_table_csv_file(
        ctx.path("coef_error_summary.csv").string(),
        ppvar::coef_error_summary(res.coefficient_errors));
  }
  ppvar::write_table_csv_file(ctx.path("metrics.csv").string(),
                              ppvar::metric_table(metrics));
  if (cfg["svg"].get<bool>()) {
    std::vector<ppvar::BoxplotSeries> series;
    for (const auto& setting : config.noise_grid) {
      ppvar::BoxplotSeries s;
      s.label = setting.name();
      for (const auto& row : metrics)
        if (row.noise == s.label) s.values.push_back(row.improvement_mae_pct);
      series.push_back(std::move(s));
    }
    ppvar::write_boxplot_svg(ctx.path("improvement_mae.svg").string(),
                             "MAE improvement over baseline (%)", series);
  }
  std::cout << "wrote " << metrics.size() << " metric rows\n";
  return kExitOk;
}

struct SubcommandSpec {
  ordered_json defaults;
  int (*runner)(RunContext&);
};

int dispatch(const std::string& name, RunContext& ctx) {
  ctx.started = now_utc_iso();
  fs::create_directories(ctx.outdir);
  int code;
  if (name == "simulate")
    code = run_simulate(ctx);
  else if (name == "fit")
    code = run_fit(ctx);
  else if (name == "protocol")
    code = run_protocol(ctx);
  else if (name == "attack")
    code = run_attack(ctx);
  else if (name == "bench")
    code = run_bench(ctx);
  else
    throw ppvar::Error("unknown subcommand " + name);
  ctx.write_manifest();
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collaborative VAR forecasting with privacy mechanisms, "
               "secure matrix protocols and breach analysis"};
  app.require_subcommand(0, 1);
  std::string from_manifest;
  app.add_option("--from-manifest", from_manifest,
                 "Re-run a finished run from its manifest, reproducing its "
                 "outputs bit for bit");

  std::string config_path, outdir = default_outdir();

  // simulate
  auto* sim = app.add_subcommand("simulate", "Generate synthetic panels");
  ordered_json sim_defaults = {{"scenario", "var2"}, {"T", 20000},
                               {"burn_in", 500},     {"seed", 0},
                               {"n", 2},             {"lag_count", 2}};
  sim->add_option("--config", config_path);
  sim->add_option("--out", outdir);
  sim->add_option("--scenario", "var2 | var10 | generated");
  sim->add_option("--T", "rows to generate");
  sim->add_option("--burn_in", "discarded transient rows");
  sim->add_option("--seed", "RNG seed");
  sim->add_option("--n", "series count for generated scenario");
  sim->add_option("--lag_count", "lag count for generated scenario");

  // fit
  auto* fit = app.add_subcommand("fit", "Estimate coefficients from a panel");
  ordered_json fit_defaults = {{"data", ""},
                               {"estimator", "lasso_admm"},
                               {"lags", "1,2"},
                               {"lambda", 1.0},
                               {"rho", 1.0},
                               {"max_iter", 500},
                               {"seed", 0},
                               {"transcript", false},
                               {"random_init", false},
                               {"noise_placement", "none"},
                               {"noise_family", "laplace"},
                               {"noise_scale", 0.0}};
  fit->add_option("--config", config_path);
  fit->add_option("--out", outdir);
  fit->add_option("--data", "panel CSV path");
  fit->add_option("--estimator",
                  "ls | ridge | lasso_admm | lasso_admm_distributed | "
                  "consensus | gd");
  fit->add_option("--lags", "comma-separated lag list");
  fit->add_option("--lambda", "l1 penalty");
  fit->add_option("--rho", "splitting penalty");
  fit->add_option("--max_iter", "iteration cap");
  fit->add_option("--seed", "RNG seed");
  fit->add_flag("--transcript", "record the message transcript");
  fit->add_flag("--random_init", "random protocol initialization");
  fit->add_option("--noise_placement", "none | coefficients | intermediate");
  fit->add_option("--noise_family", "laplace | gaussian | uniform");
  fit->add_option("--noise_scale", "noise scale b");

  // protocol
  auto* proto = app.add_subcommand("protocol", "Secure matrix protocol demos");
  ordered_json proto_defaults = {{"demo", "ac2"}, {"m", 8}, {"s", 6},
                                 {"k", 4},        {"g", -1}, {"seed", 0}};
  proto->add_option("--config", config_path);
  proto->add_option("--out", outdir);
  proto->add_option("--demo", "ac2 | commodity | suminverse | karr");
  proto->add_option("--m", "rows of the left matrix");
  proto->add_option("--s", "inner dimension");
  proto->add_option("--k", "columns of the right matrix");
  proto->add_option("--g", "projection width (karr; -1 = optimal)");
  proto->add_option("--seed", "RNG seed");

  // attack
  auto* atk = app.add_subcommand("attack", "Breach predictions and attacks");
  ordered_json atk_defaults = {{"mode", "predict"},
                               {"attacker", "central"},
                               {"T", 1000},
                               {"n", 10},
                               {"p", 3},
                               {"k", -1},
                               {"lambda", 0.1},
                               {"rho", 1.0},
                               {"noise_placement", "none"},
                               {"noise_family", "laplace"},
                               {"noise_scale", 0.0},
                               {"transcript", ""},
                               {"data", ""},
                               {"lags", "1"},
                               {"seed", 0}};
  atk->add_option("--config", config_path);
  atk->add_option("--out", outdir);
  atk->add_option("--mode", "predict | grid | linear | admm | transcript");
  atk->add_option("--transcript", "recorded transcript JSONL (transcript mode)");
  atk->add_option("--data", "panel CSV of the attacking owner (transcript mode)");
  atk->add_option("--lags", "lag list of the attacked fit (transcript mode)");
  atk->add_option("--attacker", "central | owner");
  atk->add_option("--T", "records");
  atk->add_option("--n", "data owners");
  atk->add_option("--p", "lags");
  atk->add_option("--k", "iterations to run (-1 = predicted)");
  atk->add_option("--lambda", "l1 penalty of the attacked fit");
  atk->add_option("--rho", "splitting penalty of the attacked fit");
  atk->add_option("--noise_placement", "none | coefficients | intermediate");
  atk->add_option("--noise_family", "laplace | gaussian | uniform");
  atk->add_option("--noise_scale", "noise scale b");
  atk->add_option("--seed", "RNG seed");

  // bench
  auto* bench = app.add_subcommand("bench", "Experiment harness");
  ordered_json bench_defaults = {{"scenario", "var2"},
                                 {"data", ""},
                                 {"replications", 100},
                                 {"T", 20000},
                                 {"burn_in", 500},
                                 {"noise", "none"},
                                 {"lambda", 1.0},
                                 {"rho", 1.0},
                                 {"admm_iters", 50},
                                 {"estimator", "lasso_admm"},
                                 {"test_fraction", 0.2},
                                 {"seed", 0},
                                 {"threads", 0},
                                 {"lags", "1,2,24"},
                                 {"svg", false}};
  bench->add_option("--config", config_path);
  bench->add_option("--out", outdir);
  bench->add_option("--scenario", "var2 | var10 | random2 | random10 | solar");
  bench->add_option("--data", "solar panel CSV");
  bench->add_option("--replications", "Monte Carlo replications");
  bench->add_option("--T", "rows per replication");
  bench->add_option("--burn_in", "discarded transient rows");
  bench->add_option("--noise", "grid, e.g. none,laplace:0.2,laplace:0.6");
  bench->add_option("--lambda", "l1 penalty (-1 = validation pick)");
  bench->add_option("--rho", "splitting penalty");
  bench->add_option("--admm_iters", "iterations per fit");
  bench->add_option("--estimator", "lasso_admm | lasso_admm_distributed");
  bench->add_option("--test_fraction", "chronological holdout fraction");
  bench->add_option("--seed", "RNG seed");
  bench->add_option("--threads", "worker threads (0 = hardware)");
  bench->add_option("--lags", "lag list for the solar scenario");
  bench->add_flag("--svg", "write improvement boxplots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    RunContext ctx;
    if (!from_manifest.empty()) {
      std::ifstream is(from_manifest);
      if (!is) throw ppvar::Error("cannot open manifest: " + from_manifest);
      const json manifest = json::parse(is);
      ctx.subcommand = manifest.at("subcommand").get<std::string>();
      ctx.config = manifest.at("config").get<ordered_json>();
      // Reproduce into the original directory unless an --out was given.
      bool out_given = false;
      for (const CLI::App* sub : app.get_subcommands()) {
        const CLI::Option* opt = sub->get_option_no_throw("--out");
        if (opt && opt->count() > 0) out_given = true;
      }
      ctx.outdir = out_given
                       ? fs::path(outdir)
                       : fs::path(manifest.at("output_dir").get<std::string>());
      return dispatch(ctx.subcommand, ctx);
    }

    const std::vector<std::pair<CLI::App*, SubcommandSpec>> specs = {
        {sim, {sim_defaults, nullptr}},
        {fit, {fit_defaults, nullptr}},
        {proto, {proto_defaults, nullptr}},
        {atk, {atk_defaults, nullptr}},
        {bench, {bench_defaults, nullptr}}};
    for (const auto& [sub, spec] : specs) {
      if (!sub->parsed()) continue;
      ctx.subcommand = sub->get_name();
      ctx.config = resolve_config(sub, spec.defaults, config_path);
      ctx.outdir = outdir;
      return dispatch(ctx.subcommand, ctx);
    }
    std::cerr << app.help() << "\n";
    return kExitConfig;
  } catch (const ppvar::IngestionError& e) {
    std::cerr << "ingestion error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ppvar::Error& e) {
    const std::string what = e.what();
    std::cerr << "error: " << what << "\n";
    if (what.find("config") != std::string::npos ||
        what.find("unknown") != std::string::npos)
      return kExitConfig;
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
