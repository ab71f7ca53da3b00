// Copyright 2026 The extbandit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Assembles a JSON configuration from flags and
// drives the engine purely through the C API in extbandit.h.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "extbandit/extbandit.h"

namespace {

using nlohmann::json;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

int fail_status(extbandit_status status) {
  std::fprintf(stderr, "error: %s (%s)\n", extbandit_last_error(),
               extbandit_status_name(status));
  switch (status) {
    case EXTBANDIT_INVALID_ARGUMENT:
    case EXTBANDIT_PARSE_ERROR:
      return kExitUsage;
    default:
      return kExitRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extbandit: adversarial combinatorial bandit experiments"};

  std::string algo = "extexp2";
  std::string actions_kind = "basis";
  std::int64_t dim = 10;
  std::int64_t max_actions = 1024;
  std::string routes_file;
  std::string adversary_kind = "stochastic";
  std::vector<double> loss;
  std::string loss_file;
  bool random_loss = false;
  std::string jester_file;
  std::int64_t horizon = 1000;
  int runs = 10;
  std::uint64_t seed = 1;
  double eta = 0.0;
  double alpha = 0.0;
  double nnmf_tol = 1e-3;
  int nnmf_window = 64;
  int nnmf_restarts = 3;
  int nnmf_max_iter = 500;
  int nnmf_rmax = 0;
  std::string slack_mode = "estimated";
  std::string out = "results.csv";
  std::string preset;
  int threads = 0;
  bool verbose = false;
  bool print_config = false;

  app.add_option("--algo", algo,
                 "policy: extexp, extexp2, exp2, exp3, exp3p, combband");
  auto* opt_actions = app.add_option(
      "--actions", actions_kind, "action set: basis, hypercube, paths");
  auto* opt_dim = app.add_option("--dim", dim, "ambient dimension d");
  auto* opt_max_actions = app.add_option(
      "--max-actions", max_actions, "hypercube enumeration cap");
  auto* opt_routes = app.add_option("--routes-file", routes_file,
                                    "paths action set: one route per line");
  auto* opt_adversary = app.add_option(
      "--adversary", adversary_kind, "adversary: fixed, stochastic, jester");
  auto* opt_loss =
      app.add_option("--loss", loss, "fixed adversary loss vector");
  auto* opt_loss_file =
      app.add_option("--loss-file", loss_file, "fixed loss vector file");
  auto* opt_random_loss = app.add_flag(
      "--random-loss", random_loss,
      "fixed adversary: draw the loss vector once per replica");
  auto* opt_jester = app.add_option("--jester-file", jester_file,
                                    "jester ratings CSV");
  auto* opt_horizon = app.add_option("--horizon,-T", horizon, "rounds");
  auto* opt_runs = app.add_option("--runs", runs, "independent replicas");
  auto* opt_seed = app.add_option("--seed", seed, "base seed");
  auto* opt_eta = app.add_option("--eta", eta, "learning rate override");
  auto* opt_alpha =
      app.add_option("--alpha", alpha, "exploration mixing override");
  auto* opt_nnmf_tol =
      app.add_option("--nnmf-tol", nnmf_tol, "factorization tolerance");
  auto* opt_nnmf_window =
      app.add_option("--nnmf-window", nnmf_window, "slack history window");
  auto* opt_nnmf_restarts =
      app.add_option("--nnmf-restarts", nnmf_restarts, "seeds per rank");
  auto* opt_nnmf_max_iter =
      app.add_option("--nnmf-max-iter", nnmf_max_iter, "update iterations");
  auto* opt_nnmf_rmax = app.add_option(
      "--nnmf-rmax", nnmf_rmax, "rank search cap (0: twice the dimension)");
  auto* opt_slack_mode = app.add_option(
      "--slack-mode", slack_mode, "slack target: estimated, observed");
  auto* opt_out = app.add_option("--out", out, "output CSV path");
  app.add_option("--preset", preset,
                 "named setup: network-d10, network-d15, jester-d20");
  auto* opt_threads =
      app.add_option("--threads", threads, "replica parallelism (0: auto)");
  app.add_flag("--verbose", verbose, "embed '#' diagnostics in the CSV");
  app.add_flag("--print-config", print_config,
               "print the expanded configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  json cfg;
  if (!preset.empty()) cfg["preset"] = preset;
  if (app.count("--algo") > 0 || preset.empty()) cfg["algo"] = algo;

  json actions;
  if (opt_actions->count()) actions["kind"] = actions_kind;
  if (opt_dim->count()) actions["dim"] = dim;
  if (opt_max_actions->count()) actions["max_actions"] = max_actions;
  if (opt_routes->count()) {
    actions["kind"] = "paths";
    actions["routes_file"] = routes_file;
  }
  if (!actions.empty()) cfg["actions"] = actions;

  json adversary;
  if (opt_adversary->count()) adversary["kind"] = adversary_kind;
  if (opt_loss->count()) {
    adversary["kind"] = "fixed";
    adversary["loss"] = loss;
  }
  if (opt_loss_file->count()) {
    adversary["kind"] = "fixed";
    adversary["loss_file"] = loss_file;
  }
  if (opt_random_loss->count()) {
    adversary["kind"] = "fixed";
    adversary["random_per_replica"] = true;
  }
  if (opt_jester->count()) {
    adversary["kind"] = "jester";
    adversary["jester_file"] = jester_file;
  }
  if (!adversary.empty()) cfg["adversary"] = adversary;

  if (opt_horizon->count()) cfg["horizon"] = horizon;
  if (opt_runs->count()) cfg["runs"] = runs;
  if (opt_seed->count()) cfg["seed"] = seed;
  if (opt_eta->count()) cfg["eta"] = eta;
  if (opt_alpha->count()) cfg["alpha"] = alpha;

  json nnmf;
  if (opt_nnmf_tol->count()) nnmf["tol"] = nnmf_tol;
  if (opt_nnmf_window->count()) nnmf["window"] = nnmf_window;
  if (opt_nnmf_restarts->count()) nnmf["restarts"] = nnmf_restarts;
  if (opt_nnmf_max_iter->count()) nnmf["max_iter"] = nnmf_max_iter;
  if (opt_nnmf_rmax->count()) nnmf["r_max"] = nnmf_rmax;
  if (!nnmf.empty()) cfg["nnmf"] = nnmf;

  if (opt_slack_mode->count()) cfg["slack_mode"] = slack_mode;
  if (opt_out->count() || preset.empty()) cfg["out"] = out;
  if (opt_threads->count()) cfg["threads"] = threads;
  if (verbose) cfg["verbose"] = true;

  extbandit_experiment* exp = nullptr;
  extbandit_status status =
      extbandit_experiment_create_json(cfg.dump().c_str(), &exp);
  if (status != EXTBANDIT_OK) return fail_status(status);

  char* manifest = nullptr;
  status = extbandit_experiment_manifest(exp, &manifest);
  if (status != EXTBANDIT_OK) {
    extbandit_experiment_free(exp);
    return fail_status(status);
  }
  const json expanded = json::parse(manifest);
  extbandit_string_free(manifest);

  if (print_config) {
    std::printf("%s\n", expanded.dump(2).c_str());
    extbandit_experiment_free(exp);
    return 0;
  }

  extbandit_result* res = nullptr;
  status = extbandit_experiment_run(exp, &res);
  if (status != EXTBANDIT_OK) {
    extbandit_experiment_free(exp);
    return fail_status(status);
  }

  const std::string out_path = expanded.value("out", out);
  status = extbandit_result_write_csv(res, out_path.c_str());
  if (status != EXTBANDIT_OK) {
    extbandit_result_free(res);
    extbandit_experiment_free(exp);
    return fail_status(status);
  }

  const std::int64_t rounds = extbandit_result_rounds(res);
  std::vector<double> mean(static_cast<std::size_t>(rounds));
  std::vector<double> stddev(static_cast<std::size_t>(rounds));
  extbandit_result_mean(res, mean.data(), rounds);
  extbandit_result_stddev(res, stddev.data(), rounds);

  std::printf("algo=%s rounds=%lld runs=%d\n",
              expanded.value("algo", algo).c_str(),
              static_cast<long long>(rounds), expanded.value("runs", runs));
  if (rounds > 0)
    std::printf("final mean cumulative regret: %.6g (std %.6g)\n",
                mean.back(), stddev.back());
  std::printf("wrote %s\n", out_path.c_str());

  extbandit_result_free(res);
  extbandit_experiment_free(exp);
  return 0;
}
