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

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "extbandit/config.hpp"
#include "extbandit/errors.hpp"
#include "extbandit/harness.hpp"
#include "extbandit/jester.hpp"
#include "extbandit/results.hpp"

using namespace extbandit;
using nlohmann::json;

namespace {

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "extbandit_io_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(bool(f));
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  REQUIRE(bool(f));
  f << text;
}

}  // namespace

TEST_CASE("malformed JSON raises a parse error") {
  CHECK_THROWS_AS(config_from_json_text("{not json"), ParseError);
  CHECK_THROWS_AS(config_from_json_text(""), ParseError);
  try {
    config_from_json_text("[1, 2]");
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("JSON object") != std::string::npos);
  }
}

TEST_CASE("an empty object yields the documented defaults") {
  const ExperimentConfig cfg = config_from_json_text("{}");
  CHECK(cfg.algo == PolicyKind::kExtendedExp2);
  CHECK(cfg.actions.kind == ActionConfig::Kind::kBasis);
  CHECK(cfg.actions.dim == 10);
  CHECK(cfg.adversary.kind == AdversaryKind::kStochastic);
  CHECK(cfg.horizon == 1000);
  CHECK(cfg.runs == 10);
  CHECK(cfg.seed == 1);
  CHECK(!cfg.policy.eta.has_value());
  CHECK(!cfg.policy.alpha.has_value());
  CHECK(cfg.policy.nnmf.tol == 1e-3);
  CHECK(cfg.policy.nnmf.r_max == 0);
  CHECK(cfg.policy.nnmf.restarts == 3);
  CHECK(cfg.policy.nnmf.max_iter == 500);
  CHECK(cfg.policy.nnmf.window == 64);
  CHECK(cfg.policy.slack_mode == SlackMode::kEstimatedLoss);
  CHECK(cfg.out == "results.csv");
  CHECK(cfg.threads == 0);
  CHECK(!cfg.verbose);
}

TEST_CASE("a fully explicit configuration parses field by field") {
  const ExperimentConfig cfg = config_from_json_text(R"({
    "algo": "extexp",
    "actions": {"kind": "paths", "dim": 3, "routes": [[0], [1, 2]]},
    "adversary": {"kind": "fixed", "loss": [0.1, 0.2, 0.3]},
    "horizon": 12, "runs": 2, "seed": 9,
    "eta": 0.5, "alpha": 0.25,
    "nnmf": {"tol": 0.01, "r_max": 4, "restarts": 2, "max_iter": 50,
             "window": 8},
    "slack_mode": "observed", "out": "x.csv", "threads": 1, "verbose": true
  })");
  CHECK(cfg.algo == PolicyKind::kExtendedExp);
  CHECK(cfg.actions.kind == ActionConfig::Kind::kPaths);
  CHECK(cfg.actions.routes == std::vector<std::vector<int>>{{0}, {1, 2}});
  CHECK(cfg.adversary.kind == AdversaryKind::kFixed);
  CHECK(cfg.adversary.fixed_loss.size() == 3);
  CHECK(cfg.adversary.fixed_loss[2] == 0.3);
  CHECK(cfg.horizon == 12);
  CHECK(cfg.runs == 2);
  CHECK(cfg.seed == 9);
  CHECK(cfg.policy.eta == 0.5);
  CHECK(cfg.policy.alpha == 0.25);
  CHECK(cfg.policy.nnmf.tol == 0.01);
  CHECK(cfg.policy.nnmf.r_max == 4);
  CHECK(cfg.policy.nnmf.restarts == 2);
  CHECK(cfg.policy.nnmf.max_iter == 50);
  CHECK(cfg.policy.nnmf.window == 8);
  CHECK(cfg.policy.slack_mode == SlackMode::kObservedLoss);
  CHECK(cfg.out == "x.csv");
  CHECK(cfg.threads == 1);
  CHECK(cfg.verbose);
}

TEST_CASE("unknown keys are configuration errors") {
  CHECK_THROWS_AS(config_from_json_text(R"({"horizont": 5})"), ConfigError);
  CHECK_THROWS_AS(
      config_from_json_text(R"({"actions": {"kind": "basis", "size": 4}})"),
      ConfigError);
  CHECK_THROWS_AS(
      config_from_json_text(R"({"adversary": {"kind": "fixed", "los": []}})"),
      ConfigError);
  CHECK_THROWS_AS(config_from_json_text(R"({"nnmf": {"iters": 5}})"),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json_text(R"({"horizon": "many"})"),
                  ConfigError);
}

TEST_CASE("scalar field validation") {
  CHECK_THROWS_AS(config_from_json_text(R"({"horizon": 0})"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text(R"({"runs": 0})"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text(R"({"threads": -1})"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text(R"({"eta": -1.0})"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text(R"({"alpha": 1.5})"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text(R"({"alpha": -0.1})"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text(R"({"slack_mode": "both"})"),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json_text(R"({"algo": "ucb"})"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text(R"({"nnmf": {"tol": 0.0}})"),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json_text(R"({"nnmf": {"window": 0}})"),
                  ConfigError);
}

TEST_CASE("adversary source selection must be unambiguous") {
  CHECK_THROWS_AS(
      config_from_json_text(R"({"adversary": {"kind": "fixed"}})"),
      ConfigError);
  CHECK_THROWS_AS(config_from_json_text(R"({"adversary": {
      "kind": "fixed", "loss": [0.1], "loss_file": "x"}})"),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json_text(R"({"adversary": {
      "kind": "fixed", "loss": [0.1], "random_per_replica": true}})"),
                  ConfigError);
  const ExperimentConfig cfg = config_from_json_text(R"({"adversary": {
      "kind": "fixed", "random_per_replica": true}})");
  CHECK(cfg.adversary.random_per_replica);
  // a loss vector on the stochastic adversary is a mistake, not noise
  CHECK_THROWS_AS(config_from_json_text(R"({"adversary": {"loss": [0.5]}})"),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json_text(R"({"adversary": {
      "kind": "stochastic", "loss": [0.5]}})"),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json_text(R"({"adversary": {"kind": "maze"}})"),
                  ConfigError);
}

TEST_CASE("cross-field validation is reported as configuration errors") {
  // loss length vs dimension
  CHECK_THROWS_AS(config_from_json_text(R"({
      "actions": {"kind": "basis", "dim": 3},
      "adversary": {"kind": "fixed", "loss": [0.1, 0.2]}})"),
                  ConfigError);
  // loss entries outside [0, 1]
  CHECK_THROWS_AS(config_from_json_text(R"({
      "actions": {"kind": "basis", "dim": 2},
      "adversary": {"kind": "fixed", "loss": [0.1, 1.5]}})"),
                  ConfigError);
  // routes demand the paths kind
  CHECK_THROWS_AS(config_from_json_text(R"({
      "actions": {"kind": "basis", "dim": 2, "routes": [[0]]}})"),
                  ConfigError);
  // paths demand exactly one routes source
  CHECK_THROWS_AS(config_from_json_text(R"({
      "actions": {"kind": "paths", "dim": 2}})"),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json_text(R"({
      "actions": {"kind": "paths", "dim": 2, "routes": [[0]],
                  "routes_file": "r.txt"}})"),
                  ConfigError);
  // bad route indices surface at configuration time
  CHECK_THROWS_AS(config_from_json_text(R"({
      "actions": {"kind": "paths", "dim": 2, "routes": [[0], [5]]}})"),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json_text(R"({
      "actions": {"kind": "basis", "dim": 0}})"),
                  ConfigError);
  // classic-basis policies reject structured action sets
  CHECK_THROWS_AS(config_from_json_text(R"({
      "algo": "exp3",
      "actions": {"kind": "hypercube", "dim": 2, "max_actions": 3}})"),
                  ConfigError);
  try {
    config_from_json_text(R"({
        "algo": "exp3p",
        "actions": {"kind": "paths", "dim": 2, "routes": [[0], [1]]}})");
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("canonical basis") != std::string::npos);
  }
}

TEST_CASE("presets expand and explicit keys win") {
  const ExperimentConfig d10 =
      config_from_json(json{{"preset", "network-d10"}});
  CHECK(d10.algo == PolicyKind::kExtendedExp2);
  CHECK(d10.actions.kind == ActionConfig::Kind::kPaths);
  CHECK(d10.actions.dim == 10);
  CHECK(d10.actions.routes.size() == 16);
  CHECK(d10.adversary.kind == AdversaryKind::kFixed);
  CHECK(d10.adversary.fixed_loss[0] == 0.515);
  CHECK(d10.horizon == 10000);
  CHECK(d10.runs == 100);
  CHECK(d10.policy.eta == 40.0);
  CHECK(d10.policy.alpha == 0.01);
  CHECK(d10.policy.slack_mode == SlackMode::kObservedLoss);

  const ExperimentConfig d15 = config_from_json(
      json{{"preset", "network-d15"}, {"horizon", 7}, {"algo", "exp2"}});
  CHECK(d15.algo == PolicyKind::kExp2);
  CHECK(d15.horizon == 7);           // explicit key kept
  CHECK(d15.runs == 100);            // preset key applied
  CHECK(d15.actions.dim == 15);
  CHECK(d15.actions.routes.size() == 19);
  CHECK(!d15.policy.eta.has_value());

  CHECK_THROWS_AS(config_from_json(json{{"preset", "network-d99"}}),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json(json{{"preset", 3}}), ConfigError);
  CHECK(preset_names() ==
        std::vector<std::string>{"network-d10", "network-d15", "jester-d20"});
}

TEST_CASE("jester-backed configs load the ratings file") {
  const auto dir = temp_dir();
  const auto ratings = dir / "ratings_ok.csv";
  write_file(ratings, "5,-10,0,10\n3,99,5,5\n4,10,-10,0\n");
  json j{{"actions", {{"kind", "basis"}, {"dim", 3}}},
         {"adversary",
          {{"kind", "jester"}, {"jester_file", ratings.string()}}}};
  const ExperimentConfig cfg = config_from_json(j);
  CHECK(cfg.adversary.kind == AdversaryKind::kDataset);
  REQUIRE(cfg.adversary.ratings != nullptr);
  CHECK(cfg.adversary.ratings->rows() == 2);
  CHECK(cfg.adversary.ratings->cols() == 3);
  CHECK(cfg.adversary.ratings_users == 2);

  // the manifest records the path and the surviving user count
  const json m = config_to_json(cfg);
  CHECK(m["adversary"]["kind"] == "jester");
  CHECK(m["adversary"]["users"] == 2);
  // and it parses back to the same manifest
  CHECK(config_to_json(config_from_json(m)) == m);

  j["adversary"]["jester_file"] = (dir / "no_such_file.csv").string();
  CHECK_THROWS_AS(config_from_json(j), IoError);
  json missing{{"adversary", {{"kind", "jester"}}}};
  CHECK_THROWS_AS(config_from_json(missing), ConfigError);
}

TEST_CASE("the emitted manifest is a fixed point of parsing") {
  const std::string text = R"({
    "algo": "extexp",
    "actions": {"kind": "paths", "dim": 3, "routes": [[0], [1, 2]]},
    "adversary": {"kind": "fixed", "loss": [0.1, 0.2, 0.3]},
    "horizon": 12, "runs": 2, "seed": 9,
    "eta": 0.5, "alpha": 0.25,
    "nnmf": {"tol": 0.01, "r_max": 4, "restarts": 2, "max_iter": 50,
             "window": 8},
    "slack_mode": "observed", "out": "x.csv", "threads": 1, "verbose": true
  })";
  const json m1 = config_to_json(config_from_json_text(text));
  CHECK(m1["algo"] == "extexp");
  CHECK(m1["eta"] == 0.5);
  CHECK(config_to_json(config_from_json(m1)) == m1);

  // defaults round-trip too, with unset eta/alpha kept null
  const json d1 = config_to_json(config_from_json_text("{}"));
  CHECK(d1["eta"].is_null());
  CHECK(d1["alpha"].is_null());
  CHECK(config_to_json(config_from_json(d1)) == d1);

  const json p1 =
      config_to_json(config_from_json(json{{"preset", "network-d10"}}));
  CHECK(config_to_json(config_from_json(p1)) == p1);
}

TEST_CASE("results CSV formatting is exact") {
  ExperimentConfig cfg;
  cfg.algo = PolicyKind::kExp3;
  cfg.runs = 3;
  ReplicatedResult res;
  res.mean = Vector(2);
  res.mean << 1.5, 2.5;
  res.stddev = Vector(2);
  res.stddev << 0.5, 0.25;
  res.n_actions = 2;
  res.dim = 2;
  res.eta = 0.25;
  res.alpha = 0.5;
  CHECK(format_results_csv(cfg, res) ==
        "round,mean_cum_regret,std_cum_regret\n"
        "1,1.5,0.5\n"
        "2,2.5,0.25\n");

  cfg.verbose = true;
  res.fallback_rounds = 4;
  res.replica0_nnmf = {NnmfDiag{2, 0.125, false}, NnmfDiag{1, 1e-9, true}};
  CHECK(format_results_csv(cfg, res) ==
        "# algo=exp3 n_actions=2 dim=2 runs=3 eta=0.25 alpha=0.5\n"
        "# fallback_rounds=4\n"
        "# nnmf round=1 rank=2 rel_error=0.125 fallback=0\n"
        "# nnmf round=2 rank=1 rel_error=1e-09 fallback=1\n"
        "round,mean_cum_regret,std_cum_regret\n"
        "1,1.5,0.5\n"
        "2,2.5,0.25\n");
}

TEST_CASE("written results parse back to the aggregate") {
  ExperimentConfig cfg = config_from_json_text(R"({
    "algo": "exp3",
    "actions": {"kind": "basis", "dim": 2},
    "adversary": {"kind": "fixed", "loss": [0.3, 1.0]},
    "horizon": 25, "runs": 2, "seed": 3
  })");
  const ReplicatedResult res = run_replicated(cfg);
  const auto dir = temp_dir();
  const auto csv_path = dir / "out.csv";
  write_results_csv(csv_path.string(), cfg, res);

  const std::string csv = read_file(csv_path);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 26);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "round,mean_cum_regret,std_cum_regret");
  long round = 0;
  double mean = 0.0, stddev = 0.0;
  for (long t = 1; std::getline(lines, line); ++t) {
    REQUIRE(std::sscanf(line.c_str(), "%ld,%lf,%lf", &round, &mean, &stddev) ==
            3);
    CHECK(round == t);
    CHECK(std::abs(mean - res.mean[t - 1]) <=
          1e-8 * std::max(1.0, std::abs(res.mean[t - 1])));
    CHECK(std::abs(stddev - res.stddev[t - 1]) <=
          1e-8 * std::max(1.0, std::abs(res.stddev[t - 1])));
  }

  const json meta = json::parse(read_file(csv_path.string() + ".meta.json"));
  CHECK(meta["seeds"] == json::array({3, 4}));
  CHECK(meta["config"]["algo"] == "exp3");
  CHECK(meta["config"]["horizon"] == 25);
  CHECK(meta["resolved"]["n_actions"] == 2);
  CHECK(meta["resolved"]["eta"] == res.eta);
  CHECK(meta["resolved"]["fallback_rounds"] == 0);

  CHECK_THROWS_AS(
      write_results_csv((dir / "missing_subdir" / "out.csv").string(), cfg,
                        res),
      IoError);
}

TEST_CASE("a repeated run produces byte-identical results") {
  ExperimentConfig cfg = config_from_json_text(R"({
    "algo": "exp2",
    "actions": {"kind": "hypercube", "dim": 3, "max_actions": 7},
    "adversary": {"kind": "stochastic"},
    "horizon": 40, "runs": 3, "seed": 11
  })");
  const std::string first = format_results_csv(cfg, run_replicated(cfg));
  cfg.threads = 3;  // worker count must not leak into the aggregate
  const std::string second = format_results_csv(cfg, run_replicated(cfg));
  CHECK(first == second);
}

TEST_CASE("jester ingestion maps the rating scale exactly") {
  std::stringstream ss("5,-10,0,10\n3,99,5,5\n4,10,-10,0\n");
  const RatingsMatrix m = ingest_jester(ss, 3);
  REQUIRE(m.values.rows() == 2);
  REQUIRE(m.values.cols() == 3);
  CHECK(m.values(0, 0) == 0.0);   // -10 -> 0
  CHECK(m.values(0, 1) == 0.5);   //   0 -> 0.5
  CHECK(m.values(0, 2) == 1.0);   // +10 -> 1
  CHECK(m.values(1, 0) == 1.0);
  CHECK(m.values(1, 1) == 0.0);
  CHECK(m.values(1, 2) == 0.5);
  CHECK(m.source_user_ids == std::vector<int>{0, 2});
  CHECK(m.values.minCoeff() >= 0.0);
  CHECK(m.values.maxCoeff() <= 1.0);
}

TEST_CASE("jester ingestion tolerates blanks and trailing commas") {
  std::stringstream ss("2,-10,0,10,\n\n  \t\n7,0,0,0\n");
  const RatingsMatrix m = ingest_jester(ss, 3);
  REQUIRE(m.values.rows() == 2);
  CHECK(m.source_user_ids == std::vector<int>{0, 1});
  CHECK(m.values(1, 0) == 0.5);
}

TEST_CASE("only the kept columns decide the dense filter") {
  // the 99 sits beyond the first two rated columns and is ignored
  std::stringstream ss("1,5,5,99\n");
  const RatingsMatrix m = ingest_jester(ss, 2);
  REQUIRE(m.values.rows() == 1);
  CHECK(m.values(0, 0) == 0.75);
  CHECK(m.values(0, 1) == 0.75);
}

TEST_CASE("jester ingestion rejects malformed rows with line numbers") {
  auto message_of = [](const std::string& text, Index d) {
    std::stringstream ss(text);
    try {
      ingest_jester(ss, d);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message_of("1,0\n", 2).find("line 1") != std::string::npos);
  CHECK(message_of("1,0,0\n2,oops,0\n", 2).find("line 2") !=
        std::string::npos);
  CHECK(message_of("2,oops,0\n", 2).find("bad value") != std::string::npos);
  CHECK(message_of("1,,0\n", 2).find("empty field") != std::string::npos);
  CHECK(message_of("1,10.5,0\n", 2).find("outside [-10, 10]") !=
        std::string::npos);
  // blank lines still count toward the reported line number
  CHECK(message_of("\n\n1,bad,0\n", 2).find("line 3") != std::string::npos);
}

TEST_CASE("jester ingestion fails when every user is filtered out") {
  std::stringstream ss("1,99,0\n2,0,99\n");
  bool threw = false;
  try {
    ingest_jester(ss, 2);
  } catch (const Error& e) {
    threw = true;
    CHECK(std::string(e.what()).find("no user rated") != std::string::npos);
  }
  CHECK(threw);
  std::stringstream empty("");
  CHECK_THROWS_AS(ingest_jester(empty, 2), Error);
  std::stringstream fine("1,0,0\n");
  CHECK_THROWS_AS(ingest_jester(fine, 0), InvalidArgumentError);
}

TEST_CASE("jester file loading matches stream ingestion") {
  const auto dir = temp_dir();
  const auto path = dir / "jester_small.csv";
  write_file(path, "5,-10,0,10\n3,99,5,5\n4,10,-10,0\n");
  const RatingsMatrix from_file = ingest_jester_file(path.string(), 3);
  std::stringstream ss("5,-10,0,10\n3,99,5,5\n4,10,-10,0\n");
  const RatingsMatrix from_stream = ingest_jester(ss, 3);
  CHECK((from_file.values - from_stream.values).norm() == 0.0);
  CHECK(from_file.source_user_ids == from_stream.source_user_ids);
  CHECK_THROWS_AS(ingest_jester_file((dir / "nope.csv").string(), 3), IoError);
}
