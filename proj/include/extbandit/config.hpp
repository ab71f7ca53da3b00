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

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "extbandit/actions.hpp"
#include "extbandit/adversary.hpp"
#include "extbandit/common.hpp"
#include "extbandit/policies.hpp"

namespace extbandit {

struct ActionConfig {
  enum class Kind { kBasis, kHypercube, kPaths };
  Kind kind = Kind::kBasis;
  Index dim = 10;
  std::int64_t max_actions = 1024;  // hypercube enumeration cap
  std::vector<std::vector<int>> routes;

  ActionSet build() const;
};

struct AdversaryConfig {
  AdversaryKind kind = AdversaryKind::kStochastic;
  Vector fixed_loss;              // kFixed with an explicit vector
  bool random_per_replica = false;  // kFixed: draw the vector per replica
  std::shared_ptr<const Matrix> ratings;  // kDataset
  std::string ratings_path;               // kDataset, manifest only
  int ratings_users = 0;                  // kDataset, manifest only

  // Materializes the adversary for a single replica.
  Adversary build(Index d, std::uint64_t replica_seed) const;
};

struct ExperimentConfig {
  PolicyKind algo = PolicyKind::kExtendedExp2;
  ActionConfig actions;
  AdversaryConfig adversary;
  std::int64_t horizon = 1000;
  int runs = 10;
  std::uint64_t seed = 1;
  PolicyOptions policy;
  std::string out = "results.csv";
  int threads = 0;  // replica parallelism; 0 means hardware concurrency
  bool verbose = false;
};

// Parses, expands any preset, loads referenced files, and validates. Throws
// ConfigError (bad fields/combinations), ParseError, or IoError.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig config_from_json_text(const std::string& text);

// Fully-expanded manifest of a validated config: preset resolved, file
// contents inlined where small (loss vector, routes), defaults applied.
nlohmann::json config_to_json(const ExperimentConfig& cfg);

// Named preset -> partial config JSON (the caller's explicit keys win).
nlohmann::json preset_json(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace extbandit
