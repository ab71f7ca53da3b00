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
#include <vector>

#include "extbandit/actions.hpp"
#include "extbandit/config.hpp"
#include "extbandit/policies.hpp"

namespace extbandit {

// One bandit game: the per-round picks, the scalar feedback the policy saw,
// and the full loss vectors (kept for regret evaluation, never shown to the
// policy).
struct GameRecord {
  std::uint64_t seed = 0;
  std::vector<Index> chosen;    // length T
  Vector scalar_losses;         // length T
  Matrix loss_log;              // T x d
  double cum_scalar_loss = 0.0;
  std::vector<NnmfDiag> nnmf;   // per round; empty unless collected
};

// Plays one game of cfg.horizon rounds with a fresh policy and the
// replica-specific adversary. All randomness derives from `seed`.
GameRecord run_game(const ExperimentConfig& cfg, const ActionSet& actions,
                    std::uint64_t seed, bool collect_diag = false);

// cum_regret[t] = sum_{s<=t} scalar_s - min_a sum_{s<=t} a . l_s, i.e. the
// realized play cost against the best fixed action in hindsight at every
// prefix.
Vector pseudo_regret(const GameRecord& record, const ActionSet& actions);

struct ReplicatedResult {
  Vector mean;     // per-round mean cumulative regret over replicas
  Vector stddev;   // population standard deviation per round
  std::vector<std::uint64_t> seeds;
  double eta = 0.0;     // resolved learning rate
  double alpha = 0.0;   // resolved mixing weight
  Index n_actions = 0;
  Index dim = 0;
  std::vector<NnmfDiag> replica0_nnmf;   // diagnostics from the first seed
  std::int64_t fallback_rounds = 0;      // uniform fallbacks over all replicas
};

// Runs cfg.runs independent replicas seeded cfg.seed .. cfg.seed + runs - 1
// and aggregates their regret curves. cfg.threads == 0 picks the hardware
// concurrency; replica order never affects the aggregate.
ReplicatedResult run_replicated(const ExperimentConfig& cfg);

}  // namespace extbandit
