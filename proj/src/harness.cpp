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

#include "extbandit/harness.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "extbandit/adversary.hpp"
#include "extbandit/errors.hpp"

namespace extbandit {

namespace {
constexpr std::uint64_t kGameSalt = 0x9E3779B97F4A7C15ull;
}

GameRecord run_game(const ExperimentConfig& cfg, const ActionSet& actions,
                    std::uint64_t seed, bool collect_diag) {
  const std::int64_t horizon = cfg.horizon;
  const Index d = actions.dim();

  Adversary adversary = cfg.adversary.build(d, seed);
  std::unique_ptr<Policy> policy =
      make_policy(cfg.algo, actions, horizon, cfg.policy);
  Rng rng(mix64(seed ^ kGameSalt));

  GameRecord record;
  record.seed = seed;
  record.chosen.reserve(static_cast<std::size_t>(horizon));
  record.scalar_losses.resize(horizon);
  record.loss_log.resize(horizon, d);
  if (collect_diag) record.nnmf.reserve(static_cast<std::size_t>(horizon));

  std::optional<Index> last;
  for (std::int64_t t = 1; t <= horizon; ++t) {
    const Index i = sample_index(policy->distribution(), rng);
    const Vector loss = adversary.next_loss(t, last);
    const double scalar = actions.incidence().row(i).dot(loss);

    record.chosen.push_back(i);
    record.scalar_losses[t - 1] = scalar;
    record.loss_log.row(t - 1) = loss.transpose();
    record.cum_scalar_loss += scalar;

    policy->step(i, scalar, rng);
    if (collect_diag) {
      if (auto diag = policy->nnmf_diag()) record.nnmf.push_back(*diag);
    }
    last = i;
  }
  return record;
}

Vector pseudo_regret(const GameRecord& record, const ActionSet& actions) {
  const Index horizon = record.scalar_losses.size();
  if (record.loss_log.rows() != horizon ||
      record.loss_log.cols() != actions.dim())
    throw ShapeError("pseudo_regret: record does not match the action set");

  Vector regret(horizon);
  Vector cum_action(actions.size());
  cum_action.setZero();
  double cum_scalar = 0.0;
  for (Index t = 0; t < horizon; ++t) {
    cum_action.noalias() +=
        actions.incidence() * record.loss_log.row(t).transpose();
    cum_scalar += record.scalar_losses[t];
    regret[t] = cum_scalar - cum_action.minCoeff();
  }
  return regret;
}

ReplicatedResult run_replicated(const ExperimentConfig& cfg) {
  const ActionSet actions = cfg.actions.build();
  const int runs = cfg.runs;
  const std::int64_t horizon = cfg.horizon;

  ReplicatedResult out;
  out.n_actions = actions.size();
  out.dim = actions.dim();
  out.eta = cfg.policy.eta ? *cfg.policy.eta
                           : default_eta(actions.size(), horizon);
  out.alpha = cfg.policy.alpha ? *cfg.policy.alpha
                               : default_alpha(actions.size(), horizon);
  out.seeds.resize(runs);
  for (int r = 0; r < runs; ++r)
    out.seeds[r] = cfg.seed + static_cast<std::uint64_t>(r);

  std::vector<Vector> curves(runs);
  std::vector<std::int64_t> fallbacks(runs, 0);
  std::vector<NnmfDiag> replica0_nnmf;

  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  int workers = cfg.threads > 0 ? cfg.threads : static_cast<int>(hw);
  if (workers > runs) workers = runs;

  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      const int r = next.fetch_add(1);
      if (r >= runs) return;
      try {
        const bool diag = (r == 0);
        GameRecord record = run_game(cfg, actions, out.seeds[r], diag);
        curves[r] = pseudo_regret(record, actions);
        for (const NnmfDiag& nd : record.nnmf)
          if (nd.uniform_fallback) ++fallbacks[r];
        if (diag) replica0_nnmf = std::move(record.nnmf);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  out.mean.resize(horizon);
  out.stddev.resize(horizon);
  out.mean.setZero();
  for (int r = 0; r < runs; ++r) out.mean += curves[r];
  out.mean /= static_cast<double>(runs);
  out.stddev.setZero();
  for (int r = 0; r < runs; ++r)
    out.stddev.array() += (curves[r] - out.mean).array().square();
  out.stddev = (out.stddev / static_cast<double>(runs)).cwiseSqrt();

  for (std::int64_t f : fallbacks) out.fallback_rounds += f;
  out.replica0_nnmf = std::move(replica0_nnmf);
  return out;
}

}  // namespace extbandit
