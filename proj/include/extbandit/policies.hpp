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

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "extbandit/actions.hpp"
#include "extbandit/common.hpp"
#include "extbandit/nnmf.hpp"
#include "extbandit/slack.hpp"

namespace extbandit {

enum class PolicyKind {
  kExtendedExp,
  kExtendedExp2,
  kExp2,
  kExp3,
  kExp3P,
  kCombBand,
};

PolicyKind policy_kind_from_string(std::string_view name);
std::string_view to_string(PolicyKind kind);

// Which scalar feeds the slack row in the rank-one-sampling policy: the
// reconstructed a_t . l_tilde (its literal update rule, the default) or the
// directly observed a_t . l_t.
enum class SlackMode { kEstimatedLoss, kObservedLoss };

struct NnmfConfig {
  double tol = 1e-3;
  int r_max = 0;  // 0 -> 2 * d, resolved at policy construction
  int restarts = 3;
  int max_iter = 500;
  int window = 64;  // rows of weight history fed to the factorization
};

struct PolicyOptions {
  std::optional<double> eta;    // unset -> default_eta(N, T)
  std::optional<double> alpha;  // unset -> default_alpha(N, T)
  NnmfConfig nnmf;
  SlackMode slack_mode = SlackMode::kEstimatedLoss;
};

// sqrt(2 ln N / (T N)): the usual horizon-tuned learning rate.
double default_eta(Index n_actions, std::int64_t horizon);
// min(1, sqrt(N ln N / T)): exploration mixing weight.
double default_alpha(Index n_actions, std::int64_t horizon);

// alpha * x + (1 - alpha) * w, both inputs probability vectors.
Vector mix_distribution(const Vector& w, const Vector& x, double alpha);

// Covariance of the incidence vectors under p, with its eigendecomposition
// pseudo-inverse. Eigenvalues <= 1e-10 * lambda_max are treated as zero.
struct CovarianceState {
  Matrix p_matrix;  // d x d, PSD
  Matrix pinv;      // d x d
  int rank = 0;
};
CovarianceState covariance_of(const Vector& p, const ActionSet& actions);

// l_tilde = pinv * a_played * scalar_loss; unbiased on the span of the
// support of p.
Vector estimate_loss(const CovarianceState& cov, const Action& a_played,
                     double scalar_loss);

// Per-round factorization diagnostics exposed by the slack-based policies.
struct NnmfDiag {
  int rank = 0;
  double rel_error = 0.0;
  bool uniform_fallback = false;  // degenerate factorization this round
};

// A bandit policy over a fixed action set. distribution() is the play
// distribution for the coming round; step() consumes the index actually
// played and the observed scalar loss a . l.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string_view name() const = 0;
  virtual void step(Index played, double scalar_loss, Rng& rng) = 0;

  const Vector& distribution() const { return p_; }
  // alpha * min_j x_j of the mixing distribution behind the current p;
  // every entry of p is at least this.
  double mixing_floor() const { return floor_; }

  virtual const Vector* weights() const { return nullptr; }
  virtual std::optional<NnmfDiag> nnmf_diag() const { return std::nullopt; }

 protected:
  void set_mixed(const Vector& w, const Vector& x, double alpha);

  Vector p_;
  double floor_ = 0.0;
};

// Validates policy/action-set combinations (the two classic-basis policies
// reject anything but the canonical basis) and applies parameter defaults.
std::unique_ptr<Policy> make_policy(PolicyKind kind, const ActionSet& actions,
                                    std::int64_t horizon,
                                    const PolicyOptions& options);

}  // namespace extbandit
