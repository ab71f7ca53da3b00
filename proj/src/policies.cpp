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

#include "extbandit/policies.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "extbandit/errors.hpp"

namespace extbandit {

namespace {

bool is_canonical_basis(const ActionSet& actions) {
  if (actions.size() != actions.dim()) return false;
  for (Index i = 0; i < actions.size(); ++i)
    if (actions.incidence().row(i).sum() != 1.0) return false;
  return true;  // N distinct one-hot rows in d = N dimensions
}

void check_played(const ActionSet& actions, Index played, double scalar) {
  if (played < 0 || played >= actions.size())
    throw InvalidArgumentError("step: played index out of range");
  if (!(scalar >= 0.0) ||
      scalar > actions.incidence().row(played).sum() + 1e-9)
    throw DomainError("step: observed scalar loss outside [0, |a|]");
}

}  // namespace

PolicyKind policy_kind_from_string(std::string_view name) {
  if (name == "extexp") return PolicyKind::kExtendedExp;
  if (name == "extexp2") return PolicyKind::kExtendedExp2;
  if (name == "exp2") return PolicyKind::kExp2;
  if (name == "exp3") return PolicyKind::kExp3;
  if (name == "exp3p") return PolicyKind::kExp3P;
  if (name == "combband") return PolicyKind::kCombBand;
  throw InvalidArgumentError("unknown policy '" + std::string(name) + "'");
}

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kExtendedExp: return "extexp";
    case PolicyKind::kExtendedExp2: return "extexp2";
    case PolicyKind::kExp2: return "exp2";
    case PolicyKind::kExp3: return "exp3";
    case PolicyKind::kExp3P: return "exp3p";
    case PolicyKind::kCombBand: return "combband";
  }
  return "?";
}

double default_eta(Index n_actions, std::int64_t horizon) {
  if (n_actions < 1 || horizon < 1)
    throw InvalidArgumentError("default_eta: need N >= 1 and T >= 1");
  const double n = static_cast<double>(n_actions);
  const double t = static_cast<double>(horizon);
  return std::sqrt(2.0 * std::log(n) / (t * n));
}

double default_alpha(Index n_actions, std::int64_t horizon) {
  if (n_actions < 1 || horizon < 1)
    throw InvalidArgumentError("default_alpha: need N >= 1 and T >= 1");
  const double n = static_cast<double>(n_actions);
  const double t = static_cast<double>(horizon);
  return std::min(1.0, std::sqrt(n * std::log(n) / t));
}

Vector mix_distribution(const Vector& w, const Vector& x, double alpha) {
  if (w.size() != x.size())
    throw ShapeError("mix_distribution: length mismatch");
  if (!(alpha >= 0.0) || alpha > 1.0)
    throw InvalidArgumentError("mix_distribution: alpha outside [0, 1]");
  require_simplex(w, "mix_distribution: w");
  require_simplex(x, "mix_distribution: x");
  return alpha * x + (1.0 - alpha) * w;
}

CovarianceState covariance_of(const Vector& p, const ActionSet& actions) {
  if (p.size() != actions.size())
    throw ShapeError("covariance_of: p length differs from action count");
  require_simplex(p, "covariance_of: p");
  const Matrix& a = actions.incidence();
  Matrix cov = a.transpose() * p.asDiagonal() * a;
  cov = 0.5 * (cov + cov.transpose());  // enforce exact symmetry

  Eigen::SelfAdjointEigenSolver<Matrix> es(cov);
  if (es.info() != Eigen::Success)
    throw NumericError("covariance_of: eigendecomposition failed");
  const Vector& evals = es.eigenvalues();
  const Matrix& evecs = es.eigenvectors();
  const double cutoff = 1e-10 * evals.cwiseAbs().maxCoeff();

  Vector inv = Vector::Zero(evals.size());
  int rank = 0;
  for (Index i = 0; i < evals.size(); ++i) {
    if (evals[i] > cutoff) {
      inv[i] = 1.0 / evals[i];
      ++rank;
    }
  }
  CovarianceState state;
  state.p_matrix = std::move(cov);
  state.pinv = evecs * inv.asDiagonal() * evecs.transpose();
  state.rank = rank;
  return state;
}

Vector estimate_loss(const CovarianceState& cov, const Action& a_played,
                     double scalar_loss) {
  if (a_played.dim() != cov.pinv.rows())
    throw ShapeError("estimate_loss: dimension mismatch");
  return cov.pinv * a_played.bits() * scalar_loss;
}

void Policy::set_mixed(const Vector& w, const Vector& x, double alpha) {
  p_ = mix_distribution(w, x, alpha);
  floor_ = alpha * x.minCoeff();
}

namespace {

// ---------------------------------------------------------------------------
// Slack-driven exponential weights with a running non-negative rank estimate
// of the weight history. The weight update multiplies the *mixed* play
// distribution, so exploration mass is folded back into the weights each
// round.
class ExtendedExpPolicy final : public Policy {
 public:
  ExtendedExpPolicy(const ActionSet& actions, double eta, double alpha,
                    const NnmfConfig& nnmf)
      : actions_(actions),
        eta_(eta),
        alpha_(alpha),
        nnmf_(nnmf),
        history_(actions.size()),
        w_(uniform_vector(actions.size())) {
    rank_ = actions_.dimensional_rank();
    set_mixed(w_, uniform_vector(actions_.size()), alpha_);
  }

  std::string_view name() const override { return "extexp"; }

  void step(Index played, double scalar_loss, Rng& rng) override {
    check_played(actions_, played, scalar_loss);
    const Vector a = actions_.incidence().row(played).transpose();
    const Vector slacks =
        ((actions_.incidence() * a).array() - scalar_loss).abs().matrix();
    w_ = exp_weight_update(p_, slacks, eta_);
    history_.append_round(w_);
    const Matrix window = history_.window(nnmf_.window);
    // An m x N non-negative matrix factors exactly at rank min(m, N), so
    // the minimum-rank search never has to look past that.
    const int cap = static_cast<int>(std::min(window.rows(), window.cols()));
    const RankSearchResult found = min_nonneg_rank_search(
        window, nnmf_.tol, std::min(nnmf_.r_max, std::max(cap, 1)),
        nnmf_.restarts, rng(), nnmf_.max_iter);
    rank_ = found.rank;
    diag_ = NnmfDiag{found.rank, found.rel_error, false};
    set_mixed(w_, uniform_vector(actions_.size()), alpha_);
  }

  const Vector* weights() const override { return &w_; }
  std::optional<NnmfDiag> nnmf_diag() const override { return diag_; }
  int rank() const { return rank_; }
  const SlackWeightMatrix& history() const { return history_; }

 private:
  const ActionSet& actions_;
  double eta_;
  double alpha_;
  NnmfConfig nnmf_;
  SlackWeightMatrix history_;
  Vector w_;
  int rank_ = 1;
  std::optional<NnmfDiag> diag_;
};

// ---------------------------------------------------------------------------
// The rank-one-sampling variant: covariance pseudo-inverse loss estimate,
// slack row against the reconstructed scalar, factorization of the recent
// weight history at fixed rank delta, and exploration drawn from a random
// rank-one component.
class ExtendedExp2Policy final : public Policy {
 public:
  ExtendedExp2Policy(const ActionSet& actions, double eta, double alpha,
                     const NnmfConfig& nnmf, SlackMode slack_mode)
      : actions_(actions),
        eta_(eta),
        alpha_(alpha),
        nnmf_(nnmf),
        slack_mode_(slack_mode),
        history_(actions.size()),
        w_(uniform_vector(actions.size())) {
    rank_ = actions_.dimensional_rank();
    set_mixed(w_, uniform_vector(actions_.size()), alpha_);
    cov_ = covariance_of(p_, actions_);
  }

  std::string_view name() const override { return "extexp2"; }

  void step(Index played, double scalar_loss, Rng& rng) override {
    check_played(actions_, played, scalar_loss);
    const Action a = actions_.action(played);
    const Vector l_tilde = estimate_loss(cov_, a, scalar_loss);
    const double target = slack_mode_ == SlackMode::kEstimatedLoss
                              ? a.bits().dot(l_tilde)
                              : scalar_loss;
    const Vector slacks =
        ((actions_.incidence() * a.bits()).array() - target).abs().matrix();
    w_ = exp_weight_update(p_, slacks, eta_);
    history_.append_round(w_);

    const NnmfResult res = factorize(history_.window(nnmf_.window), rank_,
                                     nnmf_.tol, nnmf_.max_iter, rng());
    Vector x;
    bool fallback = false;
    try {
      x = sample_exploration(res, rng).gamma;
    } catch (const NumericError&) {
      x = uniform_vector(actions_.size());
      fallback = true;
      ++fallback_rounds_;
    }
    diag_ = NnmfDiag{rank_, res.rel_error, fallback};
    set_mixed(w_, x, alpha_);
    cov_ = covariance_of(p_, actions_);
  }

  const Vector* weights() const override { return &w_; }
  std::optional<NnmfDiag> nnmf_diag() const override { return diag_; }
  const CovarianceState& covariance() const { return cov_; }
  int rank() const { return rank_; }
  long fallback_rounds() const { return fallback_rounds_; }

 private:
  const ActionSet& actions_;
  double eta_;
  double alpha_;
  NnmfConfig nnmf_;
  SlackMode slack_mode_;
  SlackWeightMatrix history_;
  Vector w_;
  CovarianceState cov_;
  int rank_ = 1;
  long fallback_rounds_ = 0;
  std::optional<NnmfDiag> diag_;
};

// ---------------------------------------------------------------------------
// Exponential weights over the full action set with the pseudo-inverse
// estimator; exploration mixes toward `explore` (uniform for exp2,
// support-size weighted for combband).
class LinearExpPolicy final : public Policy {
 public:
  LinearExpPolicy(std::string_view name, const ActionSet& actions, double eta,
                  double alpha, Vector explore)
      : name_(name),
        actions_(actions),
        eta_(eta),
        alpha_(alpha),
        explore_(std::move(explore)),
        cum_estimate_(Vector::Zero(actions.dim())),
        w_(uniform_vector(actions.size())) {
    set_mixed(w_, explore_, alpha_);
    cov_ = covariance_of(p_, actions_);
  }

  std::string_view name() const override { return name_; }

  void step(Index played, double scalar_loss, Rng&) override {
    check_played(actions_, played, scalar_loss);
    cum_estimate_ += estimate_loss(cov_, actions_.action(played), scalar_loss);
    w_ = softmax(-eta_ * (actions_.incidence() * cum_estimate_));
    set_mixed(w_, explore_, alpha_);
    cov_ = covariance_of(p_, actions_);
  }

  const Vector* weights() const override { return &w_; }

 private:
  std::string_view name_;
  const ActionSet& actions_;
  double eta_;
  double alpha_;
  Vector explore_;
  Vector cum_estimate_;  // accumulated l_tilde, length d
  Vector w_;
  CovarianceState cov_;
};

// ---------------------------------------------------------------------------
// Classic importance-weighted exponential weights on unit-vector arms.
class Exp3Policy final : public Policy {
 public:
  Exp3Policy(const ActionSet& actions, double eta, double alpha)
      : actions_(actions),
        eta_(eta),
        alpha_(alpha),
        cum_losses_(Vector::Zero(actions.size())),
        w_(uniform_vector(actions.size())) {
    set_mixed(w_, uniform_vector(actions_.size()), alpha_);
  }

  std::string_view name() const override { return "exp3"; }

  void step(Index played, double scalar_loss, Rng&) override {
    check_played(actions_, played, scalar_loss);
    cum_losses_[played] += scalar_loss / p_[played];
    w_ = softmax(-eta_ * cum_losses_);
    set_mixed(w_, uniform_vector(actions_.size()), alpha_);
  }

  const Vector* weights() const override { return &w_; }

 private:
  const ActionSet& actions_;
  double eta_;
  double alpha_;
  Vector cum_losses_;  // importance-weighted loss estimates per arm
  Vector w_;
};

// ---------------------------------------------------------------------------
// Exp3 with high-probability gain estimates: every arm receives a
// confidence bonus beta / p_i on top of the importance-weighted gain
// (1 - loss) of the played arm.
class Exp3PPolicy final : public Policy {
 public:
  Exp3PPolicy(const ActionSet& actions, double eta, double alpha,
              std::int64_t horizon)
      : actions_(actions),
        eta_(eta),
        alpha_(alpha),
        cum_gains_(Vector::Zero(actions.size())),
        w_(uniform_vector(actions.size())) {
    const double n = static_cast<double>(actions.size());
    const double t = static_cast<double>(horizon);
    // Confidence level 0.01 for the high-probability regret bound.
    beta_ = std::sqrt(std::log(n / 0.01) / (t * n));
    set_mixed(w_, uniform_vector(actions_.size()), alpha_);
  }

  std::string_view name() const override { return "exp3p"; }

  void step(Index played, double scalar_loss, Rng&) override {
    check_played(actions_, played, scalar_loss);
    const double gain = 1.0 - scalar_loss;
    for (Index i = 0; i < cum_gains_.size(); ++i) {
      const double hit = (i == played) ? gain : 0.0;
      cum_gains_[i] += (hit + beta_) / p_[i];
    }
    w_ = softmax(eta_ * cum_gains_);
    set_mixed(w_, uniform_vector(actions_.size()), alpha_);
  }

  const Vector* weights() const override { return &w_; }
  double beta() const { return beta_; }

 private:
  const ActionSet& actions_;
  double eta_;
  double alpha_;
  double beta_;
  Vector cum_gains_;
  Vector w_;
};

}  // namespace

std::unique_ptr<Policy> make_policy(PolicyKind kind, const ActionSet& actions,
                                    std::int64_t horizon,
                                    const PolicyOptions& options) {
  if (horizon < 1)
    throw InvalidArgumentError("make_policy: horizon must be >= 1");
  const double eta = options.eta.has_value()
                         ? *options.eta
                         : default_eta(actions.size(), horizon);
  const double alpha = options.alpha.has_value()
                           ? *options.alpha
                           : default_alpha(actions.size(), horizon);
  if (!(eta >= 0.0))
    throw InvalidArgumentError("make_policy: eta must be >= 0");
  if (!(alpha >= 0.0) || alpha > 1.0)
    throw InvalidArgumentError("make_policy: alpha outside [0, 1]");

  NnmfConfig nnmf = options.nnmf;
  if (nnmf.r_max <= 0) nnmf.r_max = static_cast<int>(2 * actions.dim());
  if (nnmf.tol <= 0.0 || nnmf.restarts < 1 || nnmf.max_iter < 1 ||
      nnmf.window < 1)
    throw InvalidArgumentError("make_policy: bad factorization settings");

  switch (kind) {
    case PolicyKind::kExtendedExp:
      return std::make_unique<ExtendedExpPolicy>(actions, eta, alpha, nnmf);
    case PolicyKind::kExtendedExp2:
      return std::make_unique<ExtendedExp2Policy>(actions, eta, alpha, nnmf,
                                                  options.slack_mode);
    case PolicyKind::kExp2:
      return std::make_unique<LinearExpPolicy>(
          "exp2", actions, eta, alpha, uniform_vector(actions.size()));
    case PolicyKind::kCombBand: {
      // Exploration induced by the set itself: actions weighted by the
      // number of coordinates they touch.
      Vector mu = actions.incidence().rowwise().sum();
      mu /= mu.sum();
      return std::make_unique<LinearExpPolicy>("combband", actions, eta,
                                               alpha, std::move(mu));
    }
    case PolicyKind::kExp3:
      if (!is_canonical_basis(actions))
        throw InvalidArgumentError(
            "exp3 supports only the canonical basis action set");
      return std::make_unique<Exp3Policy>(actions, eta, alpha);
    case PolicyKind::kExp3P:
      if (!is_canonical_basis(actions))
        throw InvalidArgumentError(
            "exp3p supports only the canonical basis action set");
      return std::make_unique<Exp3PPolicy>(actions, eta, alpha, horizon);
  }
  throw Error("make_policy: unreachable");
}

}  // namespace extbandit
