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

#include "extbandit/slack.hpp"

#include <cmath>

#include "extbandit/errors.hpp"

namespace extbandit {

double slack_regularity(const Action& a_play, const Vector& loss,
                        const Action& a_ref) {
  if (loss.size() != a_play.dim() || a_ref.dim() != a_play.dim())
    throw ShapeError("slack_regularity: dimension mismatch");
  return std::abs(a_play.bits().dot(loss) - a_play.bits().dot(a_ref.bits()));
}

Vector slack_row(const Action& a_play, const Vector& loss,
                 const ActionSet& actions) {
  if (loss.size() != actions.dim() || a_play.dim() != actions.dim())
    throw ShapeError("slack_row: dimension mismatch");
  const double observed = a_play.bits().dot(loss);
  const Vector overlaps = actions.incidence() * a_play.bits();
  return ((overlaps.array() - observed).abs()).matrix();
}

Vector exp_weight_update(const Vector& p, const Vector& slacks, double eta) {
  if (p.size() != slacks.size())
    throw ShapeError("exp_weight_update: p and slacks differ in length");
  require_simplex(p, "exp_weight_update: p");
  if (!(eta >= 0.0))
    throw InvalidArgumentError("exp_weight_update: eta must be >= 0");
  if ((slacks.array() < 0.0).any())
    throw DomainError("exp_weight_update: negative slack");
  const double shift = slacks.minCoeff();
  // element-wise std::exp keeps IEEE underflow-to-zero semantics; Eigen's
  // vectorized exp clamps large negative arguments to a nonzero floor
  const Vector w =
      (p.array() * (-eta * (slacks.array() - shift))
                       .unaryExpr([](double x) { return std::exp(x); }))
          .matrix();
  const double z = w.sum();
  if (!(z > 0.0) || !std::isfinite(z))
    throw NumericError("exp_weight_update: all weights underflowed");
  return w / z;
}

SlackWeightMatrix::SlackWeightMatrix(Index n_actions) : n_(n_actions) {
  if (n_ < 1)
    throw InvalidArgumentError("SlackWeightMatrix: need at least one action");
}

void SlackWeightMatrix::append_round(const Vector& w) {
  if (w.size() != n_)
    throw ShapeError("SlackWeightMatrix::append_round: width mismatch");
  require_simplex(w, "SlackWeightMatrix::append_round: w");
  rows_.push_back(w);
}

Matrix SlackWeightMatrix::window(Index max_rows) const {
  if (max_rows < 1)
    throw InvalidArgumentError("SlackWeightMatrix::window: max_rows < 1");
  const Index n_rows = std::min<Index>(rounds(), max_rows);
  Matrix m(n_rows, n_);
  const Index first = rounds() - n_rows;
  for (Index t = 0; t < n_rows; ++t)
    m.row(t) = rows_[static_cast<size_t>(first + t)].transpose();
  return m;
}

}  // namespace extbandit
