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

#include <vector>

#include "extbandit/actions.hpp"
#include "extbandit/common.hpp"

namespace extbandit {

// |a_play . loss - a_play . a_ref|: how far the reference action sits from
// the hyperplane of actions that would have incurred the observed loss.
double slack_regularity(const Action& a_play, const Vector& loss,
                        const Action& a_ref);

// Raw slack values of every action in the set against one observation.
// Diagnostic companion of slack_regularity; the learning loop works with
// the normalized weight rows instead.
Vector slack_row(const Action& a_play, const Vector& loss,
                 const ActionSet& actions);

// w_i = p_i exp(-eta s_i) / sum_j p_j exp(-eta s_j). The minimum slack is
// subtracted before exponentiation, which leaves the result unchanged
// mathematically and keeps large eta * s products from flushing every
// weight to zero.
Vector exp_weight_update(const Vector& p, const Vector& slacks, double eta);

// Row-growing history of normalized weight vectors, one row per completed
// round. Rows are immutable once appended.
class SlackWeightMatrix {
 public:
  explicit SlackWeightMatrix(Index n_actions);

  // w must be a probability vector of the configured width.
  void append_round(const Vector& w);

  Index rounds() const { return static_cast<Index>(rows_.size()); }
  Index actions() const { return n_; }
  const Vector& row(Index t) const { return rows_.at(static_cast<size_t>(t)); }

  // Last min(rounds, max_rows) rows stacked into a matrix.
  Matrix window(Index max_rows) const;
  Matrix to_matrix() const { return window(rounds()); }

 private:
  Index n_;
  std::vector<Vector> rows_;
};

}  // namespace extbandit
