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
#include <optional>
#include <string>
#include <vector>

#include "extbandit/actions.hpp"
#include "extbandit/common.hpp"

namespace extbandit {

enum class AdversaryKind { kFixed, kStochastic, kDataset };

// Throws DomainError unless every entry of `loss` lies in [0, 1].
void validate_loss_vector(const Vector& loss);

// Loss-vector source for one game. The two oblivious kinds ignore the
// previously played action entirely; the dataset kind reacts to it.
class Adversary {
 public:
  // Same loss vector every round.
  static Adversary fixed(Vector loss);

  // Fresh i.i.d. uniform-[0,1]^d vector each round. The vector for round t
  // depends only on (seed, t), so replaying a round sequence is exact.
  static Adversary stochastic(Index d, std::uint64_t seed);

  // Row ((last_action_index + round) mod U) of a U x d ratings matrix whose
  // entries are already normalized to [0, 1]. Round 1 uses
  // last_action_index = 0 when none is supplied; later rounds require it.
  static Adversary dataset(std::shared_ptr<const Matrix> ratings);

  AdversaryKind kind() const { return kind_; }
  Index dim() const;

  Vector next_loss(std::int64_t round,
                   std::optional<Index> last_action_index) const;

 private:
  Adversary() = default;

  AdversaryKind kind_ = AdversaryKind::kFixed;
  Vector fixed_loss_;
  Index dim_ = 0;
  std::uint64_t seed_ = 0;
  std::shared_ptr<const Matrix> ratings_;
};

// min over actions of the total loss sum_t a . l_t, by exact enumeration.
// Throws InvalidArgumentError on an empty loss log.
double best_fixed_action_value(const ActionSet& actions,
                               const std::vector<Vector>& loss_log);

// One-line comma-separated list of d reals in [0, 1].
Vector parse_loss_line(const std::string& line, Index d);
Vector parse_loss_file(const std::string& path, Index d);

}  // namespace extbandit
