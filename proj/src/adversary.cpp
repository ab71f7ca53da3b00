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

#include "extbandit/adversary.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "extbandit/errors.hpp"

namespace extbandit {

void validate_loss_vector(const Vector& loss) {
  if (loss.size() == 0) throw ShapeError("loss vector is empty");
  if ((loss.array() < 0.0).any() || (loss.array() > 1.0).any())
    throw DomainError("loss vector entry outside [0, 1]");
}

Adversary Adversary::fixed(Vector loss) {
  validate_loss_vector(loss);
  Adversary a;
  a.kind_ = AdversaryKind::kFixed;
  a.dim_ = loss.size();
  a.fixed_loss_ = std::move(loss);
  return a;
}

Adversary Adversary::stochastic(Index d, std::uint64_t seed) {
  if (d < 1)
    throw InvalidArgumentError("stochastic adversary: dimension must be >= 1");
  Adversary a;
  a.kind_ = AdversaryKind::kStochastic;
  a.dim_ = d;
  a.seed_ = seed;
  return a;
}

Adversary Adversary::dataset(std::shared_ptr<const Matrix> ratings) {
  if (!ratings || ratings->rows() < 1 || ratings->cols() < 1)
    throw InvalidArgumentError("dataset adversary: empty ratings matrix");
  if ((ratings->array() < 0.0).any() || (ratings->array() > 1.0).any())
    throw DomainError("dataset adversary: ratings entry outside [0, 1]");
  Adversary a;
  a.kind_ = AdversaryKind::kDataset;
  a.dim_ = ratings->cols();
  a.ratings_ = std::move(ratings);
  return a;
}

Index Adversary::dim() const { return dim_; }

Vector Adversary::next_loss(std::int64_t round,
                            std::optional<Index> last_action_index) const {
  if (round < 1) throw InvalidArgumentError("next_loss: rounds start at 1");
  switch (kind_) {
    case AdversaryKind::kFixed:
      return fixed_loss_;
    case AdversaryKind::kStochastic: {
      // Stateless per-round stream: reseed from (seed, round) so the values
      // depend on nothing else, in particular not on the played actions.
      Rng rng(mix64(seed_ ^ mix64(static_cast<std::uint64_t>(round))));
      Vector l(dim_);
      for (Index j = 0; j < dim_; ++j) l[j] = uniform01(rng);
      return l;
    }
    case AdversaryKind::kDataset: {
      Index last = 0;
      if (last_action_index.has_value()) {
        last = *last_action_index;
        if (last < 0)
          throw InvalidArgumentError("next_loss: negative action index");
      } else if (round > 1) {
        throw ProtocolError(
            "next_loss: dataset adversary needs the previously played "
            "action index after round 1");
      }
      const Index users = ratings_->rows();
      const Index row = static_cast<Index>(
          (last + static_cast<Index>(round)) % users);
      return ratings_->row(row).transpose();
    }
  }
  throw Error("next_loss: unreachable");
}

double best_fixed_action_value(const ActionSet& actions,
                               const std::vector<Vector>& loss_log) {
  if (loss_log.empty())
    throw InvalidArgumentError(
        "best_fixed_action_value: empty loss log (horizon must be >= 1)");
  Vector total = Vector::Zero(actions.dim());
  for (const Vector& l : loss_log) {
    if (l.size() != actions.dim())
      throw ShapeError("best_fixed_action_value: loss dimension mismatch");
    total += l;
  }
  double best = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < actions.size(); ++i)
    best = std::min(best, actions.incidence().row(i).dot(total.transpose()));
  return best;
}

Vector parse_loss_line(const std::string& line, Index d) {
  std::vector<double> values;
  std::stringstream ss(line);
  std::string token;
  int col = 0;
  while (std::getline(ss, token, ',')) {
    ++col;
    try {
      size_t pos = 0;
      const double v = std::stod(token, &pos);
      if (token.find_first_not_of(" \t\r", pos) != std::string::npos)
        throw std::invalid_argument("trailing characters");
      values.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("loss entry " + std::to_string(col) +
                       ": bad number '" + token + "'");
    }
  }
  if (static_cast<Index>(values.size()) != d)
    throw ParseError("loss line has " + std::to_string(values.size()) +
                     " entries, expected " + std::to_string(d));
  Vector loss = Eigen::Map<Vector>(values.data(),
                                   static_cast<Index>(values.size()));
  validate_loss_vector(loss);
  return loss;
}

Vector parse_loss_file(const std::string& path, Index d) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open loss file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("loss file is empty: " + path);
  return parse_loss_line(line, d);
}

}  // namespace extbandit
