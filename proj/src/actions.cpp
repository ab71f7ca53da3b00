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

#include "extbandit/actions.hpp"

#include <Eigen/SVD>
#include <fstream>
#include <set>
#include <sstream>

#include "extbandit/errors.hpp"

namespace extbandit {

namespace {

void check_binary(const Vector& bits, const char* what) {
  for (Index j = 0; j < bits.size(); ++j) {
    if (bits[j] != 0.0 && bits[j] != 1.0)
      throw DomainError(std::string(what) + ": entry " + std::to_string(j) +
                        " is not 0 or 1");
  }
}

std::string bit_key(const Eigen::RowVectorXd& row) {
  std::string key(static_cast<size_t>(row.size()), '0');
  for (Index j = 0; j < row.size(); ++j)
    if (row[j] != 0.0) key[static_cast<size_t>(j)] = '1';
  return key;
}

}  // namespace

Action::Action(Vector bits) : bits_(std::move(bits)) {
  if (bits_.size() == 0) throw InvalidArgumentError("Action: empty vector");
  check_binary(bits_, "Action");
}

double Action::dot(const Vector& v) const {
  if (v.size() != bits_.size())
    throw ShapeError("Action::dot: dimension mismatch");
  return bits_.dot(v);
}

ActionSet::ActionSet(Matrix incidence) : incidence_(std::move(incidence)) {
  if (incidence_.rows() < 1 || incidence_.cols() < 1)
    throw InvalidArgumentError("ActionSet: need at least one action and one "
                               "dimension");
  std::set<std::string> seen;
  for (Index i = 0; i < incidence_.rows(); ++i) {
    for (Index j = 0; j < incidence_.cols(); ++j) {
      const double v = incidence_(i, j);
      if (v != 0.0 && v != 1.0)
        throw DomainError("ActionSet: non-binary entry at action " +
                          std::to_string(i));
    }
    if (!seen.insert(bit_key(incidence_.row(i))).second)
      throw InvalidArgumentError("ActionSet: duplicate action at index " +
                                 std::to_string(i));
  }
  rank_ = matrix_rank(incidence_);
}

ActionSet ActionSet::canonical_basis(Index d) {
  if (d < 1)
    throw InvalidArgumentError("canonical_basis: dimension must be >= 1");
  return ActionSet(Matrix::Identity(d, d));
}

ActionSet ActionSet::hypercube(Index d, std::int64_t max_n) {
  if (d < 1)
    throw InvalidArgumentError("hypercube: dimension must be >= 1");
  if (d > 62)
    throw InvalidArgumentError("hypercube: dimension above 62 overflows the "
                               "corner enumeration");
  if (max_n < 1)
    throw InvalidArgumentError("hypercube: max_n must be >= 1");
  const std::int64_t total = (std::int64_t{1} << d) - 1;
  const std::int64_t n = std::min(total, max_n);
  Matrix m = Matrix::Zero(n, d);
  for (std::int64_t k = 1; k <= n; ++k)
    for (Index j = 0; j < d; ++j)
      if ((k >> j) & 1) m(k - 1, j) = 1.0;
  return ActionSet(std::move(m));
}

ActionSet ActionSet::from_routes(const std::vector<std::vector<int>>& routes,
                                 Index d) {
  if (d < 1)
    throw InvalidArgumentError("from_routes: dimension must be >= 1");
  if (routes.empty())
    throw InvalidArgumentError("from_routes: no routes given");
  Matrix m = Matrix::Zero(static_cast<Index>(routes.size()), d);
  for (size_t i = 0; i < routes.size(); ++i) {
    if (routes[i].empty())
      throw InvalidArgumentError("invalid route " + std::to_string(i) +
                                 ": empty index set");
    for (int e : routes[i]) {
      if (e < 0 || e >= d)
        throw InvalidArgumentError("invalid route " + std::to_string(i) +
                                   ": edge index " + std::to_string(e) +
                                   " outside [0, " + std::to_string(d) + ")");
      m(static_cast<Index>(i), e) = 1.0;
    }
  }
  std::set<std::string> seen;
  for (Index i = 0; i < m.rows(); ++i)
    if (!seen.insert(bit_key(m.row(i))).second)
      throw InvalidArgumentError("duplicate action: route " +
                                 std::to_string(i) +
                                 " repeats an earlier incidence vector");
  return ActionSet(std::move(m));
}

Action ActionSet::action(Index i) const {
  if (i < 0 || i >= size())
    throw InvalidArgumentError("ActionSet::action: index out of range");
  return Action(incidence_.row(i).transpose());
}

double ActionSet::action_loss(Index i, const Vector& loss) const {
  if (i < 0 || i >= size())
    throw InvalidArgumentError("ActionSet::action_loss: index out of range");
  if (loss.size() != dim())
    throw ShapeError("ActionSet::action_loss: loss dimension mismatch");
  return incidence_.row(i).dot(loss.transpose());
}

int matrix_rank(const Matrix& m, double rel_tol) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cutoff = rel_tol * sv[0];
  int rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff) ++rank;
  return rank;
}

std::vector<std::vector<int>> parse_routes(std::istream& in) {
  std::vector<std::vector<int>> routes;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<int> route;
    std::stringstream ss(line);
    std::string token;
    while (std::getline(ss, token, ',')) {
      try {
        size_t pos = 0;
        const int v = std::stoi(token, &pos);
        if (token.find_first_not_of(" \t\r", pos) != std::string::npos)
          throw std::invalid_argument("trailing characters");
        route.push_back(v);
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": bad edge index '" + token + "'");
      }
    }
    if (route.empty())
      throw ParseError("line " + std::to_string(line_no) + ": empty route");
    routes.push_back(std::move(route));
  }
  return routes;
}

std::vector<std::vector<int>> parse_routes_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open routes file: " + path);
  return parse_routes(in);
}

}  // namespace extbandit
