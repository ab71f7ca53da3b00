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
#include <iosfwd>
#include <string>
#include <vector>

#include "extbandit/common.hpp"

namespace extbandit {

// One combinatorial action: the incidence vector of a subset of the d
// coordinates, entries exactly 0 or 1.
class Action {
 public:
  explicit Action(Vector bits);

  const Vector& bits() const { return bits_; }
  Index dim() const { return bits_.size(); }
  double dot(const Vector& v) const;

 private:
  Vector bits_;
};

// Immutable finite action set: N distinct incidence vectors sharing one
// ambient dimension d. The dimensional rank (matrix rank of the stacked
// N x d incidence matrix) is computed once at construction.
class ActionSet {
 public:
  // Rows of `incidence` are the actions.
  explicit ActionSet(Matrix incidence);

  // The d unit vectors e_1..e_d.
  static ActionSet canonical_basis(Index d);

  // First min(2^d - 1, max_n) non-zero binary vectors in binary counting
  // order (k = 1..2^d - 1, entry j of action k is bit j of k). The all-zero
  // vector is never included. d > 62 is rejected to keep the enumeration in
  // 64-bit range.
  static ActionSet hypercube(Index d, std::int64_t max_n);

  // One action per route, where a route is a set of coordinate indices in
  // [0, d). Out-of-range indices and routes that collapse to a duplicate
  // incidence vector are rejected.
  static ActionSet from_routes(const std::vector<std::vector<int>>& routes,
                               Index d);

  Index size() const { return incidence_.rows(); }  // N
  Index dim() const { return incidence_.cols(); }   // d
  int dimensional_rank() const { return rank_; }    // delta

  const Matrix& incidence() const { return incidence_; }
  Action action(Index i) const;

  // a_i . loss
  double action_loss(Index i, const Vector& loss) const;

 private:
  Matrix incidence_;
  int rank_ = 0;
};

// Matrix rank with singular values below rel_tol * sigma_max treated as 0.
int matrix_rank(const Matrix& m, double rel_tol = 1e-10);

// Route list parser: one route per line, comma-separated zero-based
// coordinate indices; blank lines skipped. Throws ParseError carrying the
// 1-based line number on malformed input.
std::vector<std::vector<int>> parse_routes(std::istream& in);
std::vector<std::vector<int>> parse_routes_file(const std::string& path);

}  // namespace extbandit
