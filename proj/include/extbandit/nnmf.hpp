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

#include "extbandit/common.hpp"

namespace extbandit {

struct NnmfResult {
  Matrix left;       // m x r, non-negative
  Matrix right;      // r x N, non-negative
  int rank = 0;      // r
  double rel_error = 0.0;  // ||M - left*right||_F / ||M||_F (0 for M = 0)
};

// One component of a rank-one decomposition turned into a sampling
// distribution over the N columns.
struct ExplorationSample {
  int component_index = 0;
  Vector gamma;                 // probability vector of length N
  std::vector<Index> support;   // indices with gamma > 0
};

// Multiplicative-update factorization of a non-negative matrix at fixed
// rank. Factors start from seeded uniform-(0,1] entries; iteration stops at
// max_iter or as soon as the relative-error improvement between consecutive
// iterations drops below tol. The Frobenius objective never increases from
// one iteration to the next. An all-zero input yields zero factors and
// rel_error 0. When error_trace is given it receives the relative error of
// the initial factors and of every iteration.
NnmfResult factorize(const Matrix& m, int rank, double tol, int max_iter,
                     std::uint64_t seed,
                     std::vector<double>* error_trace = nullptr);

// Smallest r in 1..r_max whose best factorization over `restarts` seeded
// runs reaches rel_error <= tol; r_max when none does; 0 for a zero matrix.
// The restart runs iterate against a fixed internal improvement threshold
// (not the caller's tol) and may stop early once rel_error <= tol; since
// the objective never increases, loosening tol can only lower the rank.
int min_nonneg_rank(const Matrix& m, double tol, int r_max, int restarts,
                    std::uint64_t seed, int max_iter = 500);

// min_nonneg_rank plus the relative error of the accepted factorization.
struct RankSearchResult {
  int rank = 0;
  double rel_error = 0.0;
};
RankSearchResult min_nonneg_rank_search(const Matrix& m, double tol,
                                        int r_max, int restarts,
                                        std::uint64_t seed,
                                        int max_iter = 500);

// P_k = left.col(k) * right.row(k); the components sum to left*right.
std::vector<Matrix> rank_one_components(const NnmfResult& res);

// Picks a component uniformly among those whose right row has positive
// sum and normalizes that row into a distribution over columns. Throws
// NumericError when every component is empty.
ExplorationSample sample_exploration(const NnmfResult& res, Rng& rng);

// Shannon entropy of gamma in nats; log of the support size bounds it.
double exploration_entropy(const ExplorationSample& sample);

}  // namespace extbandit
