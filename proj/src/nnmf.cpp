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

#include "extbandit/nnmf.hpp"

#include <cmath>
#include <limits>

#include "extbandit/errors.hpp"

namespace extbandit {

namespace {

// Denominator floor for the multiplicative updates. Entries above the floor
// use the exact update rule, so the descent property is preserved; the floor
// only stops 0/0 when a factor row or column has died out.
constexpr double kDenomFloor = 1e-12;

// Improvement threshold used inside the rank search. It is fixed (instead
// of derived from the caller's tol) so that the set of factorizations
// examined does not depend on tol; success is then monotone in tol. Kept
// tiny so a run only stops on a genuine plateau: multiplicative updates
// creep near convergence, and a looser threshold abandons factorizable
// matrices well above achievable error.
constexpr double kRankSearchTol = 1e-9;

void check_nonneg(const Matrix& m, const char* what) {
  if ((m.array() < 0.0).any())
    throw DomainError(std::string(what) + ": negative entry in input matrix");
}

// Shared multiplicative-update loop. Stops on an improvement smaller than
// `tol`, on max_iter, or (once rel_error <= stop_below) early; the objective
// is non-increasing, so an early success stop never changes whether a target
// is reachable. stop_below < 0 disables the success stop.
NnmfResult run_updates(const Matrix& m, int rank, double tol, int max_iter,
                       std::uint64_t seed, double stop_below,
                       std::vector<double>* error_trace) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  const double norm = m.norm();

  NnmfResult res;
  res.rank = rank;
  if (norm == 0.0) {
    res.left = Matrix::Zero(rows, rank);
    res.right = Matrix::Zero(rank, cols);
    res.rel_error = 0.0;
    if (error_trace) error_trace->push_back(0.0);
    return res;
  }

  Rng rng(seed);
  auto draw = [&rng]() { return uniform01_open(rng); };
  Matrix w = Matrix::NullaryExpr(rows, rank, draw);
  Matrix h = Matrix::NullaryExpr(rank, cols, draw);

  Matrix num_h(rank, cols), den_h(rank, cols), gram(rank, rank);
  Matrix num_w(rows, rank), den_w(rows, rank), resid(rows, cols);

  resid.noalias() = w * h;
  resid -= m;
  double rel = resid.norm() / norm;
  if (error_trace) error_trace->push_back(rel);
  double prev = rel;

  for (int it = 0; it < max_iter && rel > stop_below; ++it) {
    // h <- h .* (w'm) ./ (w'w h)
    num_h.noalias() = w.transpose() * m;
    gram.noalias() = w.transpose() * w;
    den_h.noalias() = gram * h;
    h.array() *= num_h.array() / den_h.array().max(kDenomFloor);
    // w <- w .* (m h') ./ (w h h')
    num_w.noalias() = m * h.transpose();
    gram.noalias() = h * h.transpose();
    den_w.noalias() = w * gram;
    w.array() *= num_w.array() / den_w.array().max(kDenomFloor);

    resid.noalias() = w * h;
    resid -= m;
    rel = resid.norm() / norm;
    if (error_trace) error_trace->push_back(rel);
    if (prev - rel < tol) break;
    prev = rel;
  }

  res.left = std::move(w);
  res.right = std::move(h);
  res.rel_error = rel;
  return res;
}

}  // namespace

NnmfResult factorize(const Matrix& m, int rank, double tol, int max_iter,
                     std::uint64_t seed, std::vector<double>* error_trace) {
  check_nonneg(m, "factorize");
  if (rank < 1) throw InvalidArgumentError("factorize: rank must be >= 1");
  if (max_iter < 1)
    throw InvalidArgumentError("factorize: max_iter must be >= 1");
  if (!(tol >= 0.0)) throw InvalidArgumentError("factorize: tol must be >= 0");
  return run_updates(m, rank, tol, max_iter, seed, -1.0, error_trace);
}

RankSearchResult min_nonneg_rank_search(const Matrix& m, double tol,
                                        int r_max, int restarts,
                                        std::uint64_t seed, int max_iter) {
  check_nonneg(m, "min_nonneg_rank");
  if (r_max < 1)
    throw InvalidArgumentError("min_nonneg_rank: r_max must be >= 1");
  if (restarts < 1)
    throw InvalidArgumentError("min_nonneg_rank: restarts must be >= 1");
  if (!(tol >= 0.0))
    throw InvalidArgumentError("min_nonneg_rank: tol must be >= 0");

  if (m.norm() == 0.0) return {0, 0.0};

  double best = std::numeric_limits<double>::infinity();
  for (int r = 1; r <= r_max; ++r) {
    best = std::numeric_limits<double>::infinity();
    for (int s = 0; s < restarts; ++s) {
      const std::uint64_t run_seed =
          mix64(seed ^ mix64(static_cast<std::uint64_t>(r) * 0x10001ull +
                             static_cast<std::uint64_t>(s)));
      NnmfResult res =
          run_updates(m, r, kRankSearchTol, max_iter, run_seed, tol, nullptr);
      best = std::min(best, res.rel_error);
      if (best <= tol) break;
    }
    if (best <= tol) return {r, best};
  }
  return {r_max, best};
}

int min_nonneg_rank(const Matrix& m, double tol, int r_max, int restarts,
                    std::uint64_t seed, int max_iter) {
  return min_nonneg_rank_search(m, tol, r_max, restarts, seed, max_iter).rank;
}

std::vector<Matrix> rank_one_components(const NnmfResult& res) {
  if (res.left.cols() != res.rank || res.right.rows() != res.rank)
    throw ShapeError("rank_one_components: factor shapes disagree with rank");
  std::vector<Matrix> parts;
  parts.reserve(static_cast<size_t>(res.rank));
  for (int k = 0; k < res.rank; ++k)
    parts.push_back(res.left.col(k) * res.right.row(k));
  return parts;
}

ExplorationSample sample_exploration(const NnmfResult& res, Rng& rng) {
  if (res.rank < 1 || res.right.rows() != res.rank)
    throw InvalidArgumentError("sample_exploration: malformed factorization");
  std::vector<int> eligible;
  for (int k = 0; k < res.rank; ++k)
    if (res.right.row(k).sum() > 0.0) eligible.push_back(k);
  if (eligible.empty())
    throw NumericError(
        "sample_exploration: degenerate factorization, every component is "
        "zero");
  const size_t pick = std::min(
      static_cast<size_t>(uniform01(rng) * eligible.size()),
      eligible.size() - 1);
  const int k = eligible[pick];

  ExplorationSample sample;
  sample.component_index = k;
  sample.gamma = res.right.row(k).transpose() / res.right.row(k).sum();
  for (Index i = 0; i < sample.gamma.size(); ++i)
    if (sample.gamma[i] > 0.0) sample.support.push_back(i);
  return sample;
}

double exploration_entropy(const ExplorationSample& sample) {
  require_simplex(sample.gamma, "exploration_entropy: gamma");
  double h = 0.0;
  for (Index i = 0; i < sample.gamma.size(); ++i) {
    const double g = sample.gamma[i];
    if (g > 0.0) h -= g * std::log(g);
  }
  return h;
}

}  // namespace extbandit
