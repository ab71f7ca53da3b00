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

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace extbandit {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;
using Rng = std::mt19937_64;

// Tolerance used everywhere a probability vector is validated.
inline constexpr double kSimplexTol = 1e-9;

// splitmix64 finalizer; used to derive independent sub-seeds.
std::uint64_t mix64(std::uint64_t x);

// Uniform double in [0, 1) built from the top 53 bits of the generator so
// the value only depends on the engine output, never on library internals.
double uniform01(Rng& rng);

// Uniform double in (0, 1].
double uniform01_open(Rng& rng);

// Inverse-CDF draw from a discrete distribution given by p (assumed to sum
// to 1 within kSimplexTol).
Index sample_index(const Vector& p, Rng& rng);

bool on_simplex(const Vector& v, double tol = kSimplexTol);

// Throws ShapeError/DomainError naming `what` when v is not a probability
// vector within tol.
void require_simplex(const Vector& v, const char* what,
                     double tol = kSimplexTol);

Vector uniform_vector(Index n);

// Numerically stable softmax of `scores` (shift by max, exponentiate,
// normalize).
Vector softmax(const Vector& scores);

}  // namespace extbandit
