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

#include "extbandit/common.hpp"

#include <cmath>
#include <string>

#include "extbandit/errors.hpp"

namespace extbandit {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double uniform01(Rng& rng) { return (rng() >> 11) * 0x1.0p-53; }

double uniform01_open(Rng& rng) { return 1.0 - uniform01(rng); }

Index sample_index(const Vector& p, Rng& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  Index last_positive = 0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) last_positive = i;
    acc += p[i];
    if (u < acc) return i;
  }
  // u landed in the rounding gap at the top of the CDF.
  return last_positive;
}

bool on_simplex(const Vector& v, double tol) {
  if (v.size() == 0) return false;
  if ((v.array() < 0.0).any()) return false;
  return std::abs(v.sum() - 1.0) <= tol;
}

void require_simplex(const Vector& v, const char* what, double tol) {
  if (v.size() == 0)
    throw ShapeError(std::string(what) + ": empty probability vector");
  if ((v.array() < 0.0).any())
    throw DomainError(std::string(what) + ": negative probability entry");
  if (std::abs(v.sum() - 1.0) > tol)
    throw DomainError(std::string(what) + ": probabilities sum to " +
                      std::to_string(v.sum()) + ", expected 1");
}

Vector uniform_vector(Index n) {
  return Vector::Constant(n, 1.0 / static_cast<double>(n));
}

Vector softmax(const Vector& scores) {
  const Vector w = ((scores.array() - scores.maxCoeff()).exp()).matrix();
  return w / w.sum();
}

}  // namespace extbandit
