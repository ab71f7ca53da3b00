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

#include <fstream>
#include <memory>
#include <string>

#include "doctest.h"

#include "extbandit/actions.hpp"
#include "extbandit/adversary.hpp"
#include "extbandit/common.hpp"
#include "extbandit/errors.hpp"

using namespace extbandit;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

std::shared_ptr<const Matrix> tiny_ratings() {
  auto m = std::make_shared<Matrix>(3, 2);
  *m << 0.1, 0.2, 0.3, 0.4, 0.5, 0.6;
  return m;
}

}  // namespace

TEST_CASE("validate_loss_vector enforces the unit interval") {
  CHECK_NOTHROW(validate_loss_vector(vec2(0.0, 1.0)));
  CHECK_THROWS_AS(validate_loss_vector(vec2(-0.1, 0.5)), DomainError);
  CHECK_THROWS_AS(validate_loss_vector(vec2(0.5, 1.1)), DomainError);
  CHECK_THROWS_AS(validate_loss_vector(Vector()), ShapeError);
}

TEST_CASE("fixed adversary repeats its vector and ignores history") {
  const Adversary adv = Adversary::fixed(vec2(0.3, 0.7));
  CHECK(adv.kind() == AdversaryKind::kFixed);
  CHECK(adv.dim() == 2);
  const Vector a = adv.next_loss(1, std::nullopt);
  const Vector b = adv.next_loss(5, Index{1});
  CHECK((a - vec2(0.3, 0.7)).norm() == 0.0);
  CHECK((a - b).norm() == 0.0);
  CHECK_THROWS_AS(Adversary::fixed(vec2(0.3, 1.7)), DomainError);
}

TEST_CASE("stochastic adversary is a pure function of seed and round") {
  const Adversary adv = Adversary::stochastic(4, 99);
  const Vector r3a = adv.next_loss(3, std::nullopt);
  const Vector r3b = adv.next_loss(3, Index{2});
  // oblivious: the played action changes nothing, bit for bit
  CHECK((r3a - r3b).norm() == 0.0);
  // replay across instances with the same seed
  const Adversary again = Adversary::stochastic(4, 99);
  CHECK((r3a - again.next_loss(3, std::nullopt)).norm() == 0.0);
  // rounds differ, seeds differ
  CHECK((r3a - adv.next_loss(4, std::nullopt)).norm() > 0.0);
  const Adversary other = Adversary::stochastic(4, 100);
  CHECK((r3a - other.next_loss(3, std::nullopt)).norm() > 0.0);
  for (int t = 1; t <= 50; ++t) {
    const Vector l = adv.next_loss(t, std::nullopt);
    CHECK(l.size() == 4);
    CHECK(l.minCoeff() >= 0.0);
    CHECK(l.maxCoeff() <= 1.0);
  }
  CHECK_THROWS_AS(Adversary::stochastic(0, 1), InvalidArgumentError);
  CHECK_THROWS_AS(adv.next_loss(0, std::nullopt), InvalidArgumentError);
}

TEST_CASE("dataset adversary serves the shifted user row") {
  const Adversary adv = Adversary::dataset(tiny_ratings());
  CHECK(adv.kind() == AdversaryKind::kDataset);
  CHECK(adv.dim() == 2);
  // round 1 without history defaults the last action to 0: row (0+1)%3
  CHECK((adv.next_loss(1, std::nullopt) - vec2(0.3, 0.4)).norm() == 0.0);
  // round 1 with an explicit last action: row (2+1)%3
  CHECK((adv.next_loss(1, Index{2}) - vec2(0.1, 0.2)).norm() == 0.0);
  // round 2: row (0+2)%3
  CHECK((adv.next_loss(2, Index{0}) - vec2(0.5, 0.6)).norm() == 0.0);
  // later rounds require the played action
  CHECK_THROWS_AS(adv.next_loss(2, std::nullopt), ProtocolError);
  CHECK_THROWS_AS(adv.next_loss(1, Index{-1}), InvalidArgumentError);
}

TEST_CASE("dataset adversary validates the ratings matrix") {
  CHECK_THROWS_AS(Adversary::dataset(nullptr), InvalidArgumentError);
  auto empty = std::make_shared<Matrix>(0, 2);
  CHECK_THROWS_AS(Adversary::dataset(empty), InvalidArgumentError);
  auto bad = std::make_shared<Matrix>(1, 2);
  *bad << 0.5, 1.5;
  CHECK_THROWS_AS(Adversary::dataset(bad), DomainError);
}

TEST_CASE("best_fixed_action_value by exact enumeration") {
  const ActionSet actions = ActionSet::from_routes({{0}, {1}, {0, 1}}, 2);
  std::vector<Vector> log{vec2(0.9, 0.0), vec2(0.0, 0.9)};
  // totals: e0 -> 0.9, e1 -> 0.9, both -> 1.8
  CHECK(best_fixed_action_value(actions, log) ==
        doctest::Approx(0.9).epsilon(1e-12));
  CHECK_THROWS_AS(best_fixed_action_value(actions, {}),
                  InvalidArgumentError);
  std::vector<Vector> wrong{Vector::Zero(3)};
  CHECK_THROWS_AS(best_fixed_action_value(actions, wrong), ShapeError);
}

TEST_CASE("best_fixed_action_value lower-bounds every fixed action") {
  Rng rng(5);
  const ActionSet actions = ActionSet::hypercube(3, 7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vector> log;
    const int t_max = 1 + static_cast<int>(uniform01(rng) * 6);
    for (int t = 0; t < t_max; ++t) {
      Vector l(3);
      for (Index j = 0; j < 3; ++j) l[j] = uniform01(rng);
      log.push_back(l);
    }
    const double best = best_fixed_action_value(actions, log);
    for (Index i = 0; i < actions.size(); ++i) {
      double total = 0.0;
      for (const Vector& l : log) total += actions.action_loss(i, l);
      CHECK(best <= total + 1e-12);
    }
  }
}

TEST_CASE("parse_loss_line reads one comma-separated vector") {
  const Vector l = parse_loss_line("0.1, 0.25,0.5", 3);
  Vector expected(3);
  expected << 0.1, 0.25, 0.5;
  CHECK((l - expected).norm() == 0.0);
  CHECK_THROWS_AS(parse_loss_line("0.1,0.2", 3), ParseError);
  CHECK_THROWS_AS(parse_loss_line("0.1,oops,0.3", 3), ParseError);
  CHECK_THROWS_AS(parse_loss_line("0.1,0.2,1.5", 3), DomainError);
}

TEST_CASE("parse_loss_file round-trips through a file") {
  const std::string path = "/tmp/extbandit_test_loss.csv";
  {
    std::ofstream out(path);
    out << "0.5,0.25\n";
  }
  const Vector l = parse_loss_file(path, 2);
  CHECK(l[0] == 0.5);
  CHECK(l[1] == 0.25);
  CHECK_THROWS_AS(parse_loss_file("/nonexistent/loss.csv", 2), IoError);
  const std::string empty_path = "/tmp/extbandit_test_loss_empty.csv";
  { std::ofstream out(empty_path); }
  CHECK_THROWS_AS(parse_loss_file(empty_path, 2), ParseError);
}
