// Copyright 2026 The multinash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "multinash/generators.h"

#include <cmath>

#include "doctest.h"
#include "multinash/errors.h"
#include "multinash/game.h"
#include "oracles/brute_force.h"

namespace multinash {
namespace {

TEST_CASE("random games are a pure function of the spec") {
  InstanceSpec spec = ParseInstanceSpec("RG(2,2)#seed=0;range=0..1");
  Game a = GenerateRandomGame(spec);
  Game b = GenerateRandomGame(spec);
  for (int i = 0; i < 2; ++i) {
    CHECK(a.payoff_tensor(i) == b.payoff_tensor(i));
  }
}

TEST_CASE("random game shape and range") {
  InstanceSpec spec = ParseInstanceSpec("RG(3,5)#seed=1;range=-100..100");
  Game game = GenerateRandomGame(spec);
  CHECK(game.num_players() == 3);
  CHECK(game.num_profiles() == 125);
  for (int i = 0; i < 3; ++i) {
    REQUIRE(game.payoff_tensor(i).size() == 125);
    for (double v : game.payoff_tensor(i)) {
      CHECK(v >= -100);
      CHECK(v <= 100);
      CHECK(v == std::floor(v));
    }
  }
}

TEST_CASE("random payoffs pass a uniform mean test") {
  // 10^5 entries on {0..9}: mean 4.5, variance 8.25.
  InstanceSpec spec = ParseInstanceSpec("RG(2,100x500)#seed=5;range=0..9");
  Game game = GenerateRandomGame(spec);
  const auto& tensor = game.payoff_tensor(0);
  REQUIRE(tensor.size() == 50000);
  double sum = 0.0;
  for (double v : tensor) sum += v;
  for (double v : game.payoff_tensor(1)) sum += v;
  const double n = 100000.0;
  const double mean = sum / n;
  const double standard_error = std::sqrt(8.25 / n);
  CHECK(std::abs(mean - 4.5) <= 3.0 * standard_error);
}

TEST_CASE("covariance game determinism and range") {
  InstanceSpec spec = ParseInstanceSpec("CG(3,5,-0.2)#seed=3;range=-100..100");
  Game a = GenerateCovarianceGame(spec);
  Game b = GenerateCovarianceGame(spec);
  for (int i = 0; i < 3; ++i) {
    CHECK(a.payoff_tensor(i) == b.payoff_tensor(i));
    for (double v : a.payoff_tensor(i)) {
      CHECK(v >= -100);
      CHECK(v <= 100);
      CHECK(v == std::floor(v));
    }
  }
}

TEST_CASE("covariance rho outside the PSD bound is rejected") {
  InstanceSpec spec = ParseInstanceSpec("CG(3,5,-0.2)#seed=3;range=-100..100");
  spec.rho = -0.6;  // bound for n=3 is -0.5
  CHECK_THROWS_WITH_AS(GenerateCovarianceGame(spec),
                       doctest::Contains("-0.5"), ValidationError);
}

TEST_CASE("pre-rounding samples reproduce the requested correlation") {
  InstanceSpec spec = ParseInstanceSpec("CG(2,2,-0.2)#seed=9;range=-100..100");
  const int draws = 10000;
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (int f = 0; f < draws; ++f) {
    const auto y = CovarianceSample(spec, f);
    sx += y[0];
    sy += y[1];
    sxx += y[0] * y[0];
    syy += y[1] * y[1];
    sxy += y[0] * y[1];
  }
  const double n = draws;
  const double cov = sxy / n - (sx / n) * (sy / n);
  const double vx = sxx / n - (sx / n) * (sx / n);
  const double vy = syy / n - (sy / n) * (sy / n);
  const double corr = cov / std::sqrt(vx * vy);
  CHECK(corr >= -0.25);
  CHECK(corr <= -0.15);
}

TEST_CASE("named games") {
  Game mp = NamedGame("matching_pennies");
  CHECK(mp.payoff_tensor(0) == std::vector<double>{1, -1, -1, 1});
  CHECK(mp.payoff_tensor(1) == std::vector<double>{-1, 1, 1, -1});

  Game rps = NamedGame("rock_paper_scissors");
  for (std::int64_t f = 0; f < 9; ++f) {
    CHECK(rps.payoff_flat(0, f) + rps.payoff_flat(1, f) == 0);  // zero-sum
  }
  MixedProfile uniform = UniformProfile(rps);
  CHECK(IsEpsilonNash(rps, uniform, 1e-12));

  Game majority = NamedGame("three_player_majority");
  const auto eqs = oracle::BruteForcePureEquilibria(majority);
  REQUIRE(eqs.size() == 2);
  CHECK(eqs[0] == PureProfile{0, 0, 0});
  CHECK(eqs[1] == PureProfile{1, 1, 1});

  CHECK_THROWS_AS(NamedGame("prisoners_dilemma"), LookupError);
}

TEST_CASE("instance spec text round trips") {
  for (const std::string text :
       {"RG(3,5)#seed=7;range=-100..100", "CG(5,5,-0.2)#seed=7;range=-100..100",
        "RG(2,3x4)#seed=0;range=-5..5", "NAMED(matching_pennies)"}) {
    const InstanceSpec spec = ParseInstanceSpec(text);
    CHECK(FormatInstanceSpec(spec) == text);
    CHECK(ParseInstanceSpec(FormatInstanceSpec(spec)) == spec);
  }
  // Defaults are filled in and canonicalized.
  CHECK(FormatInstanceSpec(ParseInstanceSpec("RG(3,5)")) ==
        "RG(3,5)#seed=0;range=-100..100");
}

TEST_CASE("instance spec errors") {
  CHECK_THROWS_AS(ParseInstanceSpec("XX(3,5)"), ParseError);
  CHECK_THROWS_AS(ParseInstanceSpec("RG(3,5x5)"), ParseError);
  CHECK_THROWS_AS(ParseInstanceSpec("RG(3,5)#range=5..2"), ValidationError);
  CHECK_THROWS_AS(ParseInstanceSpec("CG(3,5,-0.9)"), ValidationError);
  CHECK_THROWS_AS(ParseInstanceSpec("RG(3,5)#foo=1"), ParseError);
  CHECK_THROWS_AS(ParseInstanceSpec("RG(1,5)"), ValidationError);
}

TEST_CASE("generate dispatches on family") {
  CHECK(Generate(ParseInstanceSpec("NAMED(coordination_2x2)")).num_players() ==
        2);
  CHECK(Generate(ParseInstanceSpec("RG(2,2)")).num_profiles() == 4);
  CHECK(Generate(ParseInstanceSpec("CG(2,2,0.5)")).num_profiles() == 4);
}

}  // namespace
}  // namespace multinash
