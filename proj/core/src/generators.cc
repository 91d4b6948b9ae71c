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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "multinash/errors.h"
#include "multinash/rng.h"

namespace multinash {

namespace {

std::string FormatDouble(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::int64_t NumProfiles(const std::vector<int>& counts) {
  std::int64_t p = 1;
  for (int c : counts) p *= c;
  return p;
}

// Minimal recursive-descent helpers over the spec string.
struct Cursor {
  const std::string& text;
  std::size_t pos = 0;

  bool Eat(char c) {
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void Expect(char c) {
    if (!Eat(c)) {
      throw ParseError("instance spec '" + text + "': expected '" +
                       std::string(1, c) + "' at position " +
                       std::to_string(pos));
    }
  }
  std::int64_t Integer() {
    std::int64_t value = 0;
    auto [next, ec] =
        std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc()) {
      throw ParseError("instance spec '" + text + "': expected integer at " +
                       std::to_string(pos));
    }
    pos = next - text.data();
    return value;
  }
  double Real() {
    double value = 0;
    auto [next, ec] =
        std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc()) {
      throw ParseError("instance spec '" + text + "': expected number at " +
                       std::to_string(pos));
    }
    pos = next - text.data();
    return value;
  }
};

std::vector<int> ParseCounts(Cursor& c, int num_players) {
  std::vector<int> counts;
  counts.push_back(static_cast<int>(c.Integer()));
  while (c.Eat('x')) counts.push_back(static_cast<int>(c.Integer()));
  if (static_cast<int>(counts.size()) == 1) {
    counts.assign(num_players, counts[0]);
  }
  if (static_cast<int>(counts.size()) != num_players) {
    throw ParseError("instance spec '" + c.text +
                     "': strategy counts do not match player count");
  }
  return counts;
}

void ParseSuffix(Cursor& c, InstanceSpec& spec) {
  if (!c.Eat('#')) {
    if (c.pos != c.text.size()) {
      throw ParseError("instance spec '" + c.text + "': trailing characters");
    }
    return;
  }
  while (true) {
    std::size_t eq = c.text.find('=', c.pos);
    if (eq == std::string::npos) {
      throw ParseError("instance spec '" + c.text + "': expected key=value");
    }
    const std::string key = c.text.substr(c.pos, eq - c.pos);
    c.pos = eq + 1;
    if (key == "seed") {
      std::uint64_t seed = 0;
      auto [next, ec] = std::from_chars(c.text.data() + c.pos,
                                        c.text.data() + c.text.size(), seed);
      if (ec != std::errc()) {
        throw ParseError("instance spec '" + c.text + "': bad seed");
      }
      c.pos = next - c.text.data();
      spec.seed = seed;
    } else if (key == "range") {
      spec.payoff_low = c.Integer();
      c.Expect('.');
      c.Expect('.');
      spec.payoff_high = c.Integer();
    } else {
      throw ParseError("instance spec '" + c.text + "': unknown key '" + key +
                       "'");
    }
    if (!c.Eat(';')) break;
  }
  if (c.pos != c.text.size()) {
    throw ParseError("instance spec '" + c.text + "': trailing characters");
  }
}

}  // namespace

void ValidateInstanceSpec(const InstanceSpec& spec) {
  if (spec.family == GameFamily::kNamed) {
    if (spec.named_id.empty()) {
      throw ValidationError("named instance needs named_id");
    }
    return;
  }
  if (spec.num_players < 2) {
    throw ValidationError("instance needs at least 2 players");
  }
  if (static_cast<int>(spec.strategy_counts.size()) != spec.num_players) {
    throw ValidationError("strategy_counts length must equal num_players");
  }
  for (int c : spec.strategy_counts) {
    if (c < 1) throw ValidationError("strategy counts must be positive");
  }
  if (spec.payoff_low >= spec.payoff_high) {
    throw ValidationError("payoff range must satisfy low < high");
  }
  if (spec.family == GameFamily::kCovariance) {
    const double bound = -1.0 / (spec.num_players - 1);
    if (spec.rho < bound || spec.rho > 1.0) {
      throw ValidationError(
          "covariance rho=" + FormatDouble(spec.rho) +
          " outside the positive-semidefiniteness bound [" +
          FormatDouble(bound) + ", 1]");
    }
  }
}

InstanceSpec ParseInstanceSpec(const std::string& text) {
  Cursor c{text};
  InstanceSpec spec;
  if (text.rfind("RG(", 0) == 0) {
    c.pos = 3;
    spec.family = GameFamily::kRandom;
    spec.num_players = static_cast<int>(c.Integer());
    c.Expect(',');
    spec.strategy_counts = ParseCounts(c, spec.num_players);
    c.Expect(')');
    ParseSuffix(c, spec);
  } else if (text.rfind("CG(", 0) == 0) {
    c.pos = 3;
    spec.family = GameFamily::kCovariance;
    spec.num_players = static_cast<int>(c.Integer());
    c.Expect(',');
    spec.strategy_counts = ParseCounts(c, spec.num_players);
    c.Expect(',');
    spec.rho = c.Real();
    c.Expect(')');
    ParseSuffix(c, spec);
  } else if (text.rfind("NAMED(", 0) == 0) {
    c.pos = 6;
    std::size_t close = text.find(')', c.pos);
    if (close == std::string::npos) {
      throw ParseError("instance spec '" + text + "': missing ')'");
    }
    spec.family = GameFamily::kNamed;
    spec.named_id = text.substr(c.pos, close - c.pos);
    c.pos = close + 1;
    if (c.pos != text.size()) {
      throw ParseError("instance spec '" + text + "': trailing characters");
    }
  } else {
    throw ParseError("instance spec '" + text +
                     "': expected RG(, CG( or NAMED(");
  }
  ValidateInstanceSpec(spec);
  return spec;
}

std::string FormatInstanceSpec(const InstanceSpec& spec) {
  std::ostringstream out;
  if (spec.family == GameFamily::kNamed) {
    out << "NAMED(" << spec.named_id << ")";
    return out.str();
  }
  out << (spec.family == GameFamily::kRandom ? "RG(" : "CG(");
  out << spec.num_players << ",";
  const bool uniform = std::all_of(
      spec.strategy_counts.begin(), spec.strategy_counts.end(),
      [&](int c) { return c == spec.strategy_counts.front(); });
  if (uniform) {
    out << spec.strategy_counts.front();
  } else {
    for (std::size_t i = 0; i < spec.strategy_counts.size(); ++i) {
      if (i) out << "x";
      out << spec.strategy_counts[i];
    }
  }
  if (spec.family == GameFamily::kCovariance) {
    out << "," << FormatDouble(spec.rho);
  }
  out << ")#seed=" << spec.seed << ";range=" << spec.payoff_low << ".."
      << spec.payoff_high;
  return out.str();
}

Game GenerateRandomGame(const InstanceSpec& spec) {
  if (spec.family != GameFamily::kRandom) {
    throw ValidationError("GenerateRandomGame needs family=Random");
  }
  ValidateInstanceSpec(spec);
  const std::int64_t profiles = NumProfiles(spec.strategy_counts);
  std::vector<std::vector<double>> payoffs(spec.num_players);
  for (int i = 0; i < spec.num_players; ++i) {
    payoffs[i].resize(profiles);
    for (std::int64_t f = 0; f < profiles; ++f) {
      payoffs[i][f] = static_cast<double>(
          CounterUniformInt(spec.seed, static_cast<std::uint64_t>(i),
                            static_cast<std::uint64_t>(f), spec.payoff_low,
                            spec.payoff_high));
    }
  }
  return Game(spec.strategy_counts, std::move(payoffs),
              FormatInstanceSpec(spec));
}

std::vector<double> CovarianceSample(const InstanceSpec& spec,
                                     std::int64_t profile_index) {
  const int n = spec.num_players;
  // Independent standard normals via Box-Muller on counter-based uniforms.
  std::vector<double> z(n);
  double zsum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u1 = CounterUniformUnit(spec.seed, 2 * i + 1,
                                         static_cast<std::uint64_t>(profile_index));
    const double u2 = CounterUniformUnit(spec.seed, 2 * i + 2,
                                         static_cast<std::uint64_t>(profile_index));
    z[i] = std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
    zsum += z[i];
  }
  // Equicorrelation matrix C = (1-rho) I + rho 11^T has the closed-form
  // square root a I + b 11^T; applying it keeps the construction symmetric
  // in the players.
  const double a = std::sqrt(1.0 - spec.rho);
  const double q = 1.0 + (n - 1) * spec.rho;
  const double b = (std::sqrt(q) - a) / n;
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) y[i] = a * z[i] + b * zsum;
  return y;
}

Game GenerateCovarianceGame(const InstanceSpec& spec) {
  if (spec.family != GameFamily::kCovariance) {
    throw ValidationError("GenerateCovarianceGame needs family=Covariance");
  }
  ValidateInstanceSpec(spec);
  const std::int64_t profiles = NumProfiles(spec.strategy_counts);
  const double mid = 0.5 * (spec.payoff_low + spec.payoff_high);
  const double scale = (spec.payoff_high - spec.payoff_low) / 6.0;
  std::vector<std::vector<double>> payoffs(
      spec.num_players, std::vector<double>(profiles));
  for (std::int64_t f = 0; f < profiles; ++f) {
    const std::vector<double> y = CovarianceSample(spec, f);
    for (int i = 0; i < spec.num_players; ++i) {
      double v = std::round(mid + scale * y[i]);
      v = std::clamp(v, static_cast<double>(spec.payoff_low),
                     static_cast<double>(spec.payoff_high));
      payoffs[i][f] = v;
    }
  }
  return Game(spec.strategy_counts, std::move(payoffs),
              FormatInstanceSpec(spec));
}

Game NamedGame(const std::string& id) {
  if (id == "matching_pennies") {
    return Game({2, 2}, {{1, -1, -1, 1}, {-1, 1, 1, -1}}, "matching_pennies");
  }
  if (id == "rock_paper_scissors") {
    return Game({3, 3},
                {{0, -1, 1, 1, 0, -1, -1, 1, 0},
                 {0, 1, -1, -1, 0, 1, 1, -1, 0}},
                "rock_paper_scissors");
  }
  if (id == "coordination_2x2") {
    return Game({2, 2}, {{1, 0, 0, 1}, {1, 0, 0, 1}}, "coordination_2x2");
  }
  if (id == "three_player_majority") {
    std::vector<std::vector<double>> payoffs(3, std::vector<double>(8));
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        for (int c = 0; c < 2; ++c) {
          const int flat = a * 4 + b * 2 + c;
          const int majority = (a + b + c >= 2) ? 1 : 0;
          payoffs[0][flat] = (a == majority) ? 1 : 0;
          payoffs[1][flat] = (b == majority) ? 1 : 0;
          payoffs[2][flat] = (c == majority) ? 1 : 0;
        }
      }
    }
    return Game({2, 2, 2}, std::move(payoffs), "three_player_majority");
  }
  throw LookupError("unknown named game '" + id + "'");
}

std::vector<std::string> NamedGameIds() {
  return {"matching_pennies", "rock_paper_scissors", "coordination_2x2",
          "three_player_majority"};
}

Game Generate(const InstanceSpec& spec) {
  switch (spec.family) {
    case GameFamily::kRandom:
      return GenerateRandomGame(spec);
    case GameFamily::kCovariance:
      return GenerateCovarianceGame(spec);
    case GameFamily::kNamed:
      return NamedGame(spec.named_id);
  }
  throw ValidationError("unknown instance family");
}

}  // namespace multinash
