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

#include "multinash/solver_local.h"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "multinash/errors.h"
#include "multinash/rng.h"

namespace multinash {

namespace {

// One sweep over all pure profiles computing every u[i][s]. Faster than the
// per-strategy definition but numerically equivalent within roundoff; the
// certification path in game.cc stays on the definitional order.
struct Evaluation {
  std::vector<std::vector<double>> utilities;
  std::vector<int> best_strategy;
  std::vector<double> exploitability;  // best value - expected payoff
  double merit = 0.0;
  double max_regret = 0.0;
};

void SweepUtilities(const Game& game, const MixedProfile& x,
                    std::vector<std::vector<double>>& u) {
  const int n = game.num_players();
  u.assign(n, {});
  for (int i = 0; i < n; ++i) u[i].assign(game.num_strategies(i), 0.0);

  PureProfile s(n, 0);
  std::vector<double> prefix(n + 1), suffix(n + 1);
  std::int64_t flat = 0;
  while (true) {
    prefix[0] = 1.0;
    for (int j = 0; j < n; ++j) {
      prefix[j + 1] = prefix[j] * x.distributions[j][s[j]];
    }
    suffix[n] = 1.0;
    for (int j = n - 1; j >= 0; --j) {
      suffix[j] = suffix[j + 1] * x.distributions[j][s[j]];
    }
    for (int i = 0; i < n; ++i) {
      const double others = prefix[i] * suffix[i + 1];
      if (others != 0.0) u[i][s[i]] += others * game.payoff_flat(i, flat);
    }
    int pos = n - 1;
    for (; pos >= 0; --pos) {
      if (++s[pos] < game.num_strategies(pos)) break;
      s[pos] = 0;
    }
    if (pos < 0) break;
    ++flat;
  }
}

Evaluation Evaluate(const Game& game, const MixedProfile& x) {
  Evaluation eval;
  SweepUtilities(game, x, eval.utilities);
  const int n = game.num_players();
  eval.best_strategy.resize(n);
  eval.exploitability.resize(n);
  for (int i = 0; i < n; ++i) {
    const auto& u = eval.utilities[i];
    int best = 0;
    for (int s = 1; s < static_cast<int>(u.size()); ++s) {
      if (u[s] > u[best]) best = s;
    }
    eval.best_strategy[i] = best;
    double expected = 0.0;
    for (int s = 0; s < static_cast<int>(u.size()); ++s) {
      expected += x.distributions[i][s] * u[s];
    }
    const double e = u[best] - expected;
    eval.exploitability[i] = e;
    eval.merit += e * e;
    eval.max_regret = std::max(eval.max_regret, e);
  }
  return eval;
}

// D[i][s][k][t] = d u[i][s] / d x[k][t] for k != i.
using UtilityJacobian = std::vector<std::vector<std::vector<std::vector<double>>>>;

void SweepJacobian(const Game& game, const MixedProfile& x,
                   UtilityJacobian& jac) {
  const int n = game.num_players();
  jac.assign(n, {});
  for (int i = 0; i < n; ++i) {
    jac[i].assign(game.num_strategies(i), {});
    for (int s = 0; s < game.num_strategies(i); ++s) {
      jac[i][s].assign(n, {});
      for (int k = 0; k < n; ++k) {
        jac[i][s][k].assign(game.num_strategies(k), 0.0);
      }
    }
  }
  PureProfile s(n, 0);
  std::vector<double> vals(n);
  std::int64_t flat = 0;
  while (true) {
    for (int j = 0; j < n; ++j) vals[j] = x.distributions[j][s[j]];
    for (int i = 0; i < n; ++i) {
      const double payoff = game.payoff_flat(i, flat);
      if (payoff != 0.0) {
        for (int k = 0; k < n; ++k) {
          if (k == i) continue;
          double rest = 1.0;
          for (int j = 0; j < n; ++j) {
            if (j != i && j != k) rest *= vals[j];
          }
          jac[i][s[i]][k][s[k]] += payoff * rest;
        }
      }
    }
    int pos = n - 1;
    for (; pos >= 0; --pos) {
      if (++s[pos] < game.num_strategies(pos)) break;
      s[pos] = 0;
    }
    if (pos < 0) break;
    ++flat;
  }
}

std::vector<std::vector<double>> Gradient(const Game& game,
                                          const MixedProfile& x,
                                          const Evaluation& eval) {
  const int n = game.num_players();
  UtilityJacobian jac;
  SweepJacobian(game, x, jac);
  std::vector<std::vector<double>> grad(n);
  for (int k = 0; k < n; ++k) grad[k].assign(game.num_strategies(k), 0.0);
  for (int i = 0; i < n; ++i) {
    const double two_e = 2.0 * eval.exploitability[i];
    if (two_e == 0.0) continue;
    const int best = eval.best_strategy[i];
    // d e_i / d x[i][t] = -u[i][t]: the best-response value does not depend
    // on the player's own mixture.
    for (int t = 0; t < game.num_strategies(i); ++t) {
      grad[i][t] += two_e * (-eval.utilities[i][t]);
    }
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      for (int t = 0; t < game.num_strategies(k); ++t) {
        double d_expected = 0.0;
        for (int s = 0; s < game.num_strategies(i); ++s) {
          d_expected += x.distributions[i][s] * jac[i][s][k][t];
        }
        grad[k][t] += two_e * (jac[i][best][k][t] - d_expected);
      }
    }
  }
  return grad;
}

MixedProfile ProjectProfile(const Game& game, const MixedProfile& raw) {
  MixedProfile out;
  out.distributions.reserve(game.num_players());
  for (const auto& d : raw.distributions) {
    out.distributions.push_back(ProjectToSimplex(d));
  }
  return out;
}

MixedProfile DirichletStart(const Game& game, std::uint64_t seed, int start) {
  MixedProfile p;
  p.distributions.resize(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    auto& d = p.distributions[i];
    d.resize(game.num_strategies(i));
    double sum = 0.0;
    for (int s = 0; s < game.num_strategies(i); ++s) {
      const std::uint64_t stream =
          (static_cast<std::uint64_t>(start) << 8) | static_cast<unsigned>(i);
      d[s] = -std::log(CounterUniformUnit(seed, stream, s));
      sum += d[s];
    }
    for (double& v : d) v /= sum;
  }
  return p;
}

}  // namespace

void LocalConfig::Validate() const {
  if (max_starts <= 0 || max_iters <= 0 || eps_regret <= 0.0 ||
      fixed_step <= 0.0 || time_limit_s <= 0.0) {
    throw ValidationError("local solver config fields must be positive");
  }
}

LocalConfig ParseLocalConfig(const std::string& text) {
  LocalConfig config;
  for (const auto& [key, value] : ParseKeyValueConfig(text)) {
    if (key == "max_starts") config.max_starts = std::stoi(value);
    else if (key == "max_iters") config.max_iters = std::stoi(value);
    else if (key == "eps_regret") config.eps_regret = std::stod(value);
    else if (key == "seed") config.seed = std::stoull(value);
    else if (key == "fixed_step") config.fixed_step = std::stod(value);
    else if (key == "time_limit") config.time_limit_s = std::stod(value);
    else if (key == "step_rule") {
      if (value == "fixed") config.step_rule = LocalConfig::StepRule::kFixed;
      else if (value == "backtracking")
        config.step_rule = LocalConfig::StepRule::kBacktracking;
      else throw ParseError("unknown step_rule '" + value + "'");
    } else {
      throw ParseError("unknown local solver key '" + key + "'");
    }
  }
  config.Validate();
  return config;
}

double Merit(const Game& game, const MixedProfile& profile) {
  ValidateProfile(game, profile);
  return Evaluate(game, profile).merit;
}

std::vector<std::vector<double>> MeritGradient(const Game& game,
                                               const MixedProfile& profile) {
  ValidateProfile(game, profile);
  return Gradient(game, profile, Evaluate(game, profile));
}

std::vector<double> ProjectToSimplex(std::span<const double> v) {
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (int j = 0; j < static_cast<int>(sorted.size()); ++j) {
    cumulative += sorted[j];
    const double candidate = (cumulative - 1.0) / (j + 1);
    if (sorted[j] - candidate > 0.0) tau = candidate;
  }
  std::vector<double> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    out[j] = std::max(v[j] - tau, 0.0);
  }
  return out;
}

DescendResult Descend(const Game& game, const MixedProfile& start,
                      const LocalConfig& config) {
  config.Validate();
  const auto deadline =
      std::chrono::steady_clock::now() +
      std::chrono::duration<double>(config.time_limit_s);
  MixedProfile x = ProjectProfile(game, start);
  Evaluation eval = Evaluate(game, x);

  DescendResult best;
  best.profile = x;
  best.max_regret = eval.max_regret;
  best.merit = eval.merit;

  double trial = 1.0;
  long iterations = 0;
  while (iterations < config.max_iters && eval.max_regret > config.eps_regret) {
    if (std::isfinite(config.time_limit_s) &&
        std::chrono::steady_clock::now() > deadline) {
      break;
    }
    ++iterations;
    const auto grad = Gradient(game, x, eval);
    double grad_norm2 = 0.0;
    for (const auto& g : grad) {
      for (double v : g) grad_norm2 += v * v;
    }
    if (grad_norm2 < 1e-30) break;  // stationary; a restart must take over

    MixedProfile candidate;
    Evaluation cand_eval;
    bool accepted = false;
    if (config.step_rule == LocalConfig::StepRule::kFixed) {
      candidate = x;
      for (int i = 0; i < game.num_players(); ++i) {
        for (int s = 0; s < game.num_strategies(i); ++s) {
          candidate.distributions[i][s] -= config.fixed_step * grad[i][s];
        }
      }
      candidate = ProjectProfile(game, candidate);
      cand_eval = Evaluate(game, candidate);
      accepted = true;
    } else {
      double t = trial;
      while (t >= 1e-14) {
        candidate = x;
        for (int i = 0; i < game.num_players(); ++i) {
          for (int s = 0; s < game.num_strategies(i); ++s) {
            candidate.distributions[i][s] -= t * grad[i][s];
          }
        }
        candidate = ProjectProfile(game, candidate);
        double move2 = 0.0;
        for (int i = 0; i < game.num_players(); ++i) {
          for (int s = 0; s < game.num_strategies(i); ++s) {
            const double d =
                candidate.distributions[i][s] - x.distributions[i][s];
            move2 += d * d;
          }
        }
        cand_eval = Evaluate(game, candidate);
        if (cand_eval.merit <= eval.merit - 1e-4 * move2 / std::max(t, 1e-30)) {
          accepted = true;
          trial = std::min(t * 2.0, 1e3);
          break;
        }
        t *= 0.5;
      }
      if (!accepted) break;  // line search exhausted at a kink
    }
    x = std::move(candidate);
    eval = std::move(cand_eval);
    if (eval.max_regret < best.max_regret) {
      best.profile = x;
      best.max_regret = eval.max_regret;
      best.merit = eval.merit;
    }
  }
  best.iterations = iterations;
  return best;
}

SolveReport Multistart(const Game& game, const LocalConfig& config) {
  config.Validate();
  const auto t0 = std::chrono::steady_clock::now();
  SolveReport report;
  report.status = SolveStatus::kInfeasible;

  // Start schedule: uniform, then Dirichlet(1) samples for half the
  // remaining budget, then pure-profile vertices in lexicographic order
  // (falling back to more Dirichlet samples once vertices run out).
  const long long vertex_total = game.num_profiles();
  int dirichlet_budget = (config.max_starts - 1 + 1) / 2;
  int vertex_budget = config.max_starts - 1 - dirichlet_budget;
  if (vertex_budget > vertex_total) {
    dirichlet_budget += vertex_budget - static_cast<int>(vertex_total);
    vertex_budget = static_cast<int>(vertex_total);
  }

  PureProfile vertex(game.num_players(), 0);
  int dirichlet_used = 0;
  int vertices_used = 0;
  const auto deadline =
      t0 + std::chrono::duration<double>(config.time_limit_s);
  bool timed_out = false;
  for (int start = 0; start < config.max_starts; ++start) {
    if (std::isfinite(config.time_limit_s) &&
        std::chrono::steady_clock::now() > deadline) {
      timed_out = true;
      break;
    }
    MixedProfile initial;
    if (start == 0) {
      initial = UniformProfile(game);
    } else if (dirichlet_used < dirichlet_budget) {
      initial = DirichletStart(game, config.seed, ++dirichlet_used);
    } else if (vertices_used < vertex_budget) {
      initial = PureToMixed(game, vertex);
      ++vertices_used;
      for (int pos = game.num_players() - 1; pos >= 0; --pos) {
        if (++vertex[pos] < game.num_strategies(pos)) break;
        vertex[pos] = 0;
      }
    } else {
      initial = DirichletStart(game, config.seed, ++dirichlet_used);
    }

    LocalConfig per_start = config;
    if (std::isfinite(config.time_limit_s)) {
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      per_start.time_limit_s =
          std::max(config.time_limit_s - elapsed, 1e-3);
    }
    DescendResult result = Descend(game, initial, per_start);
    ++report.nodes_explored;
    report.lp_iterations += result.iterations;
    if (result.max_regret < report.max_regret) {
      report.max_regret = result.max_regret;
      report.profile = result.profile;
      report.objective = result.merit;
    }
    if (report.max_regret <= config.eps_regret) break;
  }

  if (report.profile.has_value() &&
      IsEpsilonNash(game, *report.profile, config.eps_regret)) {
    report.status = SolveStatus::kEquilibriumFound;
  } else if (timed_out) {
    report.status = SolveStatus::kTimeLimit;
  }
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

}  // namespace multinash
