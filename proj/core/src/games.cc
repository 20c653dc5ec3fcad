// Copyright 2026 The loglin Authors. All rights reserved.
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

#include "loglin/games.h"

#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <utility>

#include "loglin/errors.h"

namespace loglin {

namespace {

void CheckAgent(int agent, int n) {
  if (agent < 0 || agent >= n) {
    throw DimensionError("agent " + std::to_string(agent) +
                         " out of range for " + std::to_string(n) +
                         " players");
  }
}

void CheckFinite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw NumericError(std::string("non-finite ") + what);
  }
}

}  // namespace

PotentialGame::PotentialGame(int num_players, UtilityFn utility,
                             PotentialFn potential, std::string name)
    : n_(num_players),
      utility_(std::move(utility)),
      potential_(std::move(potential)),
      name_(std::move(name)) {
  if (n_ < 1 || n_ > kMaxPlayers) {
    throw DimensionError("invalid player count " + std::to_string(n_));
  }
  if (!utility_ || !potential_) {
    throw ParameterError("potential game needs utility and potential oracles");
  }
}

double PotentialGame::Utility(int agent, const ActionProfile& a) const {
  CheckAgent(agent, n_);
  if (a.size() != n_) throw DimensionError("profile size does not match game");
  const double u = utility_(agent, a);
  CheckFinite(u, "utility");
  return u;
}

double PotentialGame::Potential(const ActionProfile& a) const {
  if (a.size() != n_) throw DimensionError("profile size does not match game");
  const double phi = potential_(a);
  CheckFinite(phi, "potential");
  return phi;
}

HistoryGame::HistoryGame(int num_players, UtilityFn utility, std::string name)
    : n_(num_players), utility_(std::move(utility)), name_(std::move(name)) {
  if (n_ < 1 || n_ > kMaxPlayers) {
    throw DimensionError("invalid player count " + std::to_string(n_));
  }
  if (!utility_) throw ParameterError("history game needs a utility oracle");
}

HistoryGame::HistoryGame(int num_players, SufficientStatistic statistic,
                         std::string name)
    : n_(num_players), statistic_(std::move(statistic)), name_(std::move(name)) {
  if (n_ < 1 || n_ > kMaxPlayers) {
    throw DimensionError("invalid player count " + std::to_string(n_));
  }
  if (!statistic_->advance || !statistic_->utility) {
    throw ParameterError("sufficient statistic needs advance and utility");
  }
}

const SufficientStatistic& HistoryGame::statistic() const {
  if (!statistic_) {
    throw ParameterError("game '" + name_ + "' declares no sufficient statistic");
  }
  return *statistic_;
}

double HistoryGame::StatisticOf(const Path& history) const {
  const SufficientStatistic& stat = statistic();
  double state = stat.initial;
  for (const ActionProfile& profile : history) {
    state = stat.advance(state, profile);
  }
  return state;
}

double HistoryGame::UtilityFromStatistic(double state,
                                         const ActionProfile& current,
                                         int agent, int action) const {
  CheckAgent(agent, n_);
  if (current.size() != n_) {
    throw DimensionError("profile size does not match game");
  }
  const double u = statistic().utility(state, current, agent, action);
  CheckFinite(u, "utility");
  return u;
}

double HistoryGame::Utility(const Path& history, int agent, int action) const {
  if (history.num_players() != n_) {
    throw DimensionError("path size does not match game");
  }
  if (action != 0 && action != 1) {
    throw ParameterError("actions are binary");
  }
  if (statistic_) {
    return UtilityFromStatistic(StatisticOf(history), history.back(), agent,
                                action);
  }
  CheckAgent(agent, n_);
  const double u = utility_(history, agent, action);
  CheckFinite(u, "utility");
  return u;
}

HistoryGame EmbedAsHistoryGame(const PotentialGame& game) {
  SufficientStatistic stat;
  stat.initial = 0.0;
  stat.advance = [](double, const ActionProfile&) { return 0.0; };
  stat.utility = [game](double, const ActionProfile& current, int agent,
                        int action) {
    return game.Utility(agent, action, current);
  };
  return HistoryGame(game.num_players(), std::move(stat),
                     "embedded:" + game.name());
}

PotentialCheck VerifyExactPotential(const PotentialGame& game,
                                    double tolerance, int cap) {
  const int n = game.num_players();
  CheckEnumerable(n, cap, "VerifyExactPotential");
  PotentialCheck result;
  const std::uint64_t count = ProfileCount(n);
  for (std::uint64_t k = 0; k < count; ++k) {
    const ActionProfile a(n, k);
    for (int i = 0; i < n; ++i) {
      if (a[i] == 1) continue;  // each deviation pair visited once
      const ActionProfile b = a.Flipped(i);
      const double du = game.Utility(i, b) - game.Utility(i, a);
      const double dphi = game.Potential(b) - game.Potential(a);
      const double residual = std::abs(du - dphi);
      if (residual > result.max_residual) result.max_residual = residual;
      if (residual > tolerance && !result.witness) {
        result.ok = false;
        result.witness = PotentialWitness{a, b, i, du, dphi};
      }
    }
  }
  return result;
}

PotentialGame GcgGame(const Graph& graph, double q, double bonus) {
  if (!(q > 0.0 && q <= 1.0)) {
    throw ParameterError("q must lie in (0,1], got " + std::to_string(q));
  }
  if (!(bonus >= 0.0) || !std::isfinite(bonus)) {
    throw ParameterError("bonus must be finite and >= 0");
  }
  auto g = std::make_shared<const Graph>(graph);
  const double weight = q + bonus;
  auto utility = [g, weight](int agent, const ActionProfile& a) {
    if (a[agent] == 1) {
      return g->CountNeighborsPlaying(agent, a, 1) * weight;
    }
    return static_cast<double>(g->CountNeighborsPlaying(agent, a, 0));
  };
  auto potential = [g, weight](const ActionProfile& a) {
    double phi = 0.0;
    for (auto [u, v] : g->edges()) {
      if (a[u] == 1 && a[v] == 1) {
        phi += weight;
      } else if (a[u] == 0 && a[v] == 0) {
        phi += 1.0;
      }
    }
    return phi;
  };
  PotentialGame game(graph.num_nodes(), std::move(utility),
                     std::move(potential), "gcg");
  if (graph.num_nodes() <= kDefaultEnumerationCap) {
    const PotentialCheck check = VerifyExactPotential(game);
    if (!check.ok) {
      throw InternalConsistencyError("GCG failed its exact-potential check");
    }
  }
  return game;
}

PotentialGame TableGame(int num_players,
                        std::vector<std::vector<double>> table) {
  CheckEnumerable(num_players, kDefaultEnumerationCap, "TableGame");
  const std::uint64_t count = ProfileCount(num_players);
  if (table.size() != count) {
    throw DimensionError("utility table needs " + std::to_string(count) +
                         " rows, got " + std::to_string(table.size()));
  }
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != num_players) {
      throw DimensionError("each utility row needs one payoff per player");
    }
  }
  // phi(a): add agents' switches to 1 in agent order, starting from 0.
  std::vector<double> phi(count, 0.0);
  for (std::uint64_t k = 0; k < count; ++k) {
    ActionProfile cur = ActionProfile::Zeros(num_players);
    const ActionProfile target(num_players, k);
    double acc = 0.0;
    for (int i = 0; i < num_players; ++i) {
      if (target[i] == 0) continue;
      const ActionProfile next = cur.WithAction(i, 1);
      acc += table[next.bits()][i] - table[cur.bits()][i];
      cur = next;
    }
    phi[k] = acc;
  }
  auto shared = std::make_shared<const std::vector<std::vector<double>>>(
      std::move(table));
  auto potential_table =
      std::make_shared<const std::vector<double>>(std::move(phi));
  return PotentialGame(
      num_players,
      [shared](int agent, const ActionProfile& a) {
        return (*shared)[a.bits()][agent];
      },
      [potential_table](const ActionProfile& a) {
        return (*potential_table)[a.bits()];
      },
      "table");
}

std::vector<ActionProfile> PotentialArgmax(const PotentialGame& game,
                                           double tolerance, int cap) {
  const int n = game.num_players();
  CheckEnumerable(n, cap, "PotentialArgmax");
  const std::uint64_t count = ProfileCount(n);
  std::vector<double> phi(count);
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint64_t k = 0; k < count; ++k) {
    phi[k] = game.Potential(ActionProfile(n, k));
    if (phi[k] > best) best = phi[k];
  }
  std::vector<ActionProfile> out;
  for (std::uint64_t k = 0; k < count; ++k) {
    if (phi[k] >= best - tolerance) out.emplace_back(n, k);
  }
  return out;
}

PotentialGame ShiftPotential(const PotentialGame& game, double offset) {
  return PotentialGame(
      game.num_players(),
      [game](int agent, const ActionProfile& a) {
        return game.Utility(agent, a);
      },
      [game, offset](const ActionProfile& a) {
        return game.Potential(a) + offset;
      },
      game.name());
}

}  // namespace loglin
