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

#ifndef LOGLIN_GAMES_H_
#define LOGLIN_GAMES_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "loglin/graph.h"
#include "loglin/profile.h"

namespace loglin {

// Absolute tolerance for utility comparisons.
inline constexpr double kUtilityTolerance = 1e-12;

// A static game with an exact potential. Oracles must be pure functions.
class PotentialGame {
 public:
  // U_i(a): payoff of `agent` at the full profile a.
  using UtilityFn = std::function<double(int agent, const ActionProfile&)>;
  using PotentialFn = std::function<double(const ActionProfile&)>;

  PotentialGame(int num_players, UtilityFn utility, PotentialFn potential,
                std::string name = "potential");

  int num_players() const { return n_; }
  const std::string& name() const { return name_; }

  double Utility(int agent, const ActionProfile& a) const;
  // U_i(action, a_{-i}).
  double Utility(int agent, int action, const ActionProfile& a) const {
    return Utility(agent, a.WithAction(agent, action));
  }
  double Potential(const ActionProfile& a) const;

 private:
  int n_;
  UtilityFn utility_;
  PotentialFn potential_;
  std::string name_;
};

// Compact, incrementally computable summary of a history. Utilities of a
// game declaring one depend on the path only through the statistic and the
// last profile.
struct SufficientStatistic {
  // Value for the empty history.
  double initial = 0.0;
  // Statistic of alpha^{<=t+1} from that of alpha^{<=t} and alpha^{t+1}.
  std::function<double(double state, const ActionProfile& profile)> advance;
  // U_i^alpha(action, alpha^T_{-i}) given the statistic of alpha.
  std::function<double(double state, const ActionProfile& current, int agent,
                       int action)>
      utility;
};

// A game whose utilities depend on the whole history of play.
//
// Utility(alpha, i, x) is U_i^alpha(x, alpha^T_{-i}). Oracles must be pure:
// the same arguments always return the same payoff.
class HistoryGame {
 public:
  using UtilityFn =
      std::function<double(const Path& history, int agent, int action)>;

  HistoryGame(int num_players, UtilityFn utility,
              std::string name = "history");
  HistoryGame(int num_players, SufficientStatistic statistic,
              std::string name = "history");

  int num_players() const { return n_; }
  const std::string& name() const { return name_; }
  bool has_statistic() const { return statistic_.has_value(); }
  const SufficientStatistic& statistic() const;

  double Utility(const Path& history, int agent, int action) const;

  // Fold of the statistic over every profile of `history`.
  double StatisticOf(const Path& history) const;
  double UtilityFromStatistic(double state, const ActionProfile& current,
                              int agent, int action) const;

 private:
  int n_;
  UtilityFn utility_;
  std::optional<SufficientStatistic> statistic_;
  std::string name_;
};

// A potential game viewed as a history game whose utilities read only the
// last profile. Declares a constant statistic.
HistoryGame EmbedAsHistoryGame(const PotentialGame& game);

struct PotentialWitness {
  ActionProfile from;
  ActionProfile to;
  int agent = 0;
  double utility_difference = 0.0;
  double potential_difference = 0.0;
};

struct PotentialCheck {
  bool ok = true;
  double max_residual = 0.0;
  std::optional<PotentialWitness> witness;  // first violation found
};

// Checks U_i(a') - U_i(a) == phi(a') - phi(a) for every profile and every
// unilateral deviation.
PotentialCheck VerifyExactPotential(const PotentialGame& game,
                                    double tolerance = kUtilityTolerance,
                                    int cap = kDefaultEnumerationCap);

// Graphical coordination game: U_i(a) = |N_i(1)| (q + bonus) if a_i = 1 and
// |N_i(0)| otherwise, with the edge-sum potential. Requires q in (0,1] and
// bonus >= 0; the potential property is verified on construction when N is
// enumerable.
PotentialGame GcgGame(const Graph& graph, double q, double bonus);

// Dense game: table[k][i] is the payoff of agent i at the profile whose bits()
// equals k. The potential is obtained by integrating unilateral differences
// from the all-zeros profile, so VerifyExactPotential fails if the table is
// not an exact potential game.
PotentialGame TableGame(int num_players,
                        std::vector<std::vector<double>> table);

// All maximizers of the potential, ties resolved within `tolerance`.
std::vector<ActionProfile> PotentialArgmax(
    const PotentialGame& game, double tolerance = kUtilityTolerance,
    int cap = kDefaultEnumerationCap);

// Returns a copy of `game` whose potential is shifted by `offset`.
PotentialGame ShiftPotential(const PotentialGame& game, double offset);

}  // namespace loglin

#endif  // LOGLIN_GAMES_H_
