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

#ifndef LOGLIN_IO_H_
#define LOGLIN_IO_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loglin/epidemic.h"
#include "loglin/games.h"
#include "loglin/graph.h"

namespace loglin {

// %.17g-style text: 17 significant digits, round-trips every double.
std::string FormatDouble(double x);

enum class GameKind { kGcg, kSisgcg, kTable };

std::string_view GameKindName(GameKind kind);

// Game definition document:
//   { "n_players": N,
//     "graph": {"edges": [[i, j], ...]},      1-based node ids
//     "kind": "gcg" | "sisgcg" | "table",
//     "params": {...},
//     "utility_table": [[u_1, ..., u_N], ...] }  table kind, 2^N rows in
//                                                lexicographic bitstring order
// gcg params: q, bonus. sisgcg params: gamma, beta0, beta1, q, dt,
// ode_substeps, s0, grid_bins, initial_profile (bitstring). Any kind accepts
// "inject_fault": "misaligned_payoff", which lowers the history game's payoff
// for action 1 by "fault_size" (default 1) so the pair is no longer aligned.
struct GameSpec {
  int n_players = 0;
  Graph graph = Graph::Empty(1);
  GameKind kind = GameKind::kGcg;
  double q = 1.0;
  double bonus = 0.0;
  std::vector<std::vector<double>> utility_table;
  std::optional<SisgcgConfig> sisgcg;
  int grid_bins = kDefaultGridBins;
  std::optional<std::string> inject_fault;
  double fault_size = 1.0;
};

// Throws ConfigError on malformed JSON, missing fields or invalid values.
GameSpec ParseGameSpec(std::string_view json_text);

// History game g and reference potential game g_hat described by a spec.
// For gcg and table kinds g is g_hat embedded; for sisgcg g is the hybrid
// game with the statistic snapped to `grid_bins` (0 for continuous s) and
// g_hat is the reference GCG.
struct GamePair {
  HistoryGame g;
  PotentialGame g_hat;
  std::vector<std::string> warnings;
};

GamePair BuildGamePair(const GameSpec& spec);
GamePair BuildGamePair(const GameSpec& spec, int grid_bins);

// Lowers the payoff of action 1 by `amount` everywhere.
HistoryGame InjectMisalignedPayoff(const HistoryGame& g, double amount);

}  // namespace loglin

#endif  // LOGLIN_IO_H_
