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

#include "loglin/io.h"

#include <charconv>
#include <cmath>
#include <memory>
#include <string>
#include <utility>

#include "json.hpp"
#include "loglin/errors.h"

namespace loglin {

using nlohmann::json;

std::string FormatDouble(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] =
      std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  if (ec != std::errc()) throw NumericError("cannot format double");
  return std::string(buf, end);
}

std::string_view GameKindName(GameKind kind) {
  switch (kind) {
    case GameKind::kGcg:
      return "gcg";
    case GameKind::kSisgcg:
      return "sisgcg";
    case GameKind::kTable:
      return "table";
  }
  return "unknown";
}

namespace {

template <typename T>
T Get(const json& obj, const char* key, std::optional<T> fallback = {}) {
  if (!obj.is_object() || !obj.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(std::string("missing field '") + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

Graph ParseGraph(const json& doc, int n) {
  std::vector<std::pair<int, int>> edges;
  if (doc.contains("graph")) {
    const json& g = doc.at("graph");
    if (!g.is_object()) throw ConfigError("'graph' must be an object");
    if (g.contains("edges")) {
      const json& list = g.at("edges");
      if (!list.is_array()) throw ConfigError("'graph.edges' must be an array");
      for (const json& e : list) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer()) {
          throw ConfigError("each edge must be a pair of 1-based node ids");
        }
        const int u = e[0].get<int>();
        const int v = e[1].get<int>();
        if (u < 1 || u > n || v < 1 || v > n) {
          throw ConfigError("edge endpoint out of range 1.." +
                            std::to_string(n));
        }
        edges.emplace_back(u - 1, v - 1);
      }
    }
  }
  try {
    return Graph(n, std::move(edges));
  } catch (const Error& e) {
    throw ConfigError(std::string("graph: ") + e.what());
  }
}

}  // namespace

GameSpec ParseGameSpec(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("game spec must be a JSON object");

  GameSpec spec;
  spec.n_players = Get<int>(doc, "n_players");
  if (spec.n_players < 1 || spec.n_players > kMaxPlayers) {
    throw ConfigError("n_players must lie in 1.." + std::to_string(kMaxPlayers));
  }
  spec.graph = ParseGraph(doc, spec.n_players);
  const std::string kind = Get<std::string>(doc, "kind");
  const json params = doc.contains("params") ? doc.at("params") : json::object();
  if (!params.is_object()) throw ConfigError("'params' must be an object");

  if (kind == "gcg") {
    spec.kind = GameKind::kGcg;
    spec.q = Get<double>(params, "q");
    spec.bonus = Get<double>(params, "bonus", 0.0);
  } else if (kind == "table") {
    spec.kind = GameKind::kTable;
    spec.utility_table =
        Get<std::vector<std::vector<double>>>(doc, "utility_table");
  } else if (kind == "sisgcg") {
    spec.kind = GameKind::kSisgcg;
    SisgcgConfig c;
    c.graph = spec.graph;
    c.gamma = Get<double>(params, "gamma");
    c.beta0 = Get<double>(params, "beta0");
    c.beta1 = Get<double>(params, "beta1");
    c.q = Get<double>(params, "q");
    c.dt = Get<double>(params, "dt", 0.1);
    c.ode_substeps = Get<int>(params, "ode_substeps", 10);
    c.s0 = Get<double>(params, "s0", 0.9);
    if (params.contains("initial_profile")) {
      const std::string bits = Get<std::string>(params, "initial_profile");
      try {
        c.initial_profile = ActionProfile::FromBitString(bits);
      } catch (const Error& e) {
        throw ConfigError(std::string("initial_profile: ") + e.what());
      }
    }
    spec.grid_bins = Get<int>(params, "grid_bins", kDefaultGridBins);
    if (spec.grid_bins < 0) throw ConfigError("grid_bins must be >= 0");
    spec.q = c.q;
    spec.bonus = c.gamma / c.beta1;
    try {
      c.Validate();
    } catch (const Error& e) {
      throw ConfigError(std::string("sisgcg params: ") + e.what());
    }
    spec.sisgcg = std::move(c);
  } else {
    throw ConfigError("unknown game kind '" + kind + "'");
  }
  if (params.contains("inject_fault")) {
    spec.inject_fault = Get<std::string>(params, "inject_fault");
    if (*spec.inject_fault != "misaligned_payoff") {
      throw ConfigError("unknown fault '" + *spec.inject_fault + "'");
    }
    spec.fault_size = Get<double>(params, "fault_size", 1.0);
  }
  // Surface invalid game parameters as configuration errors.
  try {
    (void)BuildGamePair(spec, 0);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

HistoryGame InjectMisalignedPayoff(const HistoryGame& g, double amount) {
  const std::string name = g.name() + "+fault";
  if (g.has_statistic()) {
    SufficientStatistic stat = g.statistic();
    auto inner = stat.utility;
    stat.utility = [inner, amount](double s, const ActionProfile& current,
                                   int agent, int action) {
      return inner(s, current, agent, action) - (action == 1 ? amount : 0.0);
    };
    return HistoryGame(g.num_players(), std::move(stat), name);
  }
  auto base = std::make_shared<const HistoryGame>(g);
  return HistoryGame(
      g.num_players(),
      [base, amount](const Path& history, int agent, int action) {
        return base->Utility(history, agent, action) -
               (action == 1 ? amount : 0.0);
      },
      name);
}

GamePair BuildGamePair(const GameSpec& spec) {
  return BuildGamePair(spec, spec.grid_bins);
}

GamePair BuildGamePair(const GameSpec& spec, int grid_bins) {
  auto finish = [&](HistoryGame g, PotentialGame g_hat,
                    std::vector<std::string> warnings) {
    if (spec.inject_fault) g = InjectMisalignedPayoff(g, spec.fault_size);
    return GamePair{std::move(g), std::move(g_hat), std::move(warnings)};
  };
  switch (spec.kind) {
    case GameKind::kGcg: {
      PotentialGame g_hat = GcgGame(spec.graph, spec.q, spec.bonus);
      return finish(EmbedAsHistoryGame(g_hat), g_hat, {});
    }
    case GameKind::kTable: {
      if (spec.utility_table.size() != ProfileCount(spec.n_players)) {
        throw ConfigError("utility_table needs 2^N rows");
      }
      PotentialGame g_hat = TableGame(spec.n_players, spec.utility_table);
      return finish(EmbedAsHistoryGame(g_hat), g_hat, {});
    }
    case GameKind::kSisgcg: {
      ReferenceGcg ref = MakeReferenceGcg(*spec.sisgcg);
      return finish(SisgcgHistoryGame(*spec.sisgcg, grid_bins), ref.game,
                    ref.warnings);
    }
  }
  throw ConfigError("unknown game kind");
}

}  // namespace loglin
