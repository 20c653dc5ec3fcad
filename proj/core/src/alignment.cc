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

#include "loglin/alignment.h"

#include <string>

#include "loglin/errors.h"
#include "loglin/rng.h"

namespace loglin {

namespace {

class Checker {
 public:
  Checker(const PotentialGame& g_hat, const AlignmentOptions& options,
          AlignmentReport& report)
      : g_hat_(g_hat), options_(options), report_(report) {}

  // Conditions 2 and 3 at agent i for every a_{-i} <= last_{-i}, given the
  // history-side payoffs (or bounds on them).
  void CheckAgent(const std::optional<Path>& path, const ActionProfile& last,
                  int agent, double upper_one, double upper_zero) {
    const int n = last.size();
    const std::uint64_t self = std::uint64_t{1} << (n - 1 - agent);
    const std::uint64_t others = last.bits() & ~self;
    for (std::uint64_t sub = others;; sub = (sub - 1) & others) {
      const ActionProfile a(n, sub);
      const double hat_one = g_hat_.Utility(agent, 1, a);
      const double hat_zero = g_hat_.Utility(agent, 0, a);
      report_.checks += 2;
      if (upper_one < hat_one - options_.tolerance) {
        Record({2, path, a, agent, upper_one, hat_one});
      }
      if (hat_zero < upper_zero - options_.tolerance) {
        Record({3, path, a, agent, hat_zero, upper_zero});
      }
      if (sub == 0) break;
    }
  }

  void Record(AlignmentViolation v) {
    report_.is_aligned = false;
    if (report_.violations.size() < options_.max_violations) {
      report_.violations.push_back(std::move(v));
    }
  }

 private:
  const PotentialGame& g_hat_;
  const AlignmentOptions& options_;
  AlignmentReport& report_;
};

void CheckPath(const HistoryGame& g, const Path& path, Checker& checker) {
  const int n = g.num_players();
  const bool has_stat = g.has_statistic();
  const double state = has_stat ? g.StatisticOf(path) : 0.0;
  for (int i = 0; i < n; ++i) {
    const double u1 = has_stat ? g.UtilityFromStatistic(state, path.back(), i, 1)
                               : g.Utility(path, i, 1);
    const double u0 = has_stat ? g.UtilityFromStatistic(state, path.back(), i, 0)
                               : g.Utility(path, i, 0);
    checker.CheckAgent(path, path.back(), i, u1, u0);
  }
}

}  // namespace

std::string_view AlignmentModeName(AlignmentMode mode) {
  switch (mode) {
    case AlignmentMode::kEnumerate:
      return "enumerate";
    case AlignmentMode::kSample:
      return "sample";
    case AlignmentMode::kAnalyticBounds:
      return "analytic-bounds";
  }
  return "unknown";
}

AlignmentReport VerifyAlignment(const HistoryGame& g,
                                const PotentialGame& g_hat,
                                const AlignmentOptions& options) {
  const int n = g.num_players();
  if (g_hat.num_players() != n) {
    throw DimensionError("game pair has different player counts");
  }
  if (options.max_length < 1) throw ParameterError("max_T must be >= 1");
  CheckEnumerable(n, options.cap, "VerifyAlignment");

  AlignmentReport report;
  report.mode = options.mode;
  Checker checker(g_hat, options, report);

  const std::vector<ActionProfile> argmax =
      PotentialArgmax(g_hat, options.tolerance, options.cap);
  ++report.checks;
  const ActionProfile ones = ActionProfile::Ones(n);
  if (argmax.size() != 1 || argmax.front() != ones) {
    for (const ActionProfile& z : argmax) {
      if (z == ones) continue;
      checker.Record({1, std::nullopt, z, -1, g_hat.Potential(z),
                      g_hat.Potential(ones)});
    }
  }

  switch (options.mode) {
    case AlignmentMode::kEnumerate: {
      std::uint64_t total = 0;
      const std::uint64_t per_step = ProfileCount(n);
      std::uint64_t level = 1;
      for (int t = 1; t <= options.max_length; ++t) {
        if (level > options.max_paths / per_step) {
          throw BoundError("alignment enumeration exceeds cap " +
                           std::to_string(options.max_paths) + " paths");
        }
        level *= per_step;
        total += level;
        if (total > options.max_paths) {
          throw BoundError("alignment enumeration exceeds cap " +
                           std::to_string(options.max_paths) + " paths");
        }
      }
      for (int t = 1; t <= options.max_length; ++t) {
        for (const Path& path : EnumeratePaths(n, t, options.max_paths)) {
          CheckPath(g, path, checker);
        }
      }
      break;
    }
    case AlignmentMode::kSample: {
      if (options.samples < 1) throw ParameterError("sample mode needs k >= 1");
      Rng rng(options.seed);
      const std::uint64_t count = ProfileCount(n);
      for (int s = 0; s < options.samples; ++s) {
        const int length = 1 + rng.UniformIndex(options.max_length);
        std::vector<ActionProfile> profiles;
        for (int t = 0; t < length; ++t) {
          profiles.emplace_back(
              n, static_cast<std::uint64_t>(rng.Uniform() * count) % count);
        }
        CheckPath(g, Path(std::move(profiles)), checker);
      }
      break;
    }
    case AlignmentMode::kAnalyticBounds: {
      if (!options.bounds) {
        throw ParameterError("analytic-bounds mode requires utility bounds");
      }
      const std::uint64_t count = ProfileCount(n);
      for (std::uint64_t k = 0; k < count; ++k) {
        const ActionProfile last(n, k);
        for (int i = 0; i < n; ++i) {
          const UtilityInterval one = options.bounds(last, i, 1);
          const UtilityInterval zero = options.bounds(last, i, 0);
          // Worst cases: the smallest payoff for 1, the largest for 0.
          checker.CheckAgent(Path(last), last, i, one.lo, zero.hi);
        }
      }
      break;
    }
  }
  return report;
}

}  // namespace loglin
