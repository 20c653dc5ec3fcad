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

#include "loglin/dynamics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "loglin/errors.h"
#include "loglin/parallel.h"
#include "loglin/rng.h"

namespace loglin {

namespace {

using LiftedKey = std::pair<std::uint64_t, double>;
using LiftedStates = std::map<LiftedKey, double>;

void CheckAgent(int agent, int n) {
  if (agent < 0 || agent >= n) {
    throw DimensionError("agent " + std::to_string(agent) +
                         " out of range for " + std::to_string(n) +
                         " players");
  }
}

void CheckInitial(const Distribution& initial, int n) {
  if (initial.num_players() != n) {
    throw DimensionError("initial distribution size does not match game");
  }
}

// |supp pi| (N+1)^(T-1), saturating at max_paths + 1.
std::uint64_t PathTreeSize(const Distribution& initial, int n, int length,
                           std::uint64_t max_paths) {
  std::uint64_t roots = 0;
  for (double p : initial.probabilities()) {
    if (p > 0.0) ++roots;
  }
  std::uint64_t total = roots;
  for (int t = 1; t < length; ++t) {
    if (total > max_paths / static_cast<std::uint64_t>(n + 1)) {
      return max_paths + 1;
    }
    total *= static_cast<std::uint64_t>(n + 1);
  }
  return total;
}

class PathEnumerator {
 public:
  PathEnumerator(const HistoryGame& game, Temperature tau, int max_length)
      : game_(game), tau_(tau), max_length_(max_length) {}

  // visit(prefix, mass) is called on every positive-mass prefix; returning
  // false prunes the subtree.
  template <typename Visit>
  void Run(const Distribution& initial, Visit&& visit) {
    const int n = game_.num_players();
    const auto& probs = initial.probabilities();
    for (std::uint64_t k = 0; k < probs.size(); ++k) {
      if (probs[k] <= 0.0) continue;
      const ActionProfile first(n, k);
      prefix_.assign(1, first);
      const double state = game_.has_statistic()
                               ? game_.statistic().advance(
                                     game_.statistic().initial, first)
                               : 0.0;
      Recurse(state, probs[k], visit);
    }
  }

 private:
  template <typename Visit>
  void Recurse(double state, double mass, Visit& visit) {
    if (!visit(prefix_, mass)) return;
    if (static_cast<int>(prefix_.size()) == max_length_) return;
    const ActionProfile current = prefix_.back();
    const std::vector<double> p1 =
        game_.has_statistic()
            ? ChoiceProbabilitiesFromStatistic(game_, state, current, tau_)
            : ChoiceProbabilities(game_, Path(prefix_), tau_);
    const KernelRow row = KernelFromChoiceProbabilities(current, p1);
    for (const auto& [next, m] : row.Entries()) {
      if (m <= 0.0) continue;
      prefix_.push_back(next);
      const double next_state = game_.has_statistic()
                                    ? game_.statistic().advance(state, next)
                                    : 0.0;
      Recurse(next_state, mass * m, visit);
      prefix_.pop_back();
    }
  }

  const HistoryGame& game_;
  Temperature tau_;
  int max_length_;
  std::vector<ActionProfile> prefix_;
};

LiftedStates LiftedInitial(const HistoryGame& game,
                           const Distribution& initial) {
  const SufficientStatistic& stat = game.statistic();
  const int n = game.num_players();
  LiftedStates states;
  const auto& probs = initial.probabilities();
  for (std::uint64_t k = 0; k < probs.size(); ++k) {
    if (probs[k] <= 0.0) continue;
    const ActionProfile a(n, k);
    states[{k, stat.advance(stat.initial, a)}] += probs[k];
  }
  return states;
}

LiftedStates LiftedStep(const HistoryGame& game, const LiftedStates& states,
                        Temperature tau) {
  const SufficientStatistic& stat = game.statistic();
  const int n = game.num_players();
  LiftedStates next;
  for (const auto& [key, mass] : states) {
    const ActionProfile current(n, key.first);
    const std::vector<double> p1 =
        ChoiceProbabilitiesFromStatistic(game, key.second, current, tau);
    const KernelRow row = KernelFromChoiceProbabilities(current, p1);
    for (const auto& [b, m] : row.Entries()) {
      if (m <= 0.0) continue;
      next[{b.bits(), stat.advance(key.second, b)}] += mass * m;
    }
  }
  return next;
}

double MassAtOnes(const LiftedStates& states, int n) {
  const std::uint64_t ones = ProfileCount(n) - 1;
  double total = 0.0;
  for (const auto& [key, mass] : states) {
    if (key.first == ones) total += mass;
  }
  return total;
}

std::vector<Estimate> MonteCarloCurve(const HistoryGame& game,
                                      const Distribution& initial,
                                      Temperature tau, int max_length,
                                      const ProbOptions& options) {
  if (options.reps <= 0) {
    throw ParameterError("monte-carlo mode needs a positive replica count");
  }
  const auto hits = ParallelMap<std::vector<char>>(
      options.reps, options.jobs, [&](std::int64_t r) {
        const SimRun run =
            Simulate(game, initial, tau, max_length,
                     DeriveSeed(options.seed, "prob_all_ones",
                                static_cast<std::uint64_t>(r)));
        std::vector<char> out(max_length);
        for (int t = 0; t < max_length; ++t) {
          out[t] = run.path[t].IsOnes() ? 1 : 0;
        }
        return out;
      });
  std::vector<Estimate> curve(max_length);
  const double k = options.reps;
  for (int t = 0; t < max_length; ++t) {
    std::int64_t count = 0;
    for (const auto& h : hits) count += h[t];
    const double p = count / k;
    curve[t].value = p;
    curve[t].std_error = options.reps > 1 ? std::sqrt(p * (1.0 - p) / (k - 1.0))
                                          : 0.0;
  }
  return curve;
}

std::vector<KernelRow> AllKernelRows(const PotentialGame& game,
                                     Temperature tau) {
  const int n = game.num_players();
  const std::uint64_t count = ProfileCount(n);
  std::vector<KernelRow> rows;
  rows.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    rows.push_back(StepKernel(game, ActionProfile(n, k), tau));
  }
  return rows;
}

}  // namespace

Temperature::Temperature(double tau) : tau_(tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw ParameterError("temperature must be positive and finite, got " +
                         std::to_string(tau));
  }
}

Distribution::Distribution(int num_players, std::vector<double> probabilities,
                           double tolerance)
    : n_(num_players), probs_(std::move(probabilities)) {
  CheckEnumerable(n_, kDefaultEnumerationCap, "Distribution");
  if (probs_.size() != ProfileCount(n_)) {
    throw DimensionError("distribution needs one entry per profile");
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw ParameterError("probabilities must be finite and nonnegative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > tolerance) {
    throw ParameterError("probabilities sum to " + std::to_string(total) +
                         ", not 1");
  }
}

Distribution Distribution::Uniform(int num_players) {
  CheckEnumerable(num_players, kDefaultEnumerationCap, "Distribution");
  const std::uint64_t count = ProfileCount(num_players);
  return Distribution(num_players,
                      std::vector<double>(count, 1.0 / static_cast<double>(count)));
}

Distribution Distribution::PointMass(const ActionProfile& profile) {
  CheckEnumerable(profile.size(), kDefaultEnumerationCap, "Distribution");
  std::vector<double> probs(ProfileCount(profile.size()), 0.0);
  probs[profile.bits()] = 1.0;
  return Distribution(profile.size(), std::move(probs));
}

double Distribution::operator()(const ActionProfile& a) const {
  if (a.size() != n_) throw DimensionError("profile size does not match");
  return probs_[a.bits()];
}

ActionProfile Distribution::Sample(double u) const {
  double acc = 0.0;
  std::uint64_t last_positive = 0;
  for (std::uint64_t k = 0; k < probs_.size(); ++k) {
    if (probs_[k] <= 0.0) continue;
    last_positive = k;
    acc += probs_[k];
    if (u < acc) return ActionProfile(n_, k);
  }
  return ActionProfile(n_, last_positive);
}

double TotalVariation(const Distribution& p, const Distribution& q) {
  if (p.num_players() != q.num_players()) {
    throw DimensionError("distributions over different spaces");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < p.probabilities().size(); ++k) {
    sum += std::abs(p.probabilities()[k] - q.probabilities()[k]);
  }
  return 0.5 * sum;
}

KernelRow::KernelRow(ActionProfile current, std::vector<double> masses)
    : current_(current), masses_(std::move(masses)) {
  if (static_cast<int>(masses_.size()) != current_.size() + 1) {
    throw DimensionError("kernel row needs N+1 masses");
  }
}

double KernelRow::operator()(const ActionProfile& next) const {
  if (next.size() != current_.size()) {
    throw DimensionError("profile size does not match kernel row");
  }
  const std::uint64_t diff = next.bits() ^ current_.bits();
  if (diff == 0) return masses_[0];
  if ((diff & (diff - 1)) != 0) return 0.0;
  return masses_[*UnilateralDeviator(current_, next) + 1];
}

double KernelRow::Sum() const {
  double total = 0.0;
  for (double m : masses_) total += m;
  return total;
}

std::vector<std::pair<ActionProfile, double>> KernelRow::Entries() const {
  std::vector<std::pair<ActionProfile, double>> out;
  out.reserve(masses_.size());
  out.emplace_back(current_, masses_[0]);
  for (int i = 0; i < current_.size(); ++i) {
    out.emplace_back(current_.Flipped(i), masses_[i + 1]);
  }
  return out;
}

double LogisticChoice(double delta_u, double tau) {
  if (!(tau > 0.0)) throw ParameterError("temperature must be positive");
  if (!std::isfinite(delta_u)) throw NumericError("non-finite utility gap");
  const double x = std::clamp(delta_u / tau, -kMaxExponent, kMaxExponent);
  return 1.0 / (1.0 + std::exp(-x));
}

double UpdateProb(const PotentialGame& game, const ActionProfile& a, int agent,
                  Temperature tau) {
  CheckAgent(agent, game.num_players());
  const double du = game.Utility(agent, 1, a) - game.Utility(agent, 0, a);
  return LogisticChoice(du, tau.value());
}

double UpdateProb(const HistoryGame& game, const Path& history, int agent,
                  Temperature tau) {
  CheckAgent(agent, game.num_players());
  const double du =
      game.Utility(history, agent, 1) - game.Utility(history, agent, 0);
  return LogisticChoice(du, tau.value());
}

std::vector<double> ChoiceProbabilities(const PotentialGame& game,
                                        const ActionProfile& a,
                                        Temperature tau) {
  std::vector<double> out(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    out[i] = UpdateProb(game, a, i, tau);
  }
  return out;
}

std::vector<double> ChoiceProbabilities(const HistoryGame& game,
                                        const Path& history, Temperature tau) {
  if (history.num_players() != game.num_players()) {
    throw DimensionError("path size does not match game");
  }
  if (game.has_statistic()) {
    return ChoiceProbabilitiesFromStatistic(game, game.StatisticOf(history),
                                            history.back(), tau);
  }
  std::vector<double> out(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    out[i] = UpdateProb(game, history, i, tau);
  }
  return out;
}

std::vector<double> ChoiceProbabilitiesFromStatistic(
    const HistoryGame& game, double state, const ActionProfile& current,
    Temperature tau) {
  std::vector<double> out(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    const double du = game.UtilityFromStatistic(state, current, i, 1) -
                      game.UtilityFromStatistic(state, current, i, 0);
    out[i] = LogisticChoice(du, tau.value());
  }
  return out;
}

KernelRow KernelFromChoiceProbabilities(const ActionProfile& current,
                                        std::span<const double> prob_one) {
  const int n = current.size();
  if (static_cast<int>(prob_one.size()) != n) {
    throw DimensionError("need one choice probability per agent");
  }
  std::vector<double> masses(n + 1, 0.0);
  double stay = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p1 = prob_one[i];
    const double keep = current[i] == 1 ? p1 : 1.0 - p1;
    const double flip = current[i] == 1 ? 1.0 - p1 : p1;
    stay += keep;
    masses[i + 1] = flip / n;
  }
  masses[0] = stay / n;
  return KernelRow(current, std::move(masses));
}

KernelRow StepKernel(const PotentialGame& game, const ActionProfile& a,
                     Temperature tau) {
  const std::vector<double> p1 = ChoiceProbabilities(game, a, tau);
  return KernelFromChoiceProbabilities(a, p1);
}

KernelRow StepKernel(const HistoryGame& game, const Path& history,
                     Temperature tau) {
  const std::vector<double> p1 = ChoiceProbabilities(game, history, tau);
  return KernelFromChoiceProbabilities(history.back(), p1);
}

double PathProb(const PotentialGame& game, const Distribution& initial,
                const Path& path, Temperature tau) {
  CheckInitial(initial, game.num_players());
  if (path.num_players() != game.num_players()) {
    throw DimensionError("path size does not match game");
  }
  double prob = initial(path[0]);
  for (int t = 0; t + 1 < path.length() && prob > 0.0; ++t) {
    prob *= StepKernel(game, path[t], tau)(path[t + 1]);
  }
  return prob;
}

double PathProb(const HistoryGame& game, const Distribution& initial,
                const Path& path, Temperature tau) {
  CheckInitial(initial, game.num_players());
  if (path.num_players() != game.num_players()) {
    throw DimensionError("path size does not match game");
  }
  double prob = initial(path[0]);
  double state = game.has_statistic()
                     ? game.statistic().advance(game.statistic().initial,
                                                path[0])
                     : 0.0;
  for (int t = 0; t + 1 < path.length() && prob > 0.0; ++t) {
    const std::vector<double> p1 =
        game.has_statistic()
            ? ChoiceProbabilitiesFromStatistic(game, state, path[t], tau)
            : ChoiceProbabilities(game, path.Prefix(t + 1), tau);
    prob *= KernelFromChoiceProbabilities(path[t], p1)(path[t + 1]);
    if (game.has_statistic()) {
      state = game.statistic().advance(state, path[t + 1]);
    }
  }
  return prob;
}

SimRun Simulate(const HistoryGame& game, const Distribution& initial,
                Temperature tau, int length, std::uint64_t seed) {
  CheckInitial(initial, game.num_players());
  if (length < 1) throw ParameterError("simulation length must be >= 1");
  const int n = game.num_players();
  Rng rng(seed);
  std::vector<ActionProfile> profiles;
  profiles.reserve(length);
  profiles.push_back(initial.Sample(rng.Uniform()));
  std::vector<int> updaters;
  updaters.reserve(length > 0 ? length - 1 : 0);
  double state = game.has_statistic()
                     ? game.statistic().advance(game.statistic().initial,
                                                profiles[0])
                     : 0.0;
  for (int t = 1; t < length; ++t) {
    const ActionProfile& current = profiles.back();
    const int agent = rng.UniformIndex(n);
    double du;
    if (game.has_statistic()) {
      du = game.UtilityFromStatistic(state, current, agent, 1) -
           game.UtilityFromStatistic(state, current, agent, 0);
    } else {
      const Path history(profiles);
      du = game.Utility(history, agent, 1) - game.Utility(history, agent, 0);
    }
    const double p1 = LogisticChoice(du, tau.value());
    const int action = rng.Uniform() < p1 ? 1 : 0;
    profiles.push_back(current.WithAction(agent, action));
    updaters.push_back(agent);
    if (game.has_statistic()) {
      state = game.statistic().advance(state, profiles.back());
    }
  }
  return SimRun{Path(std::move(profiles)), std::move(updaters), seed,
                tau.value(), game.name()};
}

SimRun Simulate(const PotentialGame& game, const Distribution& initial,
                Temperature tau, int length, std::uint64_t seed) {
  SimRun run = Simulate(EmbedAsHistoryGame(game), initial, tau, length, seed);
  run.game = game.name();
  return run;
}

std::string_view ProbModeName(ProbMode mode) {
  switch (mode) {
    case ProbMode::kExactPaths:
      return "exact-paths";
    case ProbMode::kExactLifted:
      return "exact-lifted";
    case ProbMode::kMonteCarlo:
      return "monte-carlo";
  }
  return "unknown";
}

ProbMode ParseProbMode(std::string_view name) {
  if (name == "exact-paths") return ProbMode::kExactPaths;
  if (name == "exact-lifted") return ProbMode::kExactLifted;
  if (name == "monte-carlo") return ProbMode::kMonteCarlo;
  throw ParameterError("unknown mode '" + std::string(name) +
                       "' (expected exact-paths, exact-lifted or monte-carlo)");
}

std::vector<Estimate> ProbAllOnesCurve(const HistoryGame& game,
                                       const Distribution& initial,
                                       Temperature tau, int max_length,
                                       const ProbOptions& options) {
  CheckInitial(initial, game.num_players());
  if (max_length < 1) throw ParameterError("T must be >= 1");
  const int n = game.num_players();
  std::vector<Estimate> curve(max_length);
  switch (options.mode) {
    case ProbMode::kExactPaths: {
      if (PathTreeSize(initial, n, max_length, options.max_paths) >
          options.max_paths) {
        throw BoundError("exact-paths: (N+1)^(T-1) path tree exceeds cap " +
                         std::to_string(options.max_paths));
      }
      PathEnumerator enumerator(game, tau, max_length);
      enumerator.Run(initial, [&](const std::vector<ActionProfile>& prefix,
                                  double mass) {
        if (prefix.back().IsOnes()) curve[prefix.size() - 1].value += mass;
        return true;
      });
      return curve;
    }
    case ProbMode::kExactLifted: {
      if (!game.has_statistic()) {
        throw ParameterError("exact-lifted mode needs a sufficient statistic");
      }
      LiftedStates states = LiftedInitial(game, initial);
      curve[0].value = MassAtOnes(states, n);
      for (int t = 1; t < max_length; ++t) {
        states = LiftedStep(game, states, tau);
        curve[t].value = MassAtOnes(states, n);
      }
      return curve;
    }
    case ProbMode::kMonteCarlo:
      return MonteCarloCurve(game, initial, tau, max_length, options);
  }
  return curve;
}

std::vector<Estimate> ProbAllOnesCurve(const PotentialGame& game,
                                       const Distribution& initial,
                                       Temperature tau, int max_length,
                                       const ProbOptions& options) {
  if (options.mode != ProbMode::kExactLifted) {
    return ProbAllOnesCurve(EmbedAsHistoryGame(game), initial, tau, max_length,
                            options);
  }
  CheckInitial(initial, game.num_players());
  if (max_length < 1) throw ParameterError("T must be >= 1");
  const std::vector<KernelRow> rows = AllKernelRows(game, tau);
  const std::uint64_t ones = rows.size() - 1;
  std::vector<double> x = initial.probabilities();
  std::vector<Estimate> curve(max_length);
  curve[0].value = x[ones];
  for (int t = 1; t < max_length; ++t) {
    std::vector<double> next(x.size(), 0.0);
    for (std::uint64_t k = 0; k < x.size(); ++k) {
      if (x[k] == 0.0) continue;
      for (const auto& [b, m] : rows[k].Entries()) next[b.bits()] += x[k] * m;
    }
    x = std::move(next);
    curve[t].value = x[ones];
  }
  return curve;
}

Estimate ProbAllOnesAt(const HistoryGame& game, const Distribution& initial,
                       Temperature tau, int length,
                       const ProbOptions& options) {
  return ProbAllOnesCurve(game, initial, tau, length, options).back();
}

Estimate ProbAllOnesAt(const PotentialGame& game, const Distribution& initial,
                       Temperature tau, int length,
                       const ProbOptions& options) {
  return ProbAllOnesCurve(game, initial, tau, length, options).back();
}

Distribution StaticMarginal(const PotentialGame& game,
                            const Distribution& initial, Temperature tau,
                            int length) {
  CheckInitial(initial, game.num_players());
  if (length < 1) throw ParameterError("T must be >= 1");
  const std::vector<KernelRow> rows = AllKernelRows(game, tau);
  std::vector<double> x = initial.probabilities();
  for (int t = 1; t < length; ++t) {
    std::vector<double> next(x.size(), 0.0);
    for (std::uint64_t k = 0; k < x.size(); ++k) {
      if (x[k] == 0.0) continue;
      for (const auto& [b, m] : rows[k].Entries()) next[b.bits()] += x[k] * m;
    }
    x = std::move(next);
  }
  return Distribution(game.num_players(), std::move(x), kPathMeasureTolerance);
}

double ProbUpperSet(const HistoryGame& game, const Distribution& initial,
                    Temperature tau, const Path& generator,
                    std::uint64_t max_paths) {
  CheckInitial(initial, game.num_players());
  if (generator.num_players() != game.num_players()) {
    throw DimensionError("generator path size does not match game");
  }
  const int length = generator.length();
  const int n = game.num_players();
  if (game.has_statistic()) {
    auto keep_above = [&](LiftedStates& states, int t) {
      for (auto it = states.begin(); it != states.end();) {
        if (!ProfileLeq(generator[t], ActionProfile(n, it->first.first))) {
          it = states.erase(it);
        } else {
          ++it;
        }
      }
    };
    LiftedStates states = LiftedInitial(game, initial);
    keep_above(states, 0);
    for (int t = 1; t < length; ++t) {
      states = LiftedStep(game, states, tau);
      keep_above(states, t);
    }
    double total = 0.0;
    for (const auto& [key, mass] : states) total += mass;
    return total;
  }
  if (PathTreeSize(initial, n, length, max_paths) > max_paths) {
    throw BoundError("upper-set enumeration exceeds cap");
  }
  double total = 0.0;
  PathEnumerator enumerator(game, tau, length);
  enumerator.Run(initial, [&](const std::vector<ActionProfile>& prefix,
                              double mass) {
    const int t = static_cast<int>(prefix.size()) - 1;
    if (!ProfileLeq(generator[t], prefix.back())) return false;
    if (t + 1 == length) total += mass;
    return true;
  });
  return total;
}

Distribution StationaryDistribution(const PotentialGame& game, Temperature tau,
                                    int cap) {
  const int n = game.num_players();
  CheckEnumerable(n, cap, "StationaryDistribution");
  const std::vector<KernelRow> rows = AllKernelRows(game, tau);
  const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd kernel = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    for (const auto& [b, mass] : rows[k].Entries()) {
      kernel(k, static_cast<Eigen::Index>(b.bits())) += mass;
    }
  }
  // pi (P - I) = 0 with sum(pi) = 1: transpose, then overwrite the last
  // equation with the normalization.
  Eigen::MatrixXd system = kernel.transpose() - Eigen::MatrixXd::Identity(m, m);
  system.row(m - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  rhs(m - 1) = 1.0;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  Eigen::VectorXd pi = lu.solve(rhs);
  for (int refine = 0; refine < 2; ++refine) {
    pi += lu.solve(rhs - system * pi);
  }
  std::vector<double> probs(m);
  double total = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    probs[k] = std::max(0.0, pi(k));
    total += probs[k];
  }
  for (double& p : probs) p /= total;
  Eigen::Map<const Eigen::RowVectorXd> row(probs.data(), m);
  const double residual =
      (row * kernel - row).cwiseAbs().maxCoeff();
  if (residual > 1e-12) {
    throw NumericError("stationary solve residual " + std::to_string(residual) +
                       " exceeds 1e-12");
  }
  return Distribution(n, std::move(probs));
}

Distribution GibbsDistribution(const PotentialGame& game, Temperature tau,
                               int cap) {
  const int n = game.num_players();
  CheckEnumerable(n, cap, "GibbsDistribution");
  const std::uint64_t count = ProfileCount(n);
  std::vector<double> scaled(count);
  double top = -std::numeric_limits<double>::infinity();
  for (std::uint64_t k = 0; k < count; ++k) {
    scaled[k] = game.Potential(ActionProfile(n, k)) / tau.value();
    top = std::max(top, scaled[k]);
  }
  double total = 0.0;
  for (double& w : scaled) {
    w = std::exp(w - top);
    total += w;
  }
  for (double& w : scaled) w /= total;
  return Distribution(n, std::move(scaled));
}

std::vector<SweepRow> StabilitySweep(const HistoryGame& game,
                                     const Distribution& initial,
                                     std::span<const double> taus, int length,
                                     const ProbOptions& options) {
  std::vector<SweepRow> rows;
  rows.reserve(taus.size());
  for (std::size_t k = 0; k < taus.size(); ++k) {
    const Temperature tau(taus[k]);
    ProbOptions local = options;
    local.seed = DeriveSeed(options.seed, "sweep", k);
    SweepRow row;
    row.tau = tau.value();
    row.length = length;
    row.mode = options.mode;
    row.estimate = ProbAllOnesAt(game, initial, tau, length, local);
    row.seed = options.mode == ProbMode::kMonteCarlo ? local.seed : 0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace loglin
