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

#ifndef LOGLIN_DYNAMICS_H_
#define LOGLIN_DYNAMICS_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "loglin/games.h"
#include "loglin/profile.h"

namespace loglin {

// Default tolerances for kernel rows, path measures and the Gibbs oracle.
inline constexpr double kKernelTolerance = 1e-12;
inline constexpr double kPathMeasureTolerance = 1e-10;
inline constexpr double kOracleTvTolerance = 1e-8;

// Exponent magnitude above which exp() would overflow a double.
inline constexpr double kMaxExponent = 709.0;

// Learning temperature tau > 0.
class Temperature {
 public:
  explicit Temperature(double tau);
  double value() const { return tau_; }

 private:
  double tau_;
};

// Probability distribution over A = {0,1}^N, stored densely by profile index.
class Distribution {
 public:
  // Validates nonnegativity and that the mass sums to 1 within tolerance.
  Distribution(int num_players, std::vector<double> probabilities,
               double tolerance = kKernelTolerance);

  static Distribution Uniform(int num_players);
  static Distribution PointMass(const ActionProfile& profile);

  int num_players() const { return n_; }
  double operator()(const ActionProfile& a) const;
  const std::vector<double>& probabilities() const { return probs_; }

  // Inverse-CDF draw over profile indices in increasing order, u in [0,1).
  ActionProfile Sample(double u) const;

 private:
  int n_;
  std::vector<double> probs_;
};

double TotalVariation(const Distribution& p, const Distribution& q);

// One row of the one-step kernel: the current profile followed by its N
// one-step neighbors in agent order.
class KernelRow {
 public:
  KernelRow(ActionProfile current, std::vector<double> masses);

  const ActionProfile& current() const { return current_; }
  // Mass on the current profile (self-loop).
  double self_mass() const { return masses_[0]; }
  // Mass on current.Flipped(agent).
  double flip_mass(int agent) const { return masses_[agent + 1]; }
  // Mass on any profile; zero outside {current} U f(current).
  double operator()(const ActionProfile& next) const;
  double Sum() const;
  std::vector<std::pair<ActionProfile, double>> Entries() const;

 private:
  ActionProfile current_;
  std::vector<double> masses_;
};

// Probability that an updating agent picks action 1 when that action gains
// delta_u over action 0: the two-action softmax written as a logistic, with
// the exponent clamped to +/- kMaxExponent.
double LogisticChoice(double delta_u, double tau);

// P_i^a(1) for a static game.
double UpdateProb(const PotentialGame& game, const ActionProfile& a, int agent,
                  Temperature tau);
// P_i^alpha(1) for a history game, others' actions taken from alpha^T.
double UpdateProb(const HistoryGame& game, const Path& history, int agent,
                  Temperature tau);

// P_i(1) for every agent.
std::vector<double> ChoiceProbabilities(const PotentialGame& game,
                                        const ActionProfile& a,
                                        Temperature tau);
std::vector<double> ChoiceProbabilities(const HistoryGame& game,
                                        const Path& history, Temperature tau);
// Same, for a game with a sufficient statistic already folded to `state`.
std::vector<double> ChoiceProbabilitiesFromStatistic(
    const HistoryGame& game, double state, const ActionProfile& current,
    Temperature tau);

// Assembles the three-case kernel from per-agent P_i(1): self-loop
// (1/N) sum_j P_j(current_j), (1/N) P_i(flipped) on each neighbor.
KernelRow KernelFromChoiceProbabilities(const ActionProfile& current,
                                        std::span<const double> prob_one);

KernelRow StepKernel(const PotentialGame& game, const ActionProfile& a,
                     Temperature tau);
KernelRow StepKernel(const HistoryGame& game, const Path& history,
                     Temperature tau);

// pi(alpha^1) prod_t P(alpha^{t+1} | ...). The static overload conditions on
// alpha^t, the history overload on alpha^{<=t}.
double PathProb(const PotentialGame& game, const Distribution& initial,
                const Path& path, Temperature tau);
double PathProb(const HistoryGame& game, const Distribution& initial,
                const Path& path, Temperature tau);

struct SimRun {
  Path path;
  // updaters[t] is the 0-based agent drawn for the transition t -> t+1.
  std::vector<int> updaters;
  std::uint64_t seed = 0;
  double tau = 0.0;
  std::string game;
};

// Log-linear learning for T-1 transitions. Draw order per step: one uniform
// for the agent (floor(u N)), one uniform compared against P_i(1). The
// initial profile consumes one uniform through Distribution::Sample.
SimRun Simulate(const HistoryGame& game, const Distribution& initial,
                Temperature tau, int length, std::uint64_t seed);
SimRun Simulate(const PotentialGame& game, const Distribution& initial,
                Temperature tau, int length, std::uint64_t seed);

enum class ProbMode { kExactPaths, kExactLifted, kMonteCarlo };

std::string_view ProbModeName(ProbMode mode);
// Throws ParameterError for unknown names.
ProbMode ParseProbMode(std::string_view name);

struct ProbOptions {
  ProbMode mode = ProbMode::kExactLifted;
  int reps = 0;                        // Monte Carlo replicas
  std::uint64_t seed = 0;              // master seed for Monte Carlo
  int jobs = 1;                        // worker threads for Monte Carlo
  std::uint64_t max_paths = 1ULL << 26;  // exact-paths enumeration guard
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;  // zero for exact modes
};

// Pr(s(T) = 1) for T = 1..max_length, computed in one pass.
//  - exact-paths: depth-first enumeration of every positive-mass path;
//  - exact-lifted: forward recursion on (profile, statistic) pairs, requires
//    a declared sufficient statistic;
//  - monte-carlo: `reps` independent runs with child streams
//    DeriveSeed(seed, "prob_all_ones", r).
std::vector<Estimate> ProbAllOnesCurve(const HistoryGame& game,
                                       const Distribution& initial,
                                       Temperature tau, int max_length,
                                       const ProbOptions& options);
// Static overload; exact-lifted iterates the |A|-state Markov chain.
std::vector<Estimate> ProbAllOnesCurve(const PotentialGame& game,
                                       const Distribution& initial,
                                       Temperature tau, int max_length,
                                       const ProbOptions& options);

Estimate ProbAllOnesAt(const HistoryGame& game, const Distribution& initial,
                       Temperature tau, int length, const ProbOptions& options);
Estimate ProbAllOnesAt(const PotentialGame& game, const Distribution& initial,
                       Temperature tau, int length, const ProbOptions& options);

// Distribution of s(T) for a static game by iterating kernel rows.
Distribution StaticMarginal(const PotentialGame& game,
                            const Distribution& initial, Temperature tau,
                            int length);

// Mass of the principal upper set {beta : beta >=_{A_T} generator}, computed
// by the forward recursion restricted to profiles above the generator. Uses
// the statistic when declared and path enumeration otherwise.
double ProbUpperSet(const HistoryGame& game, const Distribution& initial,
                    Temperature tau, const Path& generator,
                    std::uint64_t max_paths = 1ULL << 26);

// Stationary law of the |A| x |A| kernel by a dense LU solve. Throws
// NumericError when the residual ||pi P - pi||_inf exceeds 1e-12.
Distribution StationaryDistribution(const PotentialGame& game, Temperature tau,
                                    int cap = 10);

// pi(a) proportional to exp(phi(a) / tau).
Distribution GibbsDistribution(const PotentialGame& game, Temperature tau,
                               int cap = kDefaultEnumerationCap);

struct SweepRow {
  double tau = 0.0;
  int length = 0;
  ProbMode mode = ProbMode::kExactLifted;
  Estimate estimate;
  std::uint64_t seed = 0;
};

// Pr(s(T)=1) at each temperature. Monte Carlo rows use the child seed
// DeriveSeed(options.seed, "sweep", k) for the k-th temperature.
std::vector<SweepRow> StabilitySweep(const HistoryGame& game,
                                     const Distribution& initial,
                                     std::span<const double> taus, int length,
                                     const ProbOptions& options);

}  // namespace loglin

#endif  // LOGLIN_DYNAMICS_H_
