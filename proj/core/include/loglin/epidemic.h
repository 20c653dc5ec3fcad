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

#ifndef LOGLIN_EPIDEMIC_H_
#define LOGLIN_EPIDEMIC_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "loglin/alignment.h"
#include "loglin/dynamics.h"
#include "loglin/games.h"
#include "loglin/graph.h"
#include "loglin/profile.h"

namespace loglin {

// Default resolution of the susceptible-fraction grid used by exact modes.
inline constexpr int kDefaultGridBins = 10000;

// Parameters of the SIS epidemic coupled to a graphical coordination game.
struct SisgcgConfig {
  Graph graph = Graph::Empty(1);
  double gamma = 0.3;   // curing rate
  double beta0 = 0.9;   // infection rate under convention 0
  double beta1 = 0.6;   // infection rate under convention 1
  double q = 0.7;
  double dt = 0.1;      // ODE time between learning updates
  int ode_substeps = 10;
  double s0 = 0.9;      // initial susceptible fraction
  std::optional<ActionProfile> initial_profile;  // uniform when absent

  int num_players() const { return graph.num_nodes(); }
  // Throws ParameterError unless 0 < beta1 < beta0, gamma > 0, q in (0,1],
  // dt > 0, ode_substeps >= 1 and s0 in [0,1).
  void Validate() const;
};

struct EpidemicState {
  double s = 1.0;
  ActionProfile profile;
  double t = 0.0;
};

// (1/N) sum_i [a_i beta1 + (1 - a_i) beta0].
double BetaOfProfile(const ActionProfile& a, double beta0, double beta1);

// ds/dt = (1 - s)(gamma - beta s).
double SisDerivative(double s, double beta, double gamma);

// One classical RK4 step of length h, clamped to [0,1].
double SisStep(double s, double beta, double gamma, double h);

// `substeps` RK4 steps covering `duration`.
double SisIntegrate(double s, double beta, double gamma, double duration,
                    int substeps);

// Closed form of the constant-beta equation through s(0) = s0.
double SisExact(double s0, double beta, double gamma, double t);

// Nearest point k / bins of the grid on [0,1]; bins = 0 leaves s unchanged.
double SnapToGrid(double s, int bins);

// |N_i(1)| (q + I) for action 1, |N_i(0)| for action 0, with I = 1 - s and
// the other agents' actions read from `profile`.
double SisgcgUtility(const Graph& graph, double q, double s,
                     const ActionProfile& profile, int agent, int action);
double SisgcgUtility(const EpidemicState& state, int agent, int action,
                     const Graph& graph, double q);

// History game whose statistic is s after one ODE interval per profile of
// the history. grid_bins > 0 snaps s to the grid after every interval.
HistoryGame SisgcgHistoryGame(const SisgcgConfig& config, int grid_bins = 0);

// Initial law of the profile: a point mass at config.initial_profile when set,
// uniform otherwise.
Distribution InitialProfileLaw(const SisgcgConfig& config);

struct TrajectoryRow {
  double t = 0.0;
  double s = 0.0;
  double beta = 0.0;      // rate of `profile`, in force until the next row
  ActionProfile profile;
  int last_updater = 0;  // 1-based, 0 for the initial row
};

struct Trajectory {
  std::vector<TrajectoryRow> rows;
  std::uint64_t seed = 0;
  double tau = 0.0;
};

// Row k holds time k dt, the susceptible fraction after k ODE intervals and
// the profile chosen by the k-th learning update at that state. Draws from
// the generator exactly as Simulate does on SisgcgHistoryGame(config).
Trajectory RunSisgcg(const SisgcgConfig& config, Temperature tau, int n_steps,
                     std::uint64_t seed);
Trajectory RunSisgcg(const SisgcgConfig& config, const Distribution& initial,
                     Temperature tau, int n_steps, std::uint64_t seed);

struct InvarianceReport {
  std::optional<std::size_t> entry_index;  // first row with s <= bound
  std::optional<double> entry_time;
  std::vector<std::size_t> violations;     // later rows with s > bound
  bool ok() const { return entry_index.has_value() && violations.empty(); }
};

// bound = gamma / beta1 + epsilon.
InvarianceReport CheckInvariance(std::span<const TrajectoryRow> rows,
                                 double gamma, double beta1,
                                 double epsilon = 1e-9);

struct ReferenceGcg {
  PotentialGame game;
  std::vector<std::string> warnings;
};

// GcgGame(graph, q, gamma / beta1). Warns when q + gamma/beta1 <= 1 (1 is no
// longer the strict maximizer) and when beta1 / gamma <= 1.
ReferenceGcg MakeReferenceGcg(const SisgcgConfig& config);

// Utility intervals valid once s <= gamma / beta1, for analytic-bounds
// alignment checks: action 1 pays within
// [|N_i(1)| (q + 1 - gamma/beta1), |N_i(1)| (q + 1)].
UtilityBoundsFn SisAnalyticBounds(const SisgcgConfig& config);

enum class InitialLaw { kGibbsReference, kUniform, kFixed };

struct SsOptions {
  int burn_in = 2000;
  int horizon = 10000;
  int reps = 1000;
  InitialLaw initial = InitialLaw::kGibbsReference;
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct SsRow {
  double tau = 0.0;
  double occupancy = 0.0;           // fraction of post-burn-in steps at 1
  double occupancy_std_error = 0.0;
  double post_entry_occupancy = 0.0;  // same, counting only steps after entry
  double post_entry_std_error = 0.0;
  int entered_reps = 0;             // replicas that reached s <= gamma/beta1
  double gibbs_anchor = 0.0;        // reference-game Gibbs mass of 1
  std::uint64_t seed = 0;
};

struct SsResult {
  std::vector<SsRow> rows;
  std::vector<std::string> warnings;
};

// Monte Carlo occupancy of the all-ones profile per temperature. Replica r at
// the k-th temperature uses DeriveSeed(DeriveSeed(seed, "ss", k), "rep", r).
SsResult SsExperiment(const SisgcgConfig& config, std::span<const double> taus,
                      const SsOptions& options);

}  // namespace loglin

#endif  // LOGLIN_EPIDEMIC_H_
