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

#include "loglin/epidemic.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <utility>

#include "loglin/errors.h"
#include "loglin/parallel.h"
#include "loglin/rng.h"

namespace loglin {

void SisgcgConfig::Validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ParameterError(what);
  };
  require(std::isfinite(gamma) && gamma > 0.0, "gamma must be > 0");
  require(std::isfinite(beta1) && beta1 > 0.0, "beta1 must be > 0");
  require(std::isfinite(beta0) && beta1 < beta0, "need 0 < beta1 < beta0");
  require(q > 0.0 && q <= 1.0, "q must lie in (0,1]");
  require(std::isfinite(dt) && dt > 0.0, "dt must be > 0");
  require(ode_substeps >= 1, "ode_substeps must be >= 1");
  require(s0 >= 0.0 && s0 < 1.0, "s0 must lie in [0,1)");
  if (initial_profile && initial_profile->size() != graph.num_nodes()) {
    throw DimensionError("initial profile size differs from the graph");
  }
}

double BetaOfProfile(const ActionProfile& a, double beta0, double beta1) {
  double total = 0.0;
  for (int i = 0; i < a.size(); ++i) total += a[i] == 1 ? beta1 : beta0;
  return total / a.size();
}

double SisDerivative(double s, double beta, double gamma) {
  return (1.0 - s) * (gamma - beta * s);
}

double SisStep(double s, double beta, double gamma, double h) {
  const double k1 = SisDerivative(s, beta, gamma);
  const double k2 = SisDerivative(s + 0.5 * h * k1, beta, gamma);
  const double k3 = SisDerivative(s + 0.5 * h * k2, beta, gamma);
  const double k4 = SisDerivative(s + h * k3, beta, gamma);
  const double next = s + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!std::isfinite(next)) {
    throw NumericError("SIS step produced a non-finite value");
  }
  return std::clamp(next, 0.0, 1.0);
}

double SisIntegrate(double s, double beta, double gamma, double duration,
                    int substeps) {
  if (substeps < 1) throw ParameterError("substeps must be >= 1");
  const double h = duration / substeps;
  for (int k = 0; k < substeps; ++k) s = SisStep(s, beta, gamma, h);
  return s;
}

// With I = 1 - s the equation is logistic: dI/dt = r I (1 - I / K), where
// r = beta - gamma and K = 1 - gamma / beta.
double SisExact(double s0, double beta, double gamma, double t) {
  const double i0 = 1.0 - s0;
  if (i0 == 0.0) return 1.0;
  const double r = beta - gamma;
  if (r == 0.0) return 1.0 - i0 / (1.0 + beta * i0 * t);
  const double k = 1.0 - gamma / beta;
  return 1.0 - k / (1.0 + (k / i0 - 1.0) * std::exp(-r * t));
}

double SnapToGrid(double s, int bins) {
  if (bins <= 0) return s;
  return std::nearbyint(s * bins) / bins;
}

double SisgcgUtility(const Graph& graph, double q, double s,
                     const ActionProfile& profile, int agent, int action) {
  if (action == 1) {
    return graph.CountNeighborsPlaying(agent, profile, 1) * (q + (1.0 - s));
  }
  return static_cast<double>(graph.CountNeighborsPlaying(agent, profile, 0));
}

double SisgcgUtility(const EpidemicState& state, int agent, int action,
                     const Graph& graph, double q) {
  return SisgcgUtility(graph, q, state.s, state.profile, agent, action);
}

HistoryGame SisgcgHistoryGame(const SisgcgConfig& config, int grid_bins) {
  config.Validate();
  if (grid_bins < 0) throw ParameterError("grid_bins must be >= 0");
  auto graph = std::make_shared<const Graph>(config.graph);
  SufficientStatistic statistic;
  statistic.initial = SnapToGrid(config.s0, grid_bins);
  const double gamma = config.gamma;
  const double beta0 = config.beta0;
  const double beta1 = config.beta1;
  const double dt = config.dt;
  const int substeps = config.ode_substeps;
  statistic.advance = [=](double s, const ActionProfile& a) {
    const double beta = BetaOfProfile(a, beta0, beta1);
    return SnapToGrid(SisIntegrate(s, beta, gamma, dt, substeps), grid_bins);
  };
  const double q = config.q;
  statistic.utility = [graph, q](double s, const ActionProfile& current,
                                 int agent, int action) {
    return SisgcgUtility(*graph, q, s, current, agent, action);
  };
  return HistoryGame(config.num_players(), std::move(statistic),
                     grid_bins > 0 ? "sisgcg-grid" : "sisgcg");
}

Distribution InitialProfileLaw(const SisgcgConfig& config) {
  if (config.initial_profile) {
    return Distribution::PointMass(*config.initial_profile);
  }
  return Distribution::Uniform(config.num_players());
}

namespace {

// Hybrid chain on (s, profile) drawing from `rng` in the same order as
// Simulate: the initial profile, then per update an agent and a coin.
class SisgcgChain {
 public:
  SisgcgChain(const SisgcgConfig& config, Temperature tau)
      : config_(config), tau_(tau) {}

  void Start(const Distribution& initial, Rng& rng) {
    s_ = config_.s0;
    profile_ = initial.Sample(rng.Uniform());
  }

  // Integrates one interval at the current profile, then lets one agent
  // revise. Returns the 0-based updater.
  int Advance(Rng& rng) {
    s_ = SisIntegrate(s_, Beta(), config_.gamma, config_.dt,
                      config_.ode_substeps);
    const int agent = rng.UniformIndex(profile_.size());
    const double du =
        SisgcgUtility(config_.graph, config_.q, s_, profile_, agent, 1) -
        SisgcgUtility(config_.graph, config_.q, s_, profile_, agent, 0);
    const int action = rng.Uniform() < LogisticChoice(du, tau_.value()) ? 1 : 0;
    profile_ = profile_.WithAction(agent, action);
    return agent;
  }

  double s() const { return s_; }
  const ActionProfile& profile() const { return profile_; }
  double Beta() const {
    return BetaOfProfile(profile_, config_.beta0, config_.beta1);
  }

 private:
  const SisgcgConfig& config_;
  Temperature tau_;
  double s_ = 1.0;
  ActionProfile profile_;
};

}  // namespace

Trajectory RunSisgcg(const SisgcgConfig& config, Temperature tau, int n_steps,
                     std::uint64_t seed) {
  return RunSisgcg(config, InitialProfileLaw(config), tau, n_steps, seed);
}

Trajectory RunSisgcg(const SisgcgConfig& config, const Distribution& initial,
                     Temperature tau, int n_steps, std::uint64_t seed) {
  config.Validate();
  if (n_steps < 0) throw ParameterError("n_steps must be >= 0");
  if (initial.num_players() != config.num_players()) {
    throw DimensionError("initial law size differs from the graph");
  }
  Trajectory traj;
  traj.seed = seed;
  traj.tau = tau.value();
  traj.rows.reserve(static_cast<std::size_t>(n_steps) + 1);
  Rng rng(seed);
  SisgcgChain chain(config, tau);
  chain.Start(initial, rng);
  traj.rows.push_back({0.0, chain.s(), chain.Beta(), chain.profile(), 0});
  for (int k = 1; k <= n_steps; ++k) {
    const int agent = chain.Advance(rng);
    traj.rows.push_back({k * config.dt, chain.s(), chain.Beta(),
                         chain.profile(), agent + 1});
  }
  return traj;
}

InvarianceReport CheckInvariance(std::span<const TrajectoryRow> rows,
                                 double gamma, double beta1, double epsilon) {
  if (rows.empty()) throw ParameterError("trajectory is empty");
  const double bound = gamma / beta1 + epsilon;
  InvarianceReport report;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (!report.entry_index) {
      if (rows[k].s <= bound) {
        report.entry_index = k;
        report.entry_time = rows[k].t;
      }
    } else if (rows[k].s > bound) {
      report.violations.push_back(k);
    }
  }
  return report;
}

ReferenceGcg MakeReferenceGcg(const SisgcgConfig& config) {
  if (!(config.beta1 > 0.0)) throw ParameterError("beta1 must be > 0");
  const double bonus = config.gamma / config.beta1;
  ReferenceGcg ref{GcgGame(config.graph, config.q, bonus), {}};
  if (!(config.q + bonus > 1.0)) {
    ref.warnings.push_back(
        "q + gamma/beta1 <= 1: the all-ones profile is not the strict "
        "potential maximizer");
  }
  if (!(config.beta1 / config.gamma > 1.0)) {
    ref.warnings.push_back(
        "beta1/gamma <= 1: the infection dies out and the bonus is >= 1");
  }
  return ref;
}

UtilityBoundsFn SisAnalyticBounds(const SisgcgConfig& config) {
  auto graph = std::make_shared<const Graph>(config.graph);
  const double lo_weight = config.q + (1.0 - config.gamma / config.beta1);
  const double hi_weight = config.q + 1.0;
  return [graph, lo_weight, hi_weight](const ActionProfile& last, int agent,
                                       int action) {
    if (action == 1) {
      const int ones = graph->CountNeighborsPlaying(agent, last, 1);
      return UtilityInterval{ones * lo_weight, ones * hi_weight};
    }
    const double zeros = graph->CountNeighborsPlaying(agent, last, 0);
    return UtilityInterval{zeros, zeros};
  };
}

namespace {

struct ReplicaOccupancy {
  double occupancy = 0.0;
  std::optional<double> post_entry;
};

struct MeanAndError {
  double mean = 0.0;
  double std_error = 0.0;
};

MeanAndError Summarize(const std::vector<double>& values) {
  MeanAndError out;
  if (values.empty()) return out;
  for (double v : values) out.mean += v;
  out.mean /= values.size();
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std_error = std::sqrt(ss / (values.size() - 1) / values.size());
  }
  return out;
}

}  // namespace

SsResult SsExperiment(const SisgcgConfig& config, std::span<const double> taus,
                      const SsOptions& options) {
  config.Validate();
  if (options.reps < 1) throw ParameterError("reps must be >= 1");
  if (options.horizon < 1) throw ParameterError("horizon must be >= 1");
  if (options.burn_in < 0) throw ParameterError("burn_in must be >= 0");
  SsResult result;
  const ReferenceGcg ref = MakeReferenceGcg(config);
  result.warnings = ref.warnings;
  const int n = config.num_players();
  const ActionProfile ones = ActionProfile::Ones(n);
  const double bound = config.gamma / config.beta1 + 1e-9;

  for (std::size_t k = 0; k < taus.size(); ++k) {
    const Temperature tau(taus[k]);
    const Distribution gibbs = GibbsDistribution(ref.game, tau);
    Distribution initial = Distribution::Uniform(n);
    switch (options.initial) {
      case InitialLaw::kGibbsReference:
        initial = gibbs;
        break;
      case InitialLaw::kUniform:
        break;
      case InitialLaw::kFixed:
        initial = InitialProfileLaw(config);
        break;
    }
    const std::uint64_t tau_seed = DeriveSeed(options.seed, "ss", k);
    const auto reps = ParallelMap<ReplicaOccupancy>(
        options.reps, options.jobs, [&](std::int64_t r) {
          Rng rng(DeriveSeed(tau_seed, "rep", static_cast<std::uint64_t>(r)));
          SisgcgChain chain(config, tau);
          chain.Start(initial, rng);
          bool entered = chain.s() <= bound;
          std::int64_t hits = 0;
          std::int64_t post_hits = 0;
          std::int64_t post_steps = 0;
          const int total = options.burn_in + options.horizon;
          for (int step = 1; step <= total; ++step) {
            chain.Advance(rng);
            if (!entered && chain.s() <= bound) entered = true;
            if (step > options.burn_in) {
              const bool at_ones = chain.profile() == ones;
              hits += at_ones;
              if (entered) {
                ++post_steps;
                post_hits += at_ones;
              }
            }
          }
          ReplicaOccupancy out;
          out.occupancy = static_cast<double>(hits) / options.horizon;
          if (post_steps > 0) {
            out.post_entry = static_cast<double>(post_hits) / post_steps;
          }
          return out;
        });
    std::vector<double> all;
    std::vector<double> post;
    for (const auto& r : reps) {
      all.push_back(r.occupancy);
      if (r.post_entry) post.push_back(*r.post_entry);
    }
    const MeanAndError a = Summarize(all);
    const MeanAndError p = Summarize(post);
    SsRow row;
    row.tau = tau.value();
    row.occupancy = a.mean;
    row.occupancy_std_error = a.std_error;
    row.post_entry_occupancy = p.mean;
    row.post_entry_std_error = p.std_error;
    row.entered_reps = static_cast<int>(post.size());
    row.gibbs_anchor = gibbs(ones);
    row.seed = tau_seed;
    if (row.entered_reps < options.reps) {
      result.warnings.push_back(
          "tau=" + std::to_string(row.tau) + ": " +
          std::to_string(options.reps - row.entered_reps) +
          " replicas never reached s <= gamma/beta1");
    }
    result.rows.push_back(row);
  }
  return result;
}

}  // namespace loglin
