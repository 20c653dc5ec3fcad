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

#include "loglin/coupling.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "loglin/errors.h"
#include "loglin/rng.h"

namespace loglin {

namespace {

void RequireOrdered(const ActionProfile& lower, const ActionProfile& upper) {
  if (!ProfileLeq(lower, upper)) {
    throw OrderViolation(lower.ToBitString() + " is not below " +
                         upper.ToBitString());
  }
}

int Deviator(const ActionProfile& from, const ActionProfile& to) {
  const std::optional<int> agent = UnilateralDeviator(from, to);
  if (!agent) throw DomainError("profiles are identical");
  return *agent;
}

std::string_view CaseName(CouplingCase c) {
  switch (c) {
    case CouplingCase::kStayRise:
      return "stay/rise";
    case CouplingCase::kStayDropWithin:
      return "stay/drop-within";
    case CouplingCase::kDropStay:
      return "drop/stay";
    case CouplingCase::kRiseWithinStay:
      return "rise-within/stay";
    case CouplingCase::kRisePastRise:
      return "rise-past/rise";
    case CouplingCase::kDropDrop:
      return "drop/drop";
    case CouplingCase::kStayStay:
      return "stay/stay";
  }
  return "?";
}

std::set<ActionProfile> AsSet(const std::vector<ActionProfile>& v) {
  return {v.begin(), v.end()};
}

bool IsPartition(const std::vector<ActionProfile>& whole,
                 std::initializer_list<const std::vector<ActionProfile>*> parts) {
  std::set<ActionProfile> seen;
  std::size_t count = 0;
  for (const auto* part : parts) {
    for (const auto& z : *part) {
      seen.insert(z);
      ++count;
    }
  }
  return count == seen.size() && seen == AsSet(whole);
}

// Checks that MatchDeviation maps `source` one-to-one onto `target`.
bool IsBijectionOnto(const ActionProfile& lower, const ActionProfile& upper,
                     const std::vector<ActionProfile>& source,
                     const std::vector<ActionProfile>& target,
                     std::string& detail, std::string_view label) {
  std::set<ActionProfile> image;
  const std::set<ActionProfile> target_set = AsSet(target);
  for (const ActionProfile& z : source) {
    const ActionProfile w = MatchDeviation(lower, upper, z);
    if (!target_set.contains(w)) {
      if (detail.empty()) {
        detail = std::string(label) + ": image " + w.ToBitString() +
                 " of " + z.ToBitString() + " lies outside the target";
      }
      return false;
    }
    if (!image.insert(w).second) {
      if (detail.empty()) {
        detail = std::string(label) + ": not injective at " + z.ToBitString();
      }
      return false;
    }
  }
  if (image.size() != target_set.size()) {
    if (detail.empty()) detail = std::string(label) + ": not onto";
    return false;
  }
  return true;
}

// Incremental view of the history chain's choice probabilities along a path.
class UpperChain {
 public:
  UpperChain(const HistoryGame& g, Temperature tau) : g_(g), tau_(tau) {}

  void Reset(const ActionProfile& first) {
    profiles_.assign(1, first);
    if (g_.has_statistic()) {
      state_ = g_.statistic().advance(g_.statistic().initial, first);
    }
  }
  void Push(const ActionProfile& next) {
    profiles_.push_back(next);
    if (g_.has_statistic()) state_ = g_.statistic().advance(state_, next);
  }
  std::vector<double> ChoiceProbs() const {
    if (g_.has_statistic()) {
      return ChoiceProbabilitiesFromStatistic(g_, state_, profiles_.back(),
                                              tau_);
    }
    return ChoiceProbabilities(g_, Path(profiles_), tau_);
  }

 private:
  const HistoryGame& g_;
  Temperature tau_;
  std::vector<ActionProfile> profiles_;
  double state_ = 0.0;
};

}  // namespace

DeviationPartition PartitionDeviations(const ActionProfile& lower,
                                       const ActionProfile& upper) {
  RequireOrdered(lower, upper);
  DeviationPartition p{lower, upper, {}, {}, {}, {}, {}, {}};
  for (const ActionProfile& z : OneStepNeighbors(lower)) {
    if (lower[Deviator(lower, z)] == 1) {
      p.drops.push_back(z);
    } else if (ProfileLeq(z, upper)) {
      p.rises_within.push_back(z);
    } else {
      p.rises_past.push_back(z);
    }
  }
  for (const ActionProfile& z : OneStepNeighbors(upper)) {
    if (upper[Deviator(upper, z)] == 0) {
      p.rises.push_back(z);
    } else if (ProfileLeq(lower, z)) {
      p.drops_within.push_back(z);
    } else {
      p.drops_past.push_back(z);
    }
  }
  return p;
}

ActionProfile MatchDeviation(const ActionProfile& lower,
                             const ActionProfile& upper,
                             const ActionProfile& neighbor) {
  if (lower.size() != upper.size() || lower.size() != neighbor.size()) {
    throw DimensionError("profile sizes differ");
  }
  std::optional<int> agent;
  try {
    agent = UnilateralDeviator(lower, neighbor);
  } catch (const NotUnilateralError&) {
    agent.reset();
  }
  if (!agent) {
    throw DomainError(neighbor.ToBitString() + " is not a one-step neighbor of " +
                      lower.ToBitString());
  }
  return upper.Flipped(*agent);
}

BijectionCheck VerifyBijection(const ActionProfile& lower,
                               const ActionProfile& upper) {
  const DeviationPartition p = PartitionDeviations(lower, upper);
  BijectionCheck check;
  check.partitions_ok =
      IsPartition(OneStepNeighbors(lower),
                  {&p.drops, &p.rises_within, &p.rises_past}) &&
      IsPartition(OneStepNeighbors(upper),
                  {&p.rises, &p.drops_within, &p.drops_past});
  if (!check.partitions_ok) check.detail = "deviation sets do not partition";
  check.drops_to_drops_past =
      IsBijectionOnto(lower, upper, p.drops, p.drops_past, check.detail,
                      "drops -> drops_past");
  check.rises_past_to_rises = IsBijectionOnto(
      lower, upper, p.rises_past, p.rises, check.detail, "rises_past -> rises");
  check.rises_within_to_drops_within =
      IsBijectionOnto(lower, upper, p.rises_within, p.drops_within,
                      check.detail, "rises_within -> drops_within");
  check.ok = check.partitions_ok && check.drops_to_drops_past &&
             check.rises_past_to_rises && check.rises_within_to_drops_within;
  return check;
}

OneStepCoupling::OneStepCoupling(ActionProfile lower_base,
                                 ActionProfile upper_base,
                                 std::vector<CouplingEntry> entries)
    : lower_base_(lower_base),
      upper_base_(upper_base),
      entries_(std::move(entries)) {}

double OneStepCoupling::Mass(const ActionProfile& lower,
                             const ActionProfile& upper) const {
  double total = 0.0;
  for (const auto& e : entries_) {
    if (e.lower == lower && e.upper == upper) total += e.mass;
  }
  return total;
}

double OneStepCoupling::Total() const {
  double total = 0.0;
  for (const auto& e : entries_) total += e.mass;
  return total;
}

OneStepCoupling BuildOneStepCoupling(const ActionProfile& lower_base,
                                     const ActionProfile& upper_base,
                                     std::span<const double> lower_p1,
                                     std::span<const double> upper_p1) {
  RequireOrdered(lower_base, upper_base);
  const int n = lower_base.size();
  if (static_cast<int>(lower_p1.size()) != n ||
      static_cast<int>(upper_p1.size()) != n) {
    throw DimensionError("need one choice probability per agent on each side");
  }
  const DeviationPartition p = PartitionDeviations(lower_base, upper_base);
  const double nn = static_cast<double>(n);
  // P_i(x) for the lower (static) and upper (history) chains.
  auto lower_prob = [&](int i, int x) {
    return x == 1 ? lower_p1[i] : 1.0 - lower_p1[i];
  };
  auto upper_prob = [&](int i, int x) {
    return x == 1 ? upper_p1[i] : 1.0 - upper_p1[i];
  };

  std::vector<CouplingEntry> entries;
  entries.reserve(3 * n + 1);
  auto add = [&](const ActionProfile& z, const ActionProfile& zp, double mass,
                 CouplingCase source, int agent) {
    if (mass < -kNegativeDust) {
      throw AlignmentViolationError(
          "coupling case " + std::string(CaseName(source)) + " at agent " +
          std::to_string(agent + 1) + " has mass " + std::to_string(mass) +
          " for (" + z.ToBitString() + ", " + zp.ToBitString() +
          "): the game pair is not aligned here");
    }
    entries.push_back({z, zp, std::max(mass, 0.0), source, agent});
  };

  for (const ActionProfile& zp : p.rises) {
    const int i = Deviator(upper_base, zp);
    add(lower_base, zp, (upper_prob(i, 1) - lower_prob(i, 1)) / nn,
        CouplingCase::kStayRise, i);
  }
  for (const ActionProfile& zp : p.drops_within) {
    const int i = Deviator(upper_base, zp);
    add(lower_base, zp, upper_prob(i, zp[i]) / nn,
        CouplingCase::kStayDropWithin, i);
  }
  for (const ActionProfile& z : p.drops) {
    const int i = Deviator(lower_base, z);
    add(z, upper_base, (lower_prob(i, 0) - upper_prob(i, 0)) / nn,
        CouplingCase::kDropStay, i);
  }
  for (const ActionProfile& z : p.rises_within) {
    const int i = Deviator(lower_base, z);
    add(z, upper_base, lower_prob(i, z[i]) / nn, CouplingCase::kRiseWithinStay,
        i);
  }
  for (const ActionProfile& zp : p.rises) {
    const int i = Deviator(upper_base, zp);
    const ActionProfile z = lower_base.Flipped(i);
    if (MatchDeviation(lower_base, upper_base, z) != zp) {
      throw InternalConsistencyError("deviation matching is not invertible");
    }
    add(z, zp, lower_prob(i, 1) / nn, CouplingCase::kRisePastRise, i);
  }
  for (const ActionProfile& z : p.drops) {
    const int i = Deviator(lower_base, z);
    add(z, MatchDeviation(lower_base, upper_base, z), upper_prob(i, 0) / nn,
        CouplingCase::kDropDrop, i);
  }

  // Corner, as the remainder: (N - sum over q u r - sum over Q u R) / N.
  double remainder = nn;
  for (const auto* set : {&p.rises_within, &p.drops}) {
    for (const ActionProfile& z : *set) {
      const int i = Deviator(lower_base, z);
      remainder -= lower_prob(i, z[i]);
    }
  }
  for (const auto* set : {&p.drops_within, &p.rises}) {
    for (const ActionProfile& zp : *set) {
      const int i = Deviator(upper_base, zp);
      remainder -= upper_prob(i, zp[i]);
    }
  }
  const double corner = remainder / nn;

  // Same mass expanded over the agents moving each chain's neighbors.
  std::set<int> lower_agents;  // N_q u N_r
  std::set<int> upper_agents;  // N_Q u N_R
  for (const auto* set : {&p.rises_within, &p.drops}) {
    for (const ActionProfile& z : *set) lower_agents.insert(Deviator(lower_base, z));
  }
  for (const auto* set : {&p.drops_within, &p.rises}) {
    for (const ActionProfile& zp : *set) {
      upper_agents.insert(Deviator(upper_base, zp));
    }
  }
  double expanded = 0.0;
  for (int i = 0; i < n; ++i) {
    const bool in_lower = lower_agents.contains(i);
    const bool in_upper = upper_agents.contains(i);
    const double lower_flip = lower_prob(i, 1 - lower_base[i]);
    const double upper_flip = upper_prob(i, 1 - upper_base[i]);
    if (in_lower && in_upper) {
      expanded += 1.0 - lower_flip - upper_flip;
    } else if (in_lower) {
      expanded += 1.0 - lower_flip;
    } else if (in_upper) {
      expanded += 1.0 - upper_flip;
    }
  }
  expanded /= nn;
  if (std::abs(expanded - corner) > 1e-12) {
    throw InternalConsistencyError(
        "corner mass " + std::to_string(corner) +
        " disagrees with its per-agent expansion " + std::to_string(expanded));
  }
  add(lower_base, upper_base, corner, CouplingCase::kStayStay, -1);
  return OneStepCoupling(lower_base, upper_base, std::move(entries));
}

OneStepCoupling BuildOneStepCoupling(const HistoryGame& g,
                                     const PotentialGame& g_hat,
                                     const Path& alpha, const ActionProfile& a,
                                     Temperature tau) {
  if (g.num_players() != g_hat.num_players() ||
      alpha.num_players() != g.num_players() || a.size() != g.num_players()) {
    throw DimensionError("game pair, path and profile must share N");
  }
  RequireOrdered(a, alpha.back());
  const std::vector<double> lower = ChoiceProbabilities(g_hat, a, tau);
  const std::vector<double> upper = ChoiceProbabilities(g, alpha, tau);
  return BuildOneStepCoupling(a, alpha.back(), lower, upper);
}

OneStepReport VerifyOneStep(const OneStepCoupling& coupling,
                            const KernelRow& lower_row,
                            const KernelRow& upper_row, double tolerance) {
  if (coupling.lower_base() != lower_row.current() ||
      coupling.upper_base() != upper_row.current()) {
    throw ParameterError("coupling bases do not match the kernel rows");
  }
  OneStepReport report;
  auto fail = [&](bool& flag, std::string detail) {
    flag = false;
    report.ok = false;
    if (report.detail.empty()) report.detail = std::move(detail);
  };

  for (const auto& e : coupling.entries()) {
    if (!(e.mass >= 0.0 && e.mass <= 1.0)) {
      fail(report.well_defined, "entry (" + e.lower.ToBitString() + ", " +
                                    e.upper.ToBitString() + ") outside [0,1]");
    }
    if (e.mass > 0.0 && !ProfileLeq(e.lower, e.upper)) {
      fail(report.monotone_support,
           "positive mass on unordered pair (" + e.lower.ToBitString() + ", " +
               e.upper.ToBitString() + ")");
    }
  }
  report.total_mass = coupling.Total();
  if (std::abs(report.total_mass - 1.0) > tolerance) {
    fail(report.well_defined,
         "total mass " + std::to_string(report.total_mass) + " is not 1");
  }

  std::set<ActionProfile> lowers;
  std::set<ActionProfile> uppers;
  for (const auto& [z, m] : lower_row.Entries()) lowers.insert(z);
  for (const auto& [z, m] : upper_row.Entries()) uppers.insert(z);
  for (const auto& e : coupling.entries()) {
    lowers.insert(e.lower);
    uppers.insert(e.upper);
  }
  for (const ActionProfile& z : lowers) {
    double sum = 0.0;
    for (const auto& e : coupling.entries()) {
      if (e.lower == z && ProfileLeq(z, e.upper)) sum += e.mass;
    }
    const double residual = std::abs(sum - lower_row(z));
    report.max_lower_residual = std::max(report.max_lower_residual, residual);
    if (residual > tolerance) {
      fail(report.lower_marginal,
           "lower marginal mismatch at " + z.ToBitString());
    }
  }
  for (const ActionProfile& zp : uppers) {
    double sum = 0.0;
    for (const auto& e : coupling.entries()) {
      if (e.upper == zp && ProfileLeq(e.lower, zp)) sum += e.mass;
    }
    const double residual = std::abs(sum - upper_row(zp));
    report.max_upper_residual = std::max(report.max_upper_residual, residual);
    if (residual > tolerance) {
      fail(report.upper_marginal,
           "upper marginal mismatch at " + zp.ToBitString());
    }
  }
  return report;
}

OneStepReport VerifyOneStep(const OneStepCoupling& coupling,
                            const HistoryGame& g, const PotentialGame& g_hat,
                            const Path& alpha, const ActionProfile& a,
                            Temperature tau, double tolerance) {
  return VerifyOneStep(coupling, StepKernel(g_hat, a, tau),
                       StepKernel(g, alpha, tau), tolerance);
}

MonotonicityResult VerifyUpdateMonotonicity(const HistoryGame& g,
                                            const PotentialGame& g_hat,
                                            const Path& alpha,
                                            const ActionProfile& a, int agent,
                                            Temperature tau, double tolerance) {
  if (!ProfileLeqExcept(a, alpha.back(), agent)) {
    throw OrderViolation("alpha^T_{-i} is not above a_{-i}");
  }
  const double upper_one = g.Utility(alpha, agent, 1);
  const double upper_zero = g.Utility(alpha, agent, 0);
  const double lower_one = g_hat.Utility(agent, 1, a);
  const double lower_zero = g_hat.Utility(agent, 0, a);
  MonotonicityResult result;
  result.upper_p1 = LogisticChoice(upper_one - upper_zero, tau.value());
  result.lower_p1 = LogisticChoice(lower_one - lower_zero, tau.value());
  const bool hypothesis = upper_one >= lower_one - tolerance &&
                          lower_zero >= upper_zero - tolerance;
  const bool conclusion = result.upper_p1 >= result.lower_p1 - 1e-12;
  const bool forward = result.upper_p1 >= result.lower_p1;
  const bool backward = (1.0 - result.lower_p1) >= (1.0 - result.upper_p1);
  result.complementarity = forward == backward;
  if (!hypothesis) {
    result.outcome = MonotonicityOutcome::kHypothesisNotMet;
  } else {
    result.outcome =
        conclusion ? MonotonicityOutcome::kHolds : MonotonicityOutcome::kConclusionFailed;
  }
  return result;
}

double PathCouplingProb(const HistoryGame& g, const PotentialGame& g_hat,
                        const Distribution& initial, const Path& lower,
                        const Path& upper, Temperature tau) {
  if (lower.length() != upper.length() ||
      lower.num_players() != upper.num_players() ||
      lower.num_players() != g.num_players() ||
      g_hat.num_players() != g.num_players()) {
    throw DimensionError("path coupling needs paths of equal shape");
  }
  if (lower[0] != upper[0]) return 0.0;
  double prob = initial(lower[0]);
  if (prob == 0.0) return 0.0;
  UpperChain chain(g, tau);
  chain.Reset(upper[0]);
  for (int t = 0; t + 1 < lower.length(); ++t) {
    if (!ProfileLeq(lower[t], upper[t])) return 0.0;
    const std::vector<double> lower_p1 =
        ChoiceProbabilities(g_hat, lower[t], tau);
    const std::vector<double> upper_p1 = chain.ChoiceProbs();
    const OneStepCoupling nu =
        BuildOneStepCoupling(lower[t], upper[t], lower_p1, upper_p1);
    prob *= nu.Mass(lower[t + 1], upper[t + 1]);
    if (prob == 0.0) return 0.0;
    chain.Push(upper[t + 1]);
  }
  return prob;
}

PathCouplingReport VerifyPathCoupling(const HistoryGame& g,
                                      const PotentialGame& g_hat,
                                      const Distribution& initial, int length,
                                      Temperature tau, double tolerance,
                                      std::uint64_t max_pairs) {
  const int n = g.num_players();
  std::uint64_t per_path = 1;
  for (int t = 0; t < length; ++t) {
    if (per_path > (std::uint64_t{1} << 31) / ProfileCount(n)) {
      throw BoundError("path coupling: |A|^T too large");
    }
    per_path *= ProfileCount(n);
  }
  if (per_path > max_pairs / per_path) {
    throw BoundError("path coupling: |A|^(2T) = " +
                     std::to_string(per_path) + "^2 exceeds cap " +
                     std::to_string(max_pairs));
  }
  PathCouplingReport report;
  PathCouplingTable& table = report.table;
  table.paths = EnumeratePaths(n, length, per_path);
  const std::size_t m = table.paths.size();
  table.lower_measure.resize(m);
  table.upper_measure.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    table.lower_measure[k] = PathProb(g_hat, initial, table.paths[k], tau);
    table.upper_measure[k] = PathProb(g, initial, table.paths[k], tau);
  }

  std::vector<double> lower_sum(m, 0.0);
  std::vector<double> upper_sum(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const Path& lower = table.paths[i];
    for (std::size_t j = 0; j < m; ++j) {
      ++report.pairs;
      const Path& upper = table.paths[j];
      if (lower[0] != upper[0]) continue;
      const double mass = PathCouplingProb(g, g_hat, initial, lower, upper, tau);
      if (mass == 0.0) continue;
      table.masses.push_back({static_cast<std::uint32_t>(i),
                              static_cast<std::uint32_t>(j), mass});
      report.total_mass += mass;
      if (!PathLeq(lower, upper)) {
        report.monotone_support = false;
        if (report.detail.empty()) {
          report.detail = "positive mass on unordered pair " +
                          lower.ToString() + " / " + upper.ToString();
        }
        continue;
      }
      lower_sum[i] += mass;
      upper_sum[j] += mass;
    }
  }
  for (std::size_t k = 0; k < m; ++k) {
    report.max_lower_residual = std::max(
        report.max_lower_residual, std::abs(lower_sum[k] - table.lower_measure[k]));
    report.max_upper_residual = std::max(
        report.max_upper_residual, std::abs(upper_sum[k] - table.upper_measure[k]));
  }
  const bool marginals = report.max_lower_residual <= tolerance &&
                         report.max_upper_residual <= tolerance;
  const bool total = std::abs(report.total_mass - 1.0) <= tolerance;
  if (!marginals && report.detail.empty()) report.detail = "marginal mismatch";
  if (!total && report.detail.empty()) report.detail = "total mass is not 1";
  report.ok = marginals && total && report.monotone_support;
  return report;
}

ExpectationGapResult ExpectationGap(const PathStatistic& z,
                                    const PathCouplingTable& table,
                                    std::uint64_t check_pairs,
                                    std::uint64_t seed) {
  const std::size_t m = table.paths.size();
  std::vector<std::int64_t> values(m);
  std::int64_t top = 0;
  for (std::size_t k = 0; k < m; ++k) {
    values[k] = z(table.paths[k]);
    if (values[k] < 0) {
      throw ContractError("Z must be a nonnegative integer");
    }
    top = std::max(top, values[k]);
  }
  auto check_pair = [&](std::size_t i, std::size_t j) {
    if (values[i] > values[j] && PathLeq(table.paths[i], table.paths[j])) {
      throw ContractError("Z is not increasing: " + table.paths[i].ToString() +
                          " <= " + table.paths[j].ToString());
    }
  };
  if (static_cast<std::uint64_t>(m) * m <= check_pairs) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) check_pair(i, j);
    }
  } else {
    Rng rng(seed);
    for (std::uint64_t s = 0; s < check_pairs; ++s) {
      check_pair(rng.UniformIndex(static_cast<int>(m)),
                 rng.UniformIndex(static_cast<int>(m)));
    }
  }

  ExpectationGapResult result;
  double e_lower = 0.0;
  double e_upper = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    e_lower += table.lower_measure[k] * static_cast<double>(values[k]);
    e_upper += table.upper_measure[k] * static_cast<double>(values[k]);
  }
  result.expectation_difference = e_upper - e_lower;
  for (std::int64_t eta = 0; eta < top; ++eta) {
    for (const PairMass& pm : table.masses) {
      if (values[pm.lower] <= eta && values[pm.upper] > eta) {
        result.coupling_sum += pm.mass;
      }
    }
  }
  result.difference = result.expectation_difference - result.coupling_sum;
  return result;
}

DominanceReport DominanceCheck(const HistoryGame& g, const PotentialGame& g_hat,
                               const Distribution& initial, Temperature tau,
                               int max_length,
                               const DominanceOptions& options) {
  if (g.num_players() != g_hat.num_players()) {
    throw DimensionError("game pair has different player counts");
  }
  const int n = g.num_players();
  DominanceReport report;
  report.mode = options.prob.mode;
  const std::vector<Estimate> upper =
      ProbAllOnesCurve(g, initial, tau, max_length, options.prob);
  ProbOptions exact;
  exact.mode = ProbMode::kExactLifted;
  const std::vector<Estimate> lower =
      ProbAllOnesCurve(g_hat, initial, tau, max_length, exact);
  const bool monte_carlo = options.prob.mode == ProbMode::kMonteCarlo;

  for (int t = 0; t < max_length; ++t) {
    DominanceRow row;
    row.length = t + 1;
    row.p_g = upper[t].value;
    row.p_g_std_error = upper[t].std_error;
    row.p_ghat = lower[t].value;
    row.gap = row.p_g - row.p_ghat;
    const double slack =
        options.tolerance + (monte_carlo ? 4.0 * row.p_g_std_error : 0.0);
    if (row.gap < -slack) {
      report.ok = false;
      if (!report.violation_length) {
        report.violation_length = row.length;
        report.detail = "dominance violated at T=" + std::to_string(row.length);
      }
    }
    report.rows.push_back(row);
  }
  if (monte_carlo) return report;

  const HistoryGame embedded = EmbedAsHistoryGame(g_hat);
  Rng rng(DeriveSeed(options.seed, "upper_sets", 0));
  const std::uint64_t count = ProfileCount(n);
  auto check_set = [&](const Path& generator, std::optional<double> direct) {
    UpperSetCheck c{generator, ProbUpperSet(g, initial, tau, generator),
                    ProbUpperSet(embedded, initial, tau, generator), true};
    c.ok = c.p_g >= c.p_ghat - options.tolerance;
    if (direct && std::abs(*direct - c.p_g) > options.tolerance) {
      c.ok = false;
      if (report.detail.empty()) {
        report.detail = "upper-set mass disagrees with Pr(s(T)=1) at T=" +
                        std::to_string(generator.length());
      }
    }
    if (!c.ok) {
      report.ok = false;
      if (report.detail.empty()) {
        report.detail = "upper set " + generator.ToString() + " violated";
      }
    }
    report.upper_sets.push_back(std::move(c));
  };
  for (int t = 1; t <= max_length; ++t) {
    std::vector<ActionProfile> gen(t, ActionProfile::Zeros(n));
    gen.back() = ActionProfile::Ones(n);
    check_set(Path(gen), upper[t - 1].value);
    for (int k = 0; k < options.random_upper_sets; ++k) {
      std::vector<ActionProfile> random_gen;
      for (int s = 0; s < t; ++s) {
        std::uint64_t bits = 0;
        for (int i = 0; i < n; ++i) {
          bits = (bits << 1) | (rng.Uniform() < 0.25 ? 1u : 0u);
        }
        random_gen.emplace_back(n, bits % count);
      }
      check_set(Path(random_gen), std::nullopt);
    }
  }
  return report;
}

}  // namespace loglin
