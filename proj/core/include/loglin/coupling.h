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

#ifndef LOGLIN_COUPLING_H_
#define LOGLIN_COUPLING_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loglin/dynamics.h"
#include "loglin/games.h"
#include "loglin/profile.h"

namespace loglin {

// Entries in [-kNegativeDust, 0) are rounding noise and clamp to zero; below
// that the game pair is not aligned at the profiles involved.
inline constexpr double kNegativeDust = 1e-12;

// Classification of the one-step neighbors of an ordered pair a <= a'.
//
// Lower side, subsets of f(a):
//   drops         r(a):     an agent playing 1 in a switches to 0;
//   rises_within  q(a,a'):  an agent switches to 1 and the result stays <= a';
//   rises_past    s(a,a'):  the remaining switches to 1.
// Upper side, subsets of f(a'):
//   rises         R(a'):    an agent playing 0 in a' switches to 1;
//   drops_within  Q(a,a'):  an agent switches to 0 and the result stays >= a;
//   drops_past    S(a,a'):  the remaining switches to 0.
struct DeviationPartition {
  ActionProfile lower;
  ActionProfile upper;
  std::vector<ActionProfile> drops;
  std::vector<ActionProfile> rises_within;
  std::vector<ActionProfile> rises_past;
  std::vector<ActionProfile> rises;
  std::vector<ActionProfile> drops_within;
  std::vector<ActionProfile> drops_past;
};

// Throws OrderViolation unless lower <= upper.
DeviationPartition PartitionDeviations(const ActionProfile& lower,
                                       const ActionProfile& upper);

// The map b: f(lower) -> f(upper) that replays in `upper` the deviation
// taking `lower` to `neighbor`. Throws DomainError if neighbor is not in
// f(lower).
ActionProfile MatchDeviation(const ActionProfile& lower,
                             const ActionProfile& upper,
                             const ActionProfile& neighbor);

struct BijectionCheck {
  bool ok = true;
  bool partitions_ok = true;     // both sides are disjoint covers of f(.)
  bool drops_to_drops_past = true;      // r -> S
  bool rises_past_to_rises = true;      // s -> R
  bool rises_within_to_drops_within = true;  // q -> Q
  std::string detail;            // first failure, empty when ok
};

// Computes the three images of MatchDeviation directly and checks each is a
// bijection onto its target set.
BijectionCheck VerifyBijection(const ActionProfile& lower,
                               const ActionProfile& upper);

// Which of the eight coupling cases produced an entry. The name reads
// "<lower chain move>_<upper chain move>".
enum class CouplingCase : char {
  kStayRise = 'a',          // (a, z' in R)
  kStayDropWithin = 'b',    // (a, z' in Q)
  kDropStay = 'c',          // (z in r, a')
  kRiseWithinStay = 'd',    // (z in q, a')
  kRisePastRise = 'e',      // (b^{-1}(z'), z' in R)
  kDropDrop = 'f',          // (z in r, b(z))
  kStayStay = 'g',          // corner (a, a')
};

struct CouplingEntry {
  ActionProfile lower;
  ActionProfile upper;
  double mass = 0.0;
  CouplingCase source = CouplingCase::kStayStay;
  int agent = -1;  // deviating agent, -1 for the corner
};

// A joint law of the next profiles of the static chain (lower, started at a)
// and the history chain (upper, started at alpha^T).
class OneStepCoupling {
 public:
  OneStepCoupling(ActionProfile lower_base, ActionProfile upper_base,
                  std::vector<CouplingEntry> entries);

  const ActionProfile& lower_base() const { return lower_base_; }
  const ActionProfile& upper_base() const { return upper_base_; }
  const std::vector<CouplingEntry>& entries() const { return entries_; }
  std::vector<CouplingEntry>& mutable_entries() { return entries_; }

  double Mass(const ActionProfile& lower, const ActionProfile& upper) const;
  double Total() const;

 private:
  ActionProfile lower_base_;
  ActionProfile upper_base_;
  std::vector<CouplingEntry> entries_;
};

// Builds the coupling from per-agent choice probabilities: lower_p1[i] is
// P_hat_i^a(1) and upper_p1[i] is P_i^alpha(1). The corner mass is computed
// from the row/column remainder and cross-checked against its per-agent
// expansion (InternalConsistencyError beyond 1e-12). Throws
// AlignmentViolationError on an entry below -kNegativeDust and
// OrderViolation unless lower_base <= upper_base.
OneStepCoupling BuildOneStepCoupling(const ActionProfile& lower_base,
                                     const ActionProfile& upper_base,
                                     std::span<const double> lower_p1,
                                     std::span<const double> upper_p1);

OneStepCoupling BuildOneStepCoupling(const HistoryGame& g,
                                     const PotentialGame& g_hat,
                                     const Path& alpha, const ActionProfile& a,
                                     Temperature tau);

struct OneStepReport {
  bool ok = true;
  bool well_defined = true;       // entries in [0,1], total 1
  bool lower_marginal = true;     // sum_{z' >= z} nu(z, z') = P_hat^a(z)
  bool upper_marginal = true;     // sum_{z <= z'} nu(z, z') = P^alpha(z')
  bool monotone_support = true;   // positive mass only on z <= z'
  double total_mass = 0.0;
  double max_lower_residual = 0.0;
  double max_upper_residual = 0.0;
  std::string detail;             // first failure, empty when ok
};

OneStepReport VerifyOneStep(const OneStepCoupling& coupling,
                            const HistoryGame& g, const PotentialGame& g_hat,
                            const Path& alpha, const ActionProfile& a,
                            Temperature tau, double tolerance = 1e-12);

// Same, against explicit kernel rows.
OneStepReport VerifyOneStep(const OneStepCoupling& coupling,
                            const KernelRow& lower_row,
                            const KernelRow& upper_row,
                            double tolerance = 1e-12);

enum class MonotonicityOutcome { kHolds, kHypothesisNotMet, kConclusionFailed };

struct MonotonicityResult {
  MonotonicityOutcome outcome = MonotonicityOutcome::kHolds;
  bool complementarity = true;  // P(1) >= P_hat(1)  <=>  P_hat(0) >= P(0)
  double upper_p1 = 0.0;        // P_i^alpha(1)
  double lower_p1 = 0.0;        // P_hat_i^a(1)
  bool ok() const {
    return complementarity && outcome != MonotonicityOutcome::kConclusionFailed;
  }
};

// Checks that payoff dominance at agent i,
//   U_i^alpha(1, .) >= U_hat_i(1, a_{-i}) and U_hat_i(0, a_{-i}) >= U_i^alpha(0, .),
// implies P_i^alpha(1) >= P_hat_i^a(1) - 1e-12. Requires
// alpha^T_{-i} >= a_{-i} (OrderViolation otherwise).
MonotonicityResult VerifyUpdateMonotonicity(
    const HistoryGame& g, const PotentialGame& g_hat, const Path& alpha,
    const ActionProfile& a, int agent, Temperature tau,
    double tolerance = kUtilityTolerance);

// Product of one-step couplings along a pair of paths: `lower` is the
// static-game path, `upper` the history-game path. Zero when the starts
// differ or lower is not below upper.
double PathCouplingProb(const HistoryGame& g, const PotentialGame& g_hat,
                        const Distribution& initial, const Path& lower,
                        const Path& upper, Temperature tau);

struct PairMass {
  std::uint32_t lower = 0;  // index into paths
  std::uint32_t upper = 0;
  double mass = 0.0;
};

// A coupling over A_T materialized on all paths of one length.
struct PathCouplingTable {
  std::vector<Path> paths;
  std::vector<double> lower_measure;  // P_hat_pi, from PathProb
  std::vector<double> upper_measure;  // P_pi, from PathProb
  std::vector<PairMass> masses;       // positive entries only
};

struct PathCouplingReport {
  bool ok = true;
  bool monotone_support = true;
  double total_mass = 0.0;
  double max_lower_residual = 0.0;
  double max_upper_residual = 0.0;
  std::uint64_t pairs = 0;
  std::string detail;
  PathCouplingTable table;
};

// Evaluates PathCouplingProb on every pair in A_T x A_T and checks both
// marginal identities, total mass and ordered support. Throws BoundError
// when |A|^(2T) exceeds max_pairs.
PathCouplingReport VerifyPathCoupling(const HistoryGame& g,
                                      const PotentialGame& g_hat,
                                      const Distribution& initial, int length,
                                      Temperature tau,
                                      double tolerance = kPathMeasureTolerance,
                                      std::uint64_t max_pairs = 1ULL << 24);

using PathStatistic = std::function<std::int64_t(const Path&)>;

struct ExpectationGapResult {
  double expectation_difference = 0.0;  // E_upper(Z) - E_lower(Z)
  double coupling_sum = 0.0;            // sum_eta nu(Z^c_eta, Z_eta)
  double difference = 0.0;              // the two sides' gap
};

// Both sides of the identity for a nonnegative integer Z that is increasing
// in the path order. Monotonicity is checked on every comparable pair when
// paths^2 <= check_pairs and on `check_pairs` random pairs otherwise;
// ContractError when it fails.
ExpectationGapResult ExpectationGap(const PathStatistic& z,
                                    const PathCouplingTable& table,
                                    std::uint64_t check_pairs = 1ULL << 20,
                                    std::uint64_t seed = 0);

struct DominanceRow {
  int length = 0;
  double p_g = 0.0;
  double p_g_std_error = 0.0;
  double p_ghat = 0.0;
  double gap = 0.0;
};

struct UpperSetCheck {
  Path generator;
  double p_g = 0.0;
  double p_ghat = 0.0;
  bool ok = true;
};

struct DominanceOptions {
  ProbOptions prob;          // mode for the history-game side
  int random_upper_sets = 4;  // principal upper sets per T (exact modes)
  std::uint64_t seed = 0;
  double tolerance = kPathMeasureTolerance;
};

struct DominanceReport {
  bool ok = true;
  ProbMode mode = ProbMode::kExactLifted;
  std::vector<DominanceRow> rows;
  std::vector<UpperSetCheck> upper_sets;
  std::optional<int> violation_length;  // first T with a negative gap
  std::string detail;
};

// Pr(s(T)=1) under g and g_hat for T = 1..max_length. The g_hat side is
// always exact (Markov iteration). In exact modes also checks the upper set
// generated by ((0)^(T-1), 1) against the direct probability and random
// principal upper sets; in monte-carlo mode a gap counts as a violation only
// below -(tolerance + 4 std errors).
DominanceReport DominanceCheck(const HistoryGame& g, const PotentialGame& g_hat,
                               const Distribution& initial, Temperature tau,
                               int max_length, const DominanceOptions& options);

}  // namespace loglin

#endif  // LOGLIN_COUPLING_H_
