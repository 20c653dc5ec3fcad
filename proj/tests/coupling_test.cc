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

#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.h"
#include "loglin/epidemic.h"
#include "loglin/errors.h"
#include "loglin/graph.h"

namespace loglin {
namespace {

ActionProfile P(const char* bits) { return ActionProfile::FromBitString(bits); }

PotentialGame Constant(int n, double u0, double u1) {
  return PotentialGame(
      n, [u0, u1](int i, const ActionProfile& a) { return a[i] ? u1 : u0; },
      [u0, u1](const ActionProfile& a) {
        return a.CountOnes() * (u1 - u0);
      });
}

TEST_CASE("deviation partition on a small pair") {
  const DeviationPartition p = PartitionDeviations(P("100"), P("110"));
  CHECK(p.drops == std::vector{P("000")});
  CHECK(p.rises_within == std::vector{P("110")});
  CHECK(p.rises_past == std::vector{P("101")});
  CHECK(p.rises == std::vector{P("111")});
  CHECK(p.drops_within == std::vector{P("100")});
  CHECK(p.drops_past == std::vector{P("010")});
  CHECK_THROWS_AS(PartitionDeviations(P("10"), P("01")), OrderViolation);
}

TEST_CASE("deviation matching examples") {
  CHECK(MatchDeviation(P("10"), P("11"), P("00")) == P("01"));
  CHECK(MatchDeviation(P("10"), P("11"), P("11")) == P("10"));
  CHECK_THROWS_AS(MatchDeviation(P("10"), P("11"), P("01")), DomainError);
  CHECK_THROWS_AS(MatchDeviation(P("10"), P("11"), P("10")), DomainError);
}

TEST_CASE("deviation matching is a bijection for every ordered pair") {
  for (int n = 1; n <= 5; ++n) {
    for (std::uint64_t hi = 0; hi < ProfileCount(n); ++hi) {
      for (std::uint64_t lo = 0; lo < ProfileCount(n); ++lo) {
        if ((lo & ~hi) != 0) continue;
        const BijectionCheck c = VerifyBijection(ActionProfile(n, lo),
                                                 ActionProfile(n, hi));
        CHECK_MESSAGE(c.ok, c.detail);
      }
    }
  }
  const ActionProfile ones = ActionProfile::Ones(3);
  for (const auto& z : PartitionDeviations(ones, ones).drops) {
    CHECK(MatchDeviation(ones, ones, z) == z);
  }
}

TEST_CASE("one-step coupling on the epidemic pair") {
  std::mt19937_64 rng(17);
  for (const Graph& graph : {Graph::Complete(3), Graph::Line(3)}) {
    const SisgcgConfig c = fixture::Sis(graph, 0.45);
    const HistoryGame g = SisgcgHistoryGame(c);
    const PotentialGame g_hat = MakeReferenceGcg(c).game;
    for (int k = 0; k < 200; ++k) {
      const Path alpha = fixture::RandomPath(3, 1 + k % 6, rng);
      const ActionProfile a = fixture::RandomBelow(alpha.back(), rng);
      for (double tau : {0.1, 1.0, 10.0}) {
        const OneStepCoupling nu =
            BuildOneStepCoupling(g, g_hat, alpha, a, Temperature(tau));
        const OneStepReport r =
            VerifyOneStep(nu, g, g_hat, alpha, a, Temperature(tau));
        CHECK_MESSAGE(r.ok, r.detail);
      }
    }
  }
}

TEST_CASE("corrupted corner is detected") {
  const SisgcgConfig c = fixture::Sis(Graph::Complete(3), 0.45);
  const HistoryGame g = SisgcgHistoryGame(c);
  const PotentialGame g_hat = MakeReferenceGcg(c).game;
  const Path alpha({P("011"), P("111")});
  const ActionProfile a = P("010");
  OneStepCoupling nu = BuildOneStepCoupling(g, g_hat, alpha, a, Temperature(1.0));
  for (auto& e : nu.mutable_entries()) {
    if (e.source == CouplingCase::kStayStay) e.mass += 1e-3;
  }
  const OneStepReport r = VerifyOneStep(nu, g, g_hat, alpha, a, Temperature(1.0));
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.detail.empty());
}

TEST_CASE("single-player coupling is small") {
  const PotentialGame g_hat = Constant(1, 0.0, 1.0);
  const HistoryGame g = EmbedAsHistoryGame(g_hat);
  for (const char* lo : {"0", "1"}) {
    for (const char* hi : {"0", "1"}) {
      if (!ProfileLeq(P(lo), P(hi))) continue;
      const Path alpha(P(hi));
      const OneStepCoupling nu =
          BuildOneStepCoupling(g, g_hat, alpha, P(lo), Temperature(1.0));
      CHECK(nu.entries().size() <= 4);
      CHECK(VerifyOneStep(nu, g, g_hat, alpha, P(lo), Temperature(1.0)).ok);
    }
  }
}

TEST_CASE("misaligned pair yields a negative case mass") {
  const PotentialGame g_hat = Constant(2, 0.0, 1.0);
  const HistoryGame g = EmbedAsHistoryGame(Constant(2, 0.0, 0.0));
  CHECK_THROWS_AS(BuildOneStepCoupling(g, g_hat, Path(P("00")), P("00"),
                                       Temperature(1.0)),
                  AlignmentViolationError);
  CHECK_THROWS_AS(BuildOneStepCoupling(g, g_hat, Path(P("00")), P("10"),
                                       Temperature(1.0)),
                  OrderViolation);
}

TEST_CASE("update-probability monotonicity") {
  const HistoryGame g = EmbedAsHistoryGame(Constant(1, 0.0, 2.0));
  const PotentialGame g_hat = Constant(1, 1.0, 1.0);
  const MonotonicityResult r =
      VerifyUpdateMonotonicity(g, g_hat, Path(P("0")), P("0"), 0, Temperature(1.0));
  CHECK(r.outcome == MonotonicityOutcome::kHolds);
  CHECK(r.ok());
  CHECK(r.upper_p1 == doctest::Approx(0.880797).epsilon(1e-6));
  CHECK(r.lower_p1 == 0.5);

  const MonotonicityResult same = VerifyUpdateMonotonicity(
      EmbedAsHistoryGame(g_hat), g_hat, Path(P("1")), P("1"), 0, Temperature(1.0));
  CHECK(same.outcome == MonotonicityOutcome::kHolds);
  CHECK(same.upper_p1 == same.lower_p1);

  const MonotonicityResult not_met = VerifyUpdateMonotonicity(
      EmbedAsHistoryGame(Constant(1, 0.0, 0.5)), g_hat, Path(P("0")), P("0"), 0,
      Temperature(1.0));
  CHECK(not_met.outcome == MonotonicityOutcome::kHypothesisNotMet);
  CHECK(not_met.ok());
}

TEST_CASE("path coupling zeros") {
  const SisgcgConfig c = fixture::Sis(Graph::Line(2), 0.5);
  const HistoryGame g = SisgcgHistoryGame(c);
  const PotentialGame g_hat = MakeReferenceGcg(c).game;
  const Distribution pi = Distribution::Uniform(2);
  CHECK(PathCouplingProb(g, g_hat, pi, Path({P("00"), P("00")}),
                         Path({P("01"), P("01")}), Temperature(1.0)) == 0.0);
  CHECK(PathCouplingProb(g, g_hat, pi, Path({P("01"), P("01")}),
                         Path({P("01"), P("00")}), Temperature(1.0)) == 0.0);
  CHECK(PathCouplingProb(g, g_hat, pi, Path({P("01"), P("01")}),
                         Path({P("01"), P("11")}), Temperature(1.0)) > 0.0);
  CHECK_THROWS_AS(PathCouplingProb(g, g_hat, pi, Path(P("01")),
                                   Path({P("01"), P("11")}), Temperature(1.0)),
                  DimensionError);
}

TEST_CASE("path coupling marginals") {
  const SisgcgConfig c = fixture::Sis(Graph::Line(2), 0.5);
  const HistoryGame g = SisgcgHistoryGame(c);
  const PotentialGame g_hat = MakeReferenceGcg(c).game;
  const Distribution pi = Distribution::Uniform(2);
  for (int t = 1; t <= 3; ++t) {
    const PathCouplingReport r = VerifyPathCoupling(g, g_hat, pi, t, Temperature(0.5));
    CHECK_MESSAGE(r.ok, r.detail);
    CHECK(r.pairs == (std::uint64_t{1} << (4 * t)));
  }
  const PathCouplingReport same = VerifyPathCoupling(
      EmbedAsHistoryGame(g_hat), g_hat, pi, 3, Temperature(0.5));
  CHECK(same.ok);
  const ExpectationGapResult gap = ExpectationGap(
      [](const Path& p) { return std::int64_t{p.back().IsOnes()}; }, same.table);
  CHECK(std::abs(gap.expectation_difference) <= 1e-12);
  CHECK(std::abs(gap.difference) <= 1e-12);
  CHECK_THROWS_AS(VerifyPathCoupling(g, g_hat, pi, 4, Temperature(0.5), 1e-10, 1000),
                  BoundError);
}

TEST_CASE("expectation gap") {
  const SisgcgConfig c = fixture::Sis(Graph::Line(2), 0.3);
  const HistoryGame g = SisgcgHistoryGame(c);
  const PotentialGame g_hat = MakeReferenceGcg(c).game;
  const PathCouplingReport r =
      VerifyPathCoupling(g, g_hat, Distribution::Uniform(2), 3, Temperature(0.5));
  REQUIRE(r.ok);
  const ExpectationGapResult constant =
      ExpectationGap([](const Path&) { return std::int64_t{2}; }, r.table);
  CHECK(std::abs(constant.expectation_difference) <= 1e-12);
  CHECK(constant.coupling_sum == 0.0);
  const ExpectationGapResult visits = ExpectationGap(
      [](const Path& p) {
        std::int64_t k = 0;
        for (const auto& a : p) k += a.IsOnes();
        return k;
      },
      r.table);
  CHECK(visits.expectation_difference > 0.0);
  CHECK(std::abs(visits.difference) <= 1e-10);
  CHECK_THROWS_AS(
      ExpectationGap([](const Path& p) { return std::int64_t{p.back().IsZeros()}; },
                     r.table),
      ContractError);
}

TEST_CASE("dominance") {
  const SisgcgConfig c = fixture::Sis(Graph::Complete(3), 0.5);
  const PotentialGame g_hat = MakeReferenceGcg(c).game;
  const Distribution pi = Distribution::Uniform(3);
  DominanceOptions opt;
  const DominanceReport same = DominanceCheck(EmbedAsHistoryGame(g_hat), g_hat, pi,
                                              Temperature(0.5), 6, opt);
  CHECK(same.ok);
  for (const auto& row : same.rows) CHECK(std::abs(row.gap) <= 1e-12);

  const HistoryGame g = SisgcgHistoryGame(c, kDefaultGridBins);
  const DominanceReport r = DominanceCheck(g, g_hat, pi, Temperature(0.5), 8, opt);
  CHECK_MESSAGE(r.ok, r.detail);
  REQUIRE(r.rows.size() == 8);
  for (const auto& row : r.rows) CHECK(row.gap >= -1e-10);
  CHECK_FALSE(r.upper_sets.empty());

  const PotentialGame& ref = g_hat;
  const HistoryGame bad(3, [ref](const Path& h, int i, int x) {
    return ref.Utility(i, x, h.back()) - (x == 1 ? 1.0 : 0.0);
  });
  opt.prob.mode = ProbMode::kExactPaths;
  const DominanceReport v = DominanceCheck(bad, g_hat, pi, Temperature(0.5), 4, opt);
  CHECK_FALSE(v.ok);
  CHECK(v.violation_length.has_value());
}

}  // namespace
}  // namespace loglin
