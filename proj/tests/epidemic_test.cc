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

#include <cmath>

#include "doctest.h"
#include "fixtures.h"
#include "loglin/errors.h"
#include "oracles.h"

namespace loglin {
namespace {

ActionProfile P(const char* bits) { return ActionProfile::FromBitString(bits); }

TEST_CASE("average infection rate") {
  CHECK(BetaOfProfile(P("1111"), 0.8, 0.2) == 0.2);
  CHECK(BetaOfProfile(P("0000"), 0.8, 0.2) == 0.8);
  CHECK(BetaOfProfile(P("1100"), 0.8, 0.2) == doctest::Approx(0.5));
}

TEST_CASE("SIS vector field and integrator") {
  CHECK(SisDerivative(0.9, 0.6, 0.3) == doctest::Approx(-0.024));
  CHECK(SisStep(1.0, 0.7, 0.3, 0.5) == 1.0);
  CHECK(SisStep(0.9, 0.6, 0.3, 0.01) < 0.9);
  CHECK(std::abs(SisIntegrate(0.9, 0.6, 0.3, 200.0, 20000) - 0.5) <= 1e-6);
  CHECK(SisStep(0.0, 5.0, 5.0, 10.0) >= 0.0);
  CHECK(SisStep(0.999, 0.1, 50.0, 10.0) <= 1.0);
  CHECK_THROWS_AS(SisStep(0.5, INFINITY, 0.3, 0.1), NumericError);
}

TEST_CASE("closed form matches the oracle and the integrator") {
  for (double t : {0.0, 1.0, 5.0, 10.0}) {
    const double want = oracle::SisClosedForm(0.9, 0.6, 0.3, t);
    CHECK(std::abs(SisExact(0.9, 0.6, 0.3, t) - want) <= 1e-15);
    CHECK(std::abs(SisIntegrate(0.9, 0.6, 0.3, t, 1000) - want) <= 1e-12);
  }
}

TEST_CASE("grid snapping") {
  CHECK(SnapToGrid(0.5, 10000) == 0.5);
  CHECK(SnapToGrid(0.123456, 10000) == doctest::Approx(0.1235));
  CHECK(SnapToGrid(0.123456, 0) == 0.123456);
}

TEST_CASE("epidemic utility") {
  const Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
  // Agent 1 has neighbors playing 1, 1, 0.
  const ActionProfile a = P("0110");
  CHECK(SisgcgUtility(star, 0.7, 0.5, a, 0, 1) == doctest::Approx(2.4));
  CHECK(SisgcgUtility(star, 0.7, 0.5, a, 0, 0) == 1.0);
  const Graph lonely = Graph::Empty(2);
  CHECK(SisgcgUtility(lonely, 0.7, 0.2, P("11"), 0, 1) == 0.0);
  CHECK(SisgcgUtility(lonely, 0.7, 0.2, P("11"), 0, 0) == 0.0);
  EpidemicState st{0.5, a, 0.0};
  CHECK(SisgcgUtility(st, 0, 1, star, 0.7) == doctest::Approx(2.4));
}

TEST_CASE("frozen infection reproduces the reference kernel") {
  const SisgcgConfig c = fixture::Sis(Graph::Ring(4), 0.9);
  const PotentialGame ref = MakeReferenceGcg(c).game;
  const double frozen_s = 1.0 - c.gamma / c.beta1;
  for (std::uint64_t b = 0; b < 16; ++b) {
    const ActionProfile a(4, b);
    std::vector<double> p1(4);
    for (int i = 0; i < 4; ++i) {
      for (int x = 0; x < 2; ++x) {
        CHECK(SisgcgUtility(c.graph, c.q, frozen_s, a, i, x) ==
              ref.Utility(i, x, a));
      }
      p1[i] = LogisticChoice(SisgcgUtility(c.graph, c.q, frozen_s, a, i, 1) -
                                 SisgcgUtility(c.graph, c.q, frozen_s, a, i, 0),
                             0.7);
    }
    const KernelRow mine = KernelFromChoiceProbabilities(a, p1);
    const KernelRow theirs = StepKernel(ref, a, Temperature(0.7));
    for (const auto& [z, m] : theirs.Entries()) CHECK(std::abs(mine(z) - m) <= 1e-12);
  }
}

TEST_CASE("config validation") {
  SisgcgConfig c = fixture::Sis(Graph::Ring(3), 0.9);
  CHECK_NOTHROW(c.Validate());
  c.s0 = 1.0;
  CHECK_THROWS_AS(c.Validate(), ParameterError);
  c = fixture::Sis(Graph::Ring(3), 0.9);
  c.beta1 = c.beta0;
  CHECK_THROWS_AS(c.Validate(), ParameterError);
  c = fixture::Sis(Graph::Ring(3), 0.9);
  c.ode_substeps = 0;
  CHECK_THROWS_AS(c.Validate(), ParameterError);
}

TEST_CASE("hybrid run: layout, replay and agreement with simulate") {
  const SisgcgConfig c = fixture::Sis(Graph::Ring(4), 0.9);
  const Trajectory a = RunSisgcg(c, Temperature(0.4), 300, 8);
  const Trajectory b = RunSisgcg(c, Temperature(0.4), 300, 8);
  REQUIRE(a.rows.size() == 301);
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    CHECK(a.rows[k].s == b.rows[k].s);
    CHECK(a.rows[k].profile == b.rows[k].profile);
    CHECK(a.rows[k].t == doctest::Approx(k * 0.1));
    CHECK(a.rows[k].s >= 0.0);
    CHECK(a.rows[k].s <= 1.0);
    CHECK(a.rows[k].beta >= c.beta1);
    CHECK(a.rows[k].beta <= c.beta0);
  }
  CHECK(a.rows[0].last_updater == 0);
  CHECK(a.rows[0].s == 0.9);

  const SimRun sim = Simulate(SisgcgHistoryGame(c), InitialProfileLaw(c),
                              Temperature(0.4), 301, 8);
  const HistoryGame h = SisgcgHistoryGame(c);
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    CHECK(sim.path[static_cast<int>(k)] == a.rows[k].profile);
    if (k > 0) CHECK(sim.updaters[k - 1] + 1 == a.rows[k].last_updater);
  }
  CHECK(h.StatisticOf(sim.path.Prefix(101)) == a.rows[101].s);
}

TEST_CASE("equal infection rates give plain SIS") {
  SisgcgConfig c = fixture::Sis(Graph::Ring(3), 0.9);
  c.beta1 = 0.6;
  c.beta0 = std::nextafter(0.6, 1.0);
  const Trajectory t = RunSisgcg(c, Temperature(1.0), 100, 1);
  double s = 0.9;
  for (std::size_t k = 1; k < t.rows.size(); ++k) {
    s = SisIntegrate(s, 0.6, 0.3, 0.1, 10);
    CHECK(std::abs(t.rows[k].s - s) <= 1e-14);
  }
}

TEST_CASE("invariant set") {
  const SisgcgConfig inside = fixture::Sis(Graph::Ring(4), 0.2);
  const InvarianceReport r0 = CheckInvariance(
      RunSisgcg(inside, Temperature(0.5), 200, 1).rows, 0.3, 0.6);
  CHECK(r0.ok());
  CHECK(*r0.entry_index == 0);
  CHECK(*r0.entry_time == 0.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SisgcgConfig c = fixture::Sis(Graph::Ring(5), 0.9);
    const InvarianceReport r = CheckInvariance(
        RunSisgcg(c, Temperature(0.5), 2000, seed).rows, 0.3, 0.6);
    CHECK(r.ok());
    CHECK(*r.entry_index > 0);
  }
  std::vector<TrajectoryRow> rows(3);
  rows[0].s = 0.9;
  rows[1].s = 0.4;
  rows[2].s = 0.6;
  const InvarianceReport bad = CheckInvariance(rows, 0.3, 0.6);
  CHECK(*bad.entry_index == 1);
  CHECK(bad.violations == std::vector<std::size_t>{2});
  CHECK_THROWS(CheckInvariance(std::vector<TrajectoryRow>{}, 0.3, 0.6));
}

TEST_CASE("reference game") {
  const SisgcgConfig c = fixture::Sis(Graph::Line(2), 0.9);
  const ReferenceGcg ref = MakeReferenceGcg(c);
  CHECK(ref.warnings.empty());
  CHECK(PotentialArgmax(ref.game) == std::vector{P("11")});
  SisgcgConfig tie = c;
  tie.q = 0.5;
  const ReferenceGcg t = MakeReferenceGcg(tie);
  CHECK(t.warnings.size() == 1);
  CHECK(PotentialArgmax(t.game).size() == 2);
  SisgcgConfig dying = c;
  dying.gamma = 0.7;
  CHECK_FALSE(MakeReferenceGcg(dying).warnings.empty());
}

TEST_CASE("stability experiment: small runs") {
  const SisgcgConfig c = fixture::Sis(Graph::Ring(4), 0.9);
  SsOptions opt;
  opt.burn_in = 200;
  opt.horizon = 800;
  opt.reps = 40;
  opt.seed = 2;
  const std::vector<double> taus{1000.0, 0.1};
  const SsResult r = SsExperiment(c, taus, opt);
  REQUIRE(r.rows.size() == 2);
  // Near-uniform play at very high temperature.
  CHECK(std::abs(r.rows[0].occupancy - 1.0 / 16) <=
        4.0 * r.rows[0].occupancy_std_error + 1e-3);
  CHECK(r.rows[1].occupancy > 0.9);
  opt.jobs = 3;
  const SsResult again = SsExperiment(c, taus, opt);
  CHECK(again.rows[1].occupancy == r.rows[1].occupancy);

  SisgcgConfig low_q = c;
  low_q.q = 0.3;
  const std::vector<double> cold{0.1};
  const SsResult lq = SsExperiment(low_q, cold, opt);
  CHECK(lq.rows[0].occupancy < 0.5);
  CHECK_FALSE(lq.warnings.empty());
  opt.reps = 0;
  CHECK_THROWS_AS(SsExperiment(c, taus, opt), ParameterError);
}

}  // namespace
}  // namespace loglin
