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

#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "loglin/errors.h"
#include "loglin/graph.h"
#include "oracles.h"

namespace loglin {
namespace {

ActionProfile P(const char* bits) { return ActionProfile::FromBitString(bits); }

PotentialGame Edge(double weight) {
  return GcgGame(Graph::Line(2), 0.5, weight - 0.5);
}

// History game that rewards action 1 by the number of past all-ones steps.
HistoryGame Memory(const Graph& graph) {
  auto gcg = std::make_shared<PotentialGame>(GcgGame(graph, 0.6, 0.2));
  return HistoryGame(
      graph.num_nodes(),
      [gcg](const Path& h, int i, int x) {
        double bonus = 0.0;
        for (const auto& a : h) bonus += a.IsOnes() ? 0.25 : 0.0;
        return gcg->Utility(i, x, h.back()) + (x == 1 ? bonus : 0.0);
      },
      "memory");
}

TEST_CASE("logistic choice") {
  CHECK(LogisticChoice(1.0, 1.0) == doctest::Approx(oracle::kSigmoidOne).epsilon(1e-15));
  CHECK(LogisticChoice(0.0, 3.0) == 0.5);
  CHECK(LogisticChoice(1.0, 1e-6) == 1.0);
  CHECK(LogisticChoice(-1.0, 1e-6) < 1e-300);
  CHECK(std::isfinite(LogisticChoice(1e300, 1e-300)));
  CHECK_THROWS_AS(Temperature(0.0), ParameterError);
  CHECK_THROWS_AS(Temperature(-1.0), ParameterError);
  CHECK_THROWS_AS(Temperature{std::numeric_limits<double>::infinity()},
                  ParameterError);
  CHECK_THROWS_AS(LogisticChoice(NAN, 1.0), NumericError);
}

TEST_CASE("kernel example on a single edge") {
  // q + bonus = 1; at (1,0) agent 1 compares 0 vs 1, agent 2 compares 1 vs 0.
  const PotentialGame g = Edge(1.0);
  const KernelRow row = StepKernel(g, P("10"), Temperature(1.0));
  CHECK(row(P("00")) == doctest::Approx(0.5 * oracle::kSigmoidOne).epsilon(1e-12));
  CHECK(row(P("11")) == doctest::Approx(0.3655292893).epsilon(1e-10));
  CHECK(row(P("10")) == doctest::Approx(0.2689414214).epsilon(1e-10));
  CHECK(row.self_mass() == doctest::Approx(oracle::kSigmoidMinusOne).epsilon(1e-12));
  CHECK(row(P("01")) == 0.0);
  CHECK(row.Sum() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("kernel rows match the dense oracle") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 1 + rep % 4;
    const PotentialGame g = oracle::RandomPotentialGame(n, rng);
    for (double tau : {0.2, 1.0, 5.0}) {
      const auto dense = oracle::KernelMatrix(g, tau);
      for (std::uint64_t a = 0; a < ProfileCount(n); ++a) {
        const KernelRow row = StepKernel(g, ActionProfile(n, a), Temperature(tau));
        CHECK(std::abs(row.Sum() - 1.0) <= 1e-12);
        for (std::uint64_t b = 0; b < ProfileCount(n); ++b) {
          CHECK(std::abs(row(ActionProfile(n, b)) - dense[a][b]) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("path probabilities") {
  const PotentialGame g = Edge(1.2);
  const Distribution pi = Distribution::Uniform(2);
  const Temperature tau(1.0);
  CHECK(PathProb(g, pi, Path(P("01")), tau) == 0.25);
  CHECK(PathProb(g, pi, Path({P("00"), P("11")}), tau) == 0.0);
  const Path p({P("00"), P("10"), P("11")});
  const double expected = 0.25 * StepKernel(g, P("00"), tau)(P("10")) *
                          StepKernel(g, P("10"), tau)(P("11"));
  CHECK(PathProb(g, pi, p, tau) == doctest::Approx(expected).epsilon(1e-14));
  // Path measure sums to one.
  double total = 0.0;
  for (const Path& q : EnumeratePaths(2, 4, 1 << 12)) total += PathProb(g, pi, q, tau);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("history path probabilities match the literal oracle") {
  const HistoryGame h = Memory(Graph::Ring(3));
  const Distribution pi = Distribution::Uniform(3);
  std::vector<double> pi_vec = pi.probabilities();
  for (const Path& p : EnumeratePaths(3, 3, 1 << 12)) {
    CHECK(std::abs(PathProb(h, pi, p, Temperature(0.7)) -
                   oracle::HistoryPathProb(h, pi_vec, p, 0.7)) <= 1e-15);
  }
}

TEST_CASE("prob of all ones: exact modes agree") {
  const PotentialGame g = GcgGame(Graph::Ring(3), 0.7, 0.5);
  const Distribution pi = Distribution::Uniform(3);
  const Temperature tau(0.5);
  ProbOptions paths;
  paths.mode = ProbMode::kExactPaths;
  ProbOptions lifted;
  lifted.mode = ProbMode::kExactLifted;
  const auto by_paths = ProbAllOnesCurve(g, pi, tau, 6, paths);
  const auto by_chain = ProbAllOnesCurve(g, pi, tau, 6, lifted);
  const auto embedded =
      ProbAllOnesCurve(EmbedAsHistoryGame(g), pi, tau, 6, lifted);
  const auto dense = oracle::KernelMatrix(g, 0.5);
  for (int t = 0; t < 6; ++t) {
    const double want = oracle::Propagate(pi.probabilities(), dense, t)[7];
    CHECK(std::abs(by_paths[t].value - want) <= 1e-12);
    CHECK(std::abs(by_chain[t].value - want) <= 1e-12);
    CHECK(std::abs(embedded[t].value - want) <= 1e-12);
  }
  const Distribution at_ones = Distribution::PointMass(P("111"));
  CHECK(ProbAllOnesAt(g, at_ones, tau, 1, lifted).value == 1.0);
}

TEST_CASE("history game: exact-paths matches enumeration oracle") {
  const HistoryGame h = Memory(Graph::Line(3));
  const Distribution pi = Distribution::Uniform(3);
  ProbOptions paths;
  paths.mode = ProbMode::kExactPaths;
  const auto curve = ProbAllOnesCurve(h, pi, Temperature(0.8), 4, paths);
  for (int t = 1; t <= 4; ++t) {
    CHECK(std::abs(curve[t - 1].value -
                   oracle::HistoryProbAllOnes(h, pi.probabilities(), t, 0.8)) <=
          1e-12);
  }
  ProbOptions lifted;
  CHECK_THROWS_AS(ProbAllOnesCurve(h, pi, Temperature(0.8), 4, lifted),
                  ParameterError);
  paths.max_paths = 10;
  CHECK_THROWS_AS(ProbAllOnesCurve(h, pi, Temperature(0.8), 4, paths),
                  BoundError);
}

TEST_CASE("monte carlo agrees with exact and replays") {
  const PotentialGame g = GcgGame(Graph::Ring(3), 0.7, 0.5);
  const Distribution pi = Distribution::Uniform(3);
  ProbOptions mc;
  mc.mode = ProbMode::kMonteCarlo;
  mc.reps = 20000;
  mc.seed = 99;
  const Estimate est = ProbAllOnesAt(g, pi, Temperature(0.5), 8, mc);
  ProbOptions exact;
  const double want = ProbAllOnesAt(g, pi, Temperature(0.5), 8, exact).value;
  CHECK(std::abs(est.value - want) <= 4.0 * est.std_error);
  mc.jobs = 3;
  const Estimate again = ProbAllOnesAt(g, pi, Temperature(0.5), 8, mc);
  CHECK(again.value == est.value);
  CHECK(again.std_error == est.std_error);
  mc.reps = 0;
  CHECK_THROWS_AS(ProbAllOnesAt(g, pi, Temperature(0.5), 8, mc), ParameterError);
}

TEST_CASE("history game ignoring history matches the static game") {
  for (int n = 1; n <= 3; ++n) {
    const PotentialGame g = GcgGame(Graph::Complete(n), 0.6, 0.3);
    const PotentialGame& gg = g;
    const HistoryGame h(
        n, [gg](const Path& p, int i, int x) { return gg.Utility(i, x, p.back()); });
    const Distribution pi = Distribution::Uniform(n);
    ProbOptions paths;
    paths.mode = ProbMode::kExactPaths;
    const auto a = ProbAllOnesCurve(h, pi, Temperature(0.4), 5, paths);
    const auto b = ProbAllOnesCurve(g, pi, Temperature(0.4), 5, ProbOptions{});
    for (int t = 0; t < 5; ++t) CHECK(std::abs(a[t].value - b[t].value) <= 1e-12);
  }
}

TEST_CASE("simulation draws and replay") {
  const PotentialGame g = GcgGame(Graph::Ring(4), 0.7, 0.5);
  const Distribution pi = Distribution::Uniform(4);
  const SimRun a = Simulate(g, pi, Temperature(0.3), 50, 123);
  const SimRun b = Simulate(g, pi, Temperature(0.3), 50, 123);
  CHECK(a.path == b.path);
  CHECK(a.updaters == b.updaters);
  CHECK(a.path.length() == 50);
  CHECK(a.updaters.size() == 49);
  for (int t = 0; t + 1 < a.path.length(); ++t) {
    const auto dev = UnilateralDeviator(a.path[t], a.path[t + 1]);
    if (dev) CHECK(*dev == a.updaters[t]);
  }
  const SimRun c = Simulate(g, pi, Temperature(0.3), 50, 124);
  CHECK_FALSE(a.path == c.path);
}

TEST_CASE("low temperature absorbs at the maximizer") {
  const PotentialGame g = GcgGame(Graph::Ring(3), 0.7, 0.5);
  const Distribution start = Distribution::PointMass(P("110"));
  int absorbed = 0;
  for (int s = 0; s < 200; ++s) {
    absorbed += Simulate(g, start, Temperature(0.05), 60, s).path.back().IsOnes();
  }
  CHECK(absorbed >= 195);
}

TEST_CASE("gibbs and stationary distributions") {
  const PotentialGame g = Edge(1.2);
  const Distribution gibbs = GibbsDistribution(g, Temperature(1.0));
  CHECK(gibbs(P("11")) == doctest::Approx(0.413032).epsilon(1e-5));
  CHECK(gibbs(P("00")) == doctest::Approx(0.338164).epsilon(1e-5));
  CHECK(gibbs(P("10")) == doctest::Approx(0.124402).epsilon(1e-5));
  CHECK(gibbs(P("01")) == doctest::Approx(0.124402).epsilon(1e-5));
  const Distribution stat = StationaryDistribution(g, Temperature(1.0));
  CHECK(TotalVariation(stat, gibbs) <= 1e-12);
  const PotentialGame flat(
      3, [](int, const ActionProfile&) { return 0.0; },
      [](const ActionProfile&) { return 0.0; });
  CHECK(TotalVariation(StationaryDistribution(flat, Temperature(1.0)),
                       Distribution::Uniform(3)) <= 1e-12);
  CHECK(StationaryDistribution(GcgGame(Graph::Ring(3), 0.7, 0.5),
                               Temperature(0.05))(P("111")) > 0.99);
  CHECK_THROWS_AS(StationaryDistribution(GcgGame(Graph::Ring(11), 0.7, 0.5),
                                         Temperature(1.0)),
                  BoundError);
}

TEST_CASE("stationary equals gibbs on random potential games") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    const PotentialGame g = oracle::RandomPotentialGame(1 + rep % 4, rng);
    for (double tau : {0.2, 1.0, 5.0}) {
      const Distribution s = StationaryDistribution(g, Temperature(tau));
      const Distribution b = GibbsDistribution(g, Temperature(tau));
      CHECK(TotalVariation(s, b) <= 1e-8);
      const auto o = oracle::Gibbs(g, tau);
      for (std::size_t k = 0; k < o.size(); ++k) {
        CHECK(std::abs(b.probabilities()[k] - o[k]) <= 1e-14);
      }
    }
  }
}

TEST_CASE("stability sweep") {
  const PotentialGame tie = Edge(1.0);
  const HistoryGame h = EmbedAsHistoryGame(tie);
  const std::vector<double> taus{1.0, 0.5, 0.2, 0.1};
  const auto rows = StabilitySweep(h, Distribution::Uniform(2), taus, 400,
                                   ProbOptions{});
  REQUIRE(rows.size() == 4);
  CHECK(rows[3].estimate.value == doctest::Approx(0.5).epsilon(0.02));
  CHECK(rows[0].tau == 1.0);
  const std::vector<double> one{0.3};
  CHECK(StabilitySweep(h, Distribution::Uniform(2), one, 3, ProbOptions{}).size() == 1);
}

TEST_CASE("upper-set mass") {
  const PotentialGame g = GcgGame(Graph::Ring(3), 0.7, 0.5);
  const HistoryGame h = EmbedAsHistoryGame(g);
  const Distribution pi = Distribution::Uniform(3);
  const Path gen({P("000"), P("100"), P("110")});
  double want = 0.0;
  for (const Path& p : EnumeratePaths(3, 3, 1 << 12)) {
    if (PathLeq(gen, p)) want += PathProb(g, pi, p, Temperature(0.6));
  }
  CHECK(std::abs(ProbUpperSet(h, pi, Temperature(0.6), gen) - want) <= 1e-12);
}

TEST_CASE("distribution validation and sampling") {
  CHECK_THROWS_AS(Distribution(1, {0.5, 0.6}), ParameterError);
  CHECK_THROWS_AS(Distribution(1, {-0.1, 1.1}), ParameterError);
  CHECK_THROWS_AS(Distribution(2, {1.0}), DimensionError);
  const Distribution d(2, {0.1, 0.2, 0.3, 0.4});
  CHECK(d.Sample(0.0) == P("00"));
  CHECK(d.Sample(0.15) == P("01"));
  CHECK(d.Sample(0.99) == P("11"));
  CHECK(ParseProbMode("exact-lifted") == ProbMode::kExactLifted);
  CHECK_THROWS_AS(ParseProbMode("fast"), ParameterError);
}

}  // namespace
}  // namespace loglin
