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

// Brute-force reference computations for tests. Everything here is written
// straight from the definitions and shares no code with the library beyond
// the game and profile types.

#ifndef LOGLIN_TESTS_ORACLES_H_
#define LOGLIN_TESTS_ORACLES_H_

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <vector>

#include "loglin/games.h"
#include "loglin/graph.h"
#include "loglin/profile.h"

namespace loglin::oracle {

using Matrix = std::vector<std::vector<double>>;

// Frozen values, computed by hand or with an independent calculator.
inline constexpr double kSigmoidOne = 0.7310585786300049;   // 1/(1+e^-1)
inline constexpr double kSigmoidTwo = 0.8807970779778823;   // 1/(1+e^-2)
inline constexpr double kSigmoidMinusOne = 0.2689414213699951;

// exp(u1/tau) / (exp(u0/tau) + exp(u1/tau)), evaluated literally.
inline double Softmax1(double u0, double u1, double tau) {
  const double m = std::max(u0, u1);
  const double e0 = std::exp((u0 - m) / tau);
  const double e1 = std::exp((u1 - m) / tau);
  return e1 / (e0 + e1);
}

inline int Bit(std::uint64_t bits, int n, int agent) {
  return static_cast<int>((bits >> (n - 1 - agent)) & 1u);
}

inline std::uint64_t SetBit(std::uint64_t bits, int n, int agent, int x) {
  const std::uint64_t mask = std::uint64_t{1} << (n - 1 - agent);
  return x ? (bits | mask) : (bits & ~mask);
}

// Dense log-linear kernel: pick an agent with probability 1/N, resample.
inline Matrix KernelMatrix(const PotentialGame& g, double tau) {
  const int n = g.num_players();
  const std::size_t m = std::size_t{1} << n;
  Matrix p(m, std::vector<double>(m, 0.0));
  for (std::uint64_t a = 0; a < m; ++a) {
    const ActionProfile prof(n, a);
    for (int i = 0; i < n; ++i) {
      const double u0 = g.Utility(i, prof.WithAction(i, 0));
      const double u1 = g.Utility(i, prof.WithAction(i, 1));
      const double p1 = Softmax1(u0, u1, tau);
      p[a][SetBit(a, n, i, 1)] += p1 / n;
      p[a][SetBit(a, n, i, 0)] += (1.0 - p1) / n;
    }
  }
  return p;
}

inline std::vector<double> Propagate(const std::vector<double>& pi,
                                     const Matrix& p, int steps) {
  std::vector<double> cur = pi;
  for (int s = 0; s < steps; ++s) {
    std::vector<double> next(cur.size(), 0.0);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (std::size_t j = 0; j < cur.size(); ++j) next[j] += cur[i] * p[i][j];
    }
    cur.swap(next);
  }
  return cur;
}

// Gibbs weights exp(phi/tau), normalized.
inline std::vector<double> Gibbs(const PotentialGame& g, double tau) {
  const int n = g.num_players();
  const std::size_t m = std::size_t{1} << n;
  std::vector<double> w(m);
  double top = -1e300;
  for (std::uint64_t a = 0; a < m; ++a) {
    top = std::max(top, g.Potential(ActionProfile(n, a)) / tau);
  }
  double z = 0.0;
  for (std::uint64_t a = 0; a < m; ++a) {
    w[a] = std::exp(g.Potential(ActionProfile(n, a)) / tau - top);
    z += w[a];
  }
  for (double& x : w) x /= z;
  return w;
}

// Probability of `path` under a history game, re-evaluating utilities on the
// full prefix at every step.
inline double HistoryPathProb(const HistoryGame& g,
                              const std::vector<double>& pi, const Path& path,
                              double tau) {
  const int n = g.num_players();
  double prob = pi[path[0].bits()];
  for (int t = 0; t + 1 < path.length() && prob > 0.0; ++t) {
    const Path prefix = path.Prefix(t + 1);
    const ActionProfile& cur = path[t];
    const ActionProfile& next = path[t + 1];
    double step = 0.0;
    for (int i = 0; i < n; ++i) {
      bool others_same = true;
      for (int j = 0; j < n; ++j) {
        if (j != i && cur[j] != next[j]) others_same = false;
      }
      if (!others_same) continue;
      const double p1 = Softmax1(g.Utility(prefix, i, 0),
                                 g.Utility(prefix, i, 1), tau);
      step += (next[i] == 1 ? p1 : 1.0 - p1) / n;
    }
    prob *= step;
  }
  return prob;
}

// Pr(s(T) = 1) for a history game by enumerating every path of length T.
inline double HistoryProbAllOnes(const HistoryGame& g,
                                 const std::vector<double>& pi, int length,
                                 double tau) {
  const int n = g.num_players();
  double total = 0.0;
  for (const Path& p : EnumeratePaths(n, length, std::uint64_t{1} << 22)) {
    if (p.back().IsOnes()) total += HistoryPathProb(g, pi, p, tau);
  }
  return total;
}

// A random exact potential game: U_i(a) = phi(a) + b_i(a_{-i}).
inline PotentialGame RandomPotentialGame(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const std::size_t m = std::size_t{1} << n;
  auto phi = std::make_shared<std::vector<double>>(m);
  for (double& x : *phi) x = unit(rng);
  auto bias = std::make_shared<std::vector<std::vector<double>>>(
      n, std::vector<double>(m));
  for (int i = 0; i < n; ++i) {
    for (std::uint64_t a = 0; a < m; ++a) {
      // Depends on a_{-i} only.
      (*bias)[i][a] = Bit(a, n, i) == 0 ? unit(rng)
                                        : (*bias)[i][SetBit(a, n, i, 0)];
    }
  }
  return PotentialGame(
      n,
      [phi, bias](int i, const ActionProfile& a) {
        return (*phi)[a.bits()] + (*bias)[i][a.bits()];
      },
      [phi](const ActionProfile& a) { return (*phi)[a.bits()]; },
      "random-potential");
}

// Constant-beta SIS closed form through I = 1 - s (logistic growth).
inline double SisClosedForm(double s0, double beta, double gamma, double t) {
  const double i0 = 1.0 - s0;
  const double r = beta - gamma;
  const double k = 1.0 - gamma / beta;
  return 1.0 - k / (1.0 + (k / i0 - 1.0) * std::exp(-r * t));
}

}  // namespace loglin::oracle

#endif  // LOGLIN_TESTS_ORACLES_H_
