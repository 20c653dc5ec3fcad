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

#ifndef LOGLIN_TESTS_FIXTURES_H_
#define LOGLIN_TESTS_FIXTURES_H_

#include <random>
#include <vector>

#include "loglin/epidemic.h"
#include "loglin/graph.h"
#include "loglin/profile.h"

namespace loglin::fixture {

// gamma = 0.3, beta1 = 0.6, beta0 = 0.9, q = 0.7: gamma / beta1 = 0.5.
inline SisgcgConfig Sis(const Graph& graph, double s0) {
  SisgcgConfig c;
  c.graph = graph;
  c.gamma = 0.3;
  c.beta1 = 0.6;
  c.beta0 = 0.9;
  c.q = 0.7;
  c.s0 = s0;
  return c;
}

inline ActionProfile RandomProfile(int n, std::mt19937_64& rng) {
  return ActionProfile(n, rng() & ((std::uint64_t{1} << n) - 1));
}

// Uniformly random submask of `upper`.
inline ActionProfile RandomBelow(const ActionProfile& upper,
                                 std::mt19937_64& rng) {
  return ActionProfile(upper.size(), upper.bits() & rng());
}

inline Path RandomPath(int n, int length, std::mt19937_64& rng) {
  std::vector<ActionProfile> profiles;
  for (int t = 0; t < length; ++t) profiles.push_back(RandomProfile(n, rng));
  return Path(std::move(profiles));
}

}  // namespace loglin::fixture

#endif  // LOGLIN_TESTS_FIXTURES_H_
