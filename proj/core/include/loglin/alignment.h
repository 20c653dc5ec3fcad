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

#ifndef LOGLIN_ALIGNMENT_H_
#define LOGLIN_ALIGNMENT_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "loglin/games.h"
#include "loglin/profile.h"

namespace loglin {

enum class AlignmentMode { kEnumerate, kSample, kAnalyticBounds };

std::string_view AlignmentModeName(AlignmentMode mode);

struct UtilityInterval {
  double lo = 0.0;
  double hi = 0.0;
};

// Bounds on U_i^alpha(action, alpha^T_{-i}) valid for every history alpha
// whose last profile is `last`.
using UtilityBoundsFn =
    std::function<UtilityInterval(const ActionProfile& last, int agent,
                                  int action)>;

struct AlignmentOptions {
  AlignmentMode mode = AlignmentMode::kEnumerate;
  int max_length = 3;                    // enumerate / sample: T <= max_length
  int samples = 1000;                    // sample mode
  std::uint64_t seed = 0;                // sample mode
  UtilityBoundsFn bounds;                // analytic-bounds mode
  double tolerance = kUtilityTolerance;
  int cap = kDefaultEnumerationCap;
  std::uint64_t max_paths = 1ULL << 22;  // enumerate mode, all T together
  std::size_t max_violations = 32;       // witnesses kept
};

struct AlignmentViolation {
  int condition = 0;            // 1, 2 or 3
  std::optional<Path> path;     // witness history (absent for condition 1)
  ActionProfile profile;        // witness a
  int agent = -1;               // 0-based; -1 for condition 1
  double lhs = 0.0;             // left side of the violated inequality
  double rhs = 0.0;
};

struct AlignmentReport {
  bool is_aligned = true;
  AlignmentMode mode = AlignmentMode::kEnumerate;
  std::uint64_t checks = 0;
  std::vector<AlignmentViolation> violations;
};

// Checks that g is sandwiched by the potential game g_hat:
//  1. argmax phi_hat = {1};
//  2. U_i^alpha(1, alpha^T_{-i}) >= U_hat_i(1, a_{-i});
//  3. U_hat_i(0, a_{-i}) >= U_i^alpha(0, alpha^T_{-i});
// for every (alpha, a, i) with alpha^T_{-i} >= a_{-i}. Differences within
// `tolerance` count as equality.
AlignmentReport VerifyAlignment(const HistoryGame& g,
                                const PotentialGame& g_hat,
                                const AlignmentOptions& options);

}  // namespace loglin

#endif  // LOGLIN_ALIGNMENT_H_
