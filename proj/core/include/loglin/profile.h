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

#ifndef LOGLIN_PROFILE_H_
#define LOGLIN_PROFILE_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace loglin {

// Largest player count a packed profile can hold.
inline constexpr int kMaxPlayers = 62;

// Default cap on N for operations that enumerate all of A = {0,1}^N.
inline constexpr int kDefaultEnumerationCap = 20;

// Joint binary action of N players, packed into a 64-bit word.
//
// Agents are 0-based in the C++ API. Agent i is stored at bit (N - 1 - i), so
// bits() doubles as the lexicographic index of the bitstring with agent 0
// leftmost, and iterating bits() over [0, 2^N) enumerates A in that order.
class ActionProfile {
 public:
  ActionProfile() = default;
  ActionProfile(int num_players, std::uint64_t bits);

  static ActionProfile Zeros(int num_players);
  static ActionProfile Ones(int num_players);
  // Parses a 0/1 string, agent 0 leftmost.
  static ActionProfile FromBitString(std::string_view bits);

  int size() const { return n_; }
  std::uint64_t bits() const { return bits_; }
  int operator[](int agent) const;

  ActionProfile WithAction(int agent, int action) const;
  ActionProfile Flipped(int agent) const;

  bool IsOnes() const;
  bool IsZeros() const { return bits_ == 0; }
  int CountOnes() const;

  std::string ToBitString() const;

  friend bool operator==(const ActionProfile&, const ActionProfile&) = default;
  friend auto operator<=>(const ActionProfile&, const ActionProfile&) = default;

 private:
  std::uint64_t Mask(int agent) const;

  int n_ = 0;
  std::uint64_t bits_ = 0;
};

// Number of profiles in {0,1}^n.
std::uint64_t ProfileCount(int num_players);

// Throws BoundError when n exceeds cap.
void CheckEnumerable(int num_players, int cap, std::string_view what);

// a <=_A b: componentwise a_i <= b_i.
bool ProfileLeq(const ActionProfile& a, const ActionProfile& b);

// a_{-i} <= b_{-i}: the order restricted to every agent except `agent`.
bool ProfileLeqExcept(const ActionProfile& a, const ActionProfile& b,
                      int agent);

// The deviator function g(a, b): the unique agent whose action differs, or
// nullopt when a == b. Throws NotUnilateralError if two or more differ.
std::optional<int> UnilateralDeviator(const ActionProfile& a,
                                      const ActionProfile& b);

// f(a): the N profiles one unilateral deviation away, ordered by agent.
std::vector<ActionProfile> OneStepNeighbors(const ActionProfile& a);

// An ordered history (alpha^1, ..., alpha^T) with T >= 1.
class Path {
 public:
  explicit Path(std::vector<ActionProfile> profiles);
  explicit Path(ActionProfile first);

  int length() const { return static_cast<int>(profiles_.size()); }
  int num_players() const { return profiles_.front().size(); }
  const ActionProfile& operator[](int t) const { return profiles_[t]; }
  const ActionProfile& back() const { return profiles_.back(); }
  const std::vector<ActionProfile>& profiles() const { return profiles_; }

  // alpha^{<=t}, 1 <= t <= length().
  Path Prefix(int t) const;
  Path Extended(const ActionProfile& next) const;

  auto begin() const { return profiles_.begin(); }
  auto end() const { return profiles_.end(); }

  // Profiles joined by '-', e.g. "01-11-11".
  std::string ToString() const;

  friend bool operator==(const Path&, const Path&) = default;

 private:
  std::vector<ActionProfile> profiles_;
};

// alpha <=_{A_T} beta: ProfileLeq at every time index.
bool PathLeq(const Path& alpha, const Path& beta);

// All 2^(N*T) paths of length T, in lexicographic order of their profile
// indices. Throws BoundError if the count exceeds max_paths.
std::vector<Path> EnumeratePaths(int num_players, int length,
                                 std::uint64_t max_paths);

}  // namespace loglin

#endif  // LOGLIN_PROFILE_H_
