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

#include "loglin/profile.h"

#include <bit>
#include <string>

#include "loglin/errors.h"

namespace loglin {

namespace {

void CheckSameSize(const ActionProfile& a, const ActionProfile& b) {
  if (a.size() != b.size()) {
    throw DimensionError("profile sizes differ: " + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()));
  }
}

}  // namespace

ActionProfile::ActionProfile(int num_players, std::uint64_t bits)
    : n_(num_players), bits_(bits) {
  if (num_players < 1 || num_players > kMaxPlayers) {
    throw DimensionError("player count must be in [1, " +
                         std::to_string(kMaxPlayers) + "], got " +
                         std::to_string(num_players));
  }
  if ((bits >> num_players) != 0) {
    throw DimensionError("profile bits exceed player count");
  }
}

ActionProfile ActionProfile::Zeros(int num_players) {
  return ActionProfile(num_players, 0);
}

ActionProfile ActionProfile::Ones(int num_players) {
  return ActionProfile(num_players, ProfileCount(num_players) - 1);
}

ActionProfile ActionProfile::FromBitString(std::string_view bits) {
  const int n = static_cast<int>(bits.size());
  std::uint64_t packed = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw DimensionError("profile strings may contain only 0 and 1: '" +
                           std::string(bits) + "'");
    }
    packed = (packed << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return ActionProfile(n, packed);
}

std::uint64_t ActionProfile::Mask(int agent) const {
  if (agent < 0 || agent >= n_) {
    throw DimensionError("agent " + std::to_string(agent) +
                         " out of range for " + std::to_string(n_) +
                         " players");
  }
  return std::uint64_t{1} << (n_ - 1 - agent);
}

int ActionProfile::operator[](int agent) const {
  return (bits_ & Mask(agent)) != 0 ? 1 : 0;
}

ActionProfile ActionProfile::WithAction(int agent, int action) const {
  if (action != 0 && action != 1) {
    throw ParameterError("actions are binary, got " + std::to_string(action));
  }
  ActionProfile out = *this;
  out.bits_ = action == 1 ? (bits_ | Mask(agent)) : (bits_ & ~Mask(agent));
  return out;
}

ActionProfile ActionProfile::Flipped(int agent) const {
  ActionProfile out = *this;
  out.bits_ ^= Mask(agent);
  return out;
}

bool ActionProfile::IsOnes() const {
  return n_ > 0 && bits_ == ProfileCount(n_) - 1;
}

int ActionProfile::CountOnes() const { return std::popcount(bits_); }

std::string ActionProfile::ToBitString() const {
  std::string out(n_, '0');
  for (int i = 0; i < n_; ++i) {
    if ((*this)[i] == 1) out[i] = '1';
  }
  return out;
}

std::uint64_t ProfileCount(int num_players) {
  if (num_players < 0 || num_players > kMaxPlayers) {
    throw DimensionError("player count out of range");
  }
  return std::uint64_t{1} << num_players;
}

void CheckEnumerable(int num_players, int cap, std::string_view what) {
  if (num_players > cap) {
    throw BoundError(std::string(what) + ": N=" + std::to_string(num_players) +
                     " exceeds enumeration cap " + std::to_string(cap));
  }
}

bool ProfileLeq(const ActionProfile& a, const ActionProfile& b) {
  CheckSameSize(a, b);
  return (a.bits() & ~b.bits()) == 0;
}

bool ProfileLeqExcept(const ActionProfile& a, const ActionProfile& b,
                      int agent) {
  CheckSameSize(a, b);
  return ProfileLeq(a.WithAction(agent, 0), b.WithAction(agent, 0));
}

std::optional<int> UnilateralDeviator(const ActionProfile& a,
                                      const ActionProfile& b) {
  CheckSameSize(a, b);
  const std::uint64_t diff = a.bits() ^ b.bits();
  if (diff == 0) return std::nullopt;
  if (std::popcount(diff) != 1) {
    throw NotUnilateralError(a.ToBitString() + " and " + b.ToBitString() +
                             " differ in more than one coordinate");
  }
  return a.size() - 1 - std::countr_zero(diff);
}

std::vector<ActionProfile> OneStepNeighbors(const ActionProfile& a) {
  std::vector<ActionProfile> out;
  out.reserve(a.size());
  for (int i = 0; i < a.size(); ++i) out.push_back(a.Flipped(i));
  return out;
}

Path::Path(std::vector<ActionProfile> profiles)
    : profiles_(std::move(profiles)) {
  if (profiles_.empty()) throw DimensionError("a path needs length T >= 1");
  const int n = profiles_.front().size();
  if (n < 1) throw DimensionError("path profiles must be non-empty");
  for (const auto& p : profiles_) {
    if (p.size() != n) {
      throw DimensionError("all profiles in a path must share N");
    }
  }
}

Path::Path(ActionProfile first) : Path(std::vector<ActionProfile>{first}) {}

Path Path::Prefix(int t) const {
  if (t < 1 || t > length()) {
    throw DimensionError("prefix length " + std::to_string(t) +
                         " outside [1, " + std::to_string(length()) + "]");
  }
  return Path(std::vector<ActionProfile>(profiles_.begin(),
                                         profiles_.begin() + t));
}

Path Path::Extended(const ActionProfile& next) const {
  if (next.size() != num_players()) {
    throw DimensionError("cannot extend a path with a profile of other N");
  }
  std::vector<ActionProfile> copy = profiles_;
  copy.push_back(next);
  return Path(std::move(copy));
}

std::string Path::ToString() const {
  std::string out;
  for (int t = 0; t < length(); ++t) {
    if (t > 0) out += '-';
    out += profiles_[t].ToBitString();
  }
  return out;
}

bool PathLeq(const Path& alpha, const Path& beta) {
  if (alpha.length() != beta.length() ||
      alpha.num_players() != beta.num_players()) {
    throw DimensionError("paths of different shape cannot be compared");
  }
  for (int t = 0; t < alpha.length(); ++t) {
    if (!ProfileLeq(alpha[t], beta[t])) return false;
  }
  return true;
}

std::vector<Path> EnumeratePaths(int num_players, int length,
                                 std::uint64_t max_paths) {
  if (length < 1) throw DimensionError("path length must be >= 1");
  const std::uint64_t per_step = ProfileCount(num_players);
  std::uint64_t total = 1;
  for (int t = 0; t < length; ++t) {
    if (total > max_paths / per_step) {
      throw BoundError("path enumeration |A|^T exceeds cap " +
                       std::to_string(max_paths));
    }
    total *= per_step;
  }
  std::vector<Path> out;
  out.reserve(total);
  std::vector<ActionProfile> buf(length);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    for (int t = length - 1; t >= 0; --t) {
      buf[t] = ActionProfile(num_players, rest % per_step);
      rest /= per_step;
    }
    out.emplace_back(buf);
  }
  return out;
}

}  // namespace loglin
