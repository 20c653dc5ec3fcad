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

#ifndef LOGLIN_RNG_H_
#define LOGLIN_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace loglin {

// SplitMix64 finalizer (Steele, Lea, Flood 2014). Bijective on 64-bit words.
std::uint64_t SplitMix64(std::uint64_t x);

// 64-bit FNV-1a of a label.
std::uint64_t HashLabel(std::string_view label);

// Seed of child stream `replica` of task `label` under `master`:
//   SplitMix64(SplitMix64(master ^ HashLabel(label)) + replica).
// Adding tasks or replicas never perturbs existing streams.
std::uint64_t DeriveSeed(std::uint64_t master, std::string_view label,
                         std::uint64_t replica);

// Stream of uniform doubles in [0,1) backed by std::mt19937_64, whose output
// sequence is fixed by the C++ standard. Uniform() uses the top 53 bits of
// each draw, so replays are bit-exact across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  // floor(u * n) for a fresh uniform u; n >= 1.
  int UniformIndex(int n);

  std::uint64_t seed() const { return seed_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace loglin

#endif  // LOGLIN_RNG_H_
