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

#ifndef LOGLIN_TOOLS_CLI_COMMANDS_H_
#define LOGLIN_TOOLS_CLI_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "loglin/dynamics.h"
#include "loglin/io.h"

namespace loglin::cli {

inline constexpr std::string_view kToolName = "loglin";
inline constexpr std::string_view kToolVersion = "0.1.0";

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

// Command-line overrides. Unset fields fall back to the config document.
struct Flags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  std::optional<std::string> mode;
  std::optional<int> reps;
  std::optional<int> jobs;
};

// Parsed config document plus the flags folded into it.
struct RunConfig {
  std::string subcommand;
  nlohmann::json doc;
  std::string digest;  // SHA-256 of the config file bytes
  GameSpec game;
  std::uint64_t seed = 0;
  ProbMode mode = ProbMode::kExactLifted;
  int reps = 0;
  int jobs = 1;
  int length = 10;                 // "T"
  std::vector<double> taus;        // "tau" or "taus"
  std::filesystem::path out_dir;
};

struct Output {
  std::string name;
  std::string contents;
  std::vector<std::string> columns;  // CSV header, empty for JSON
};

struct CommandResult {
  int exit_code = kExitOk;
  std::vector<Output> outputs;
  std::string message;  // one-line summary for standard error on failure
};

// Reads and validates the config. Throws ConfigError.
RunConfig LoadRunConfig(std::string_view subcommand, const Flags& flags);

CommandResult CmdSimulate(const RunConfig& config);
CommandResult CmdVerify(const RunConfig& config);
CommandResult CmdDominance(const RunConfig& config);
CommandResult CmdSweep(const RunConfig& config);
CommandResult CmdEpidemic(const RunConfig& config);

// Dispatches, writes outputs and the manifest, and maps errors to exit codes.
int Run(std::string_view subcommand, const Flags& flags);

std::string Sha256Hex(std::string_view bytes);

// Writes `contents` to `<path>.tmp` and renames it over `path`.
void WriteFileAtomically(const std::filesystem::path& path,
                         std::string_view contents);

}  // namespace loglin::cli

#endif  // LOGLIN_TOOLS_CLI_COMMANDS_H_
