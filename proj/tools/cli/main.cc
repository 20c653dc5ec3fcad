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

#include <string>

#include "CLI11.hpp"
#include "commands.h"

int main(int argc, char** argv) {
  CLI::App app{"Log-linear learning: simulation, coupling checks, experiments"};
  app.require_subcommand(1);
  loglin::cli::Flags flags;
  auto add_common = [&flags](CLI::App* sub) {
    sub->add_option("--config", flags.config_path, "Run config (JSON)")
        ->required();
    sub->add_option("--seed", flags.seed, "Master seed");
    sub->add_option("--out", flags.out_dir, "Output directory");
    sub->add_option("--mode", flags.mode,
                    "exact-paths | exact-lifted | monte-carlo");
    sub->add_option("--reps", flags.reps, "Monte Carlo replicas");
    sub->add_option("--jobs", flags.jobs, "Worker threads");
  };
  for (const char* name : {"simulate", "verify", "dominance", "sweep", "epidemic"}) {
    add_common(app.add_subcommand(name));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : loglin::cli::kExitConfig;
  }
  const std::string sub = app.get_subcommands().front()->get_name();
  return loglin::cli::Run(sub, flags);
}
