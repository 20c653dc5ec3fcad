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

#include "commands.h"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <system_error>
#include <utility>

#include "loglin/alignment.h"
#include "loglin/coupling.h"
#include "loglin/epidemic.h"
#include "loglin/errors.h"
#include "loglin/games.h"
#include "loglin/rng.h"

namespace loglin::cli {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

void WriteFileAtomically(const fs::path& path, std::string_view contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw Error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename " + tmp.string() + ": " + ec.message());
  }
}

namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string UtcNow() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

template <typename T>
T Field(const nlohmann::json& obj, const char* key, T fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

// Joins CSV cells; cells never contain separators.
class Csv {
 public:
  explicit Csv(std::vector<std::string> columns) : columns_(std::move(columns)) {
    Row(columns_);
  }
  void Row(const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) text_ += ',';
      text_ += cells[k];
    }
    text_ += '\n';
  }
  Output Finish(std::string name) && {
    return Output{std::move(name), std::move(text_), std::move(columns_)};
  }

 private:
  std::vector<std::string> columns_;
  std::string text_;
};

std::string Num(double x) { return FormatDouble(x); }
std::string Int(std::int64_t x) { return std::to_string(x); }
std::string UInt(std::uint64_t x) { return std::to_string(x); }

Output JsonOutput(std::string name, const ordered_json& doc) {
  return Output{std::move(name), doc.dump(2) + "\n", {}};
}

// Initial law named by the config: "uniform", "gibbs-reference" or a
// bitstring for a point mass. sisgcg games default to their initial_profile.
Distribution InitialLaw(const RunConfig& config, const PotentialGame& g_hat,
                        double tau) {
  const int n = config.game.n_players;
  std::string name = Field<std::string>(config.doc, "initial", "");
  if (name.empty()) {
    if (config.game.sisgcg) return InitialProfileLaw(*config.game.sisgcg);
    name = "uniform";
  }
  if (name == "uniform") return Distribution::Uniform(n);
  if (name == "gibbs-reference") {
    return GibbsDistribution(g_hat, Temperature(tau));
  }
  return Distribution::PointMass(ActionProfile::FromBitString(name));
}

std::uint64_t RandomBits(Rng& rng, int n) {
  std::uint64_t bits = 0;
  for (int i = 0; i < n; ++i) bits = (bits << 1) | (rng.Uniform() < 0.5 ? 1u : 0u);
  return bits;
}

ordered_json WitnessJson(const AlignmentViolation& v) {
  ordered_json w;
  w["condition"] = v.condition;
  w["path"] = v.path ? v.path->ToString() : "";
  w["profile"] = v.profile.ToBitString();
  w["agent"] = v.agent + 1;
  w["lhs"] = v.lhs;
  w["rhs"] = v.rhs;
  return w;
}

ordered_json Skipped(const std::string& name, const std::string& why) {
  ordered_json r;
  r["name"] = name;
  r["status"] = "skipped: bound";
  r["detail"] = why;
  return r;
}

std::string Status(bool ok) { return ok ? "pass" : "fail"; }

struct CheckContext {
  const RunConfig& config;
  const GamePair& pair;
};

ordered_json CheckExactPotential(const CheckContext& ctx,
                                 const nlohmann::json& spec) {
  const int cap = Field<int>(spec, "max_n", kDefaultEnumerationCap);
  const PotentialCheck c = VerifyExactPotential(ctx.pair.g_hat,
                                                kUtilityTolerance, cap);
  ordered_json r;
  r["name"] = "exact_potential";
  r["status"] = Status(c.ok);
  r["max_residual"] = c.max_residual;
  if (c.witness) {
    r["witness"] = {{"from", c.witness->from.ToBitString()},
                    {"to", c.witness->to.ToBitString()},
                    {"agent", c.witness->agent + 1},
                    {"utility_difference", c.witness->utility_difference},
                    {"potential_difference", c.witness->potential_difference}};
  }
  return r;
}

ordered_json CheckAlignment(const CheckContext& ctx, const nlohmann::json& spec) {
  AlignmentOptions opt;
  const std::string mode = Field<std::string>(spec, "mode", "enumerate");
  if (mode == "enumerate") {
    opt.mode = AlignmentMode::kEnumerate;
  } else if (mode == "sample") {
    opt.mode = AlignmentMode::kSample;
  } else if (mode == "analytic-bounds") {
    opt.mode = AlignmentMode::kAnalyticBounds;
    if (!ctx.config.game.sisgcg) {
      throw ConfigError("analytic-bounds alignment needs a sisgcg game");
    }
    opt.bounds = SisAnalyticBounds(*ctx.config.game.sisgcg);
  } else {
    throw ConfigError("unknown alignment mode '" + mode + "'");
  }
  opt.max_length = Field<int>(spec, "max_T", 3);
  opt.samples = Field<int>(spec, "samples", 1000);
  opt.seed = DeriveSeed(ctx.config.seed, "verify.alignment", 0);
  const AlignmentReport a = VerifyAlignment(ctx.pair.g, ctx.pair.g_hat, opt);
  ordered_json r;
  r["name"] = "alignment";
  r["status"] = Status(a.is_aligned);
  r["mode"] = std::string(AlignmentModeName(a.mode));
  r["checks"] = a.checks;
  double worst = 0.0;
  ordered_json witnesses = ordered_json::array();
  for (const auto& v : a.violations) {
    worst = std::max(worst, v.rhs - v.lhs);
    witnesses.push_back(WitnessJson(v));
  }
  r["max_residual"] = worst;
  r["violations"] = witnesses;
  return r;
}

ordered_json CheckBijection(const CheckContext& ctx, const nlohmann::json& spec) {
  const int n = ctx.config.game.n_players;
  const int cap = Field<int>(spec, "max_n", 12);
  if (n > cap) return Skipped("bijection", "N exceeds max_n");
  std::uint64_t pairs = 0;
  std::uint64_t failures = 0;
  std::string detail;
  for (std::uint64_t hi = 0; hi < ProfileCount(n); ++hi) {
    for (std::uint64_t lo = hi;; lo = (lo - 1) & hi) {  // submasks of hi
      const BijectionCheck c =
          VerifyBijection(ActionProfile(n, lo), ActionProfile(n, hi));
      ++pairs;
      if (!c.ok) {
        ++failures;
        if (detail.empty()) {
          detail = ActionProfile(n, lo).ToBitString() + " <= " +
                   ActionProfile(n, hi).ToBitString() + ": " + c.detail;
        }
      }
      if (lo == 0) break;
    }
  }
  ordered_json r;
  r["name"] = "bijection";
  r["status"] = Status(failures == 0);
  r["pairs"] = pairs;
  r["failures"] = failures;
  if (!detail.empty()) r["detail"] = detail;
  return r;
}

ordered_json CheckOneStep(const CheckContext& ctx, const nlohmann::json& spec) {
  const int n = ctx.config.game.n_players;
  const int samples = Field<int>(spec, "samples", 1000);
  const int max_t = Field<int>(spec, "max_T", 8);
  const auto taus =
      Field<std::vector<double>>(spec, "taus", std::vector<double>{0.1, 1, 10});
  if (samples < 1 || max_t < 1) throw ConfigError("one_step needs samples, max_T >= 1");
  Rng rng(DeriveSeed(ctx.config.seed, "verify.one_step", 0));
  double lower_residual = 0.0;
  double upper_residual = 0.0;
  double total_residual = 0.0;
  std::uint64_t couplings = 0;
  std::string detail;
  std::optional<ordered_json> witness;
  for (int k = 0; k < samples; ++k) {
    const int length = 1 + rng.UniformIndex(max_t);
    std::vector<ActionProfile> profiles;
    for (int t = 0; t < length; ++t) {
      profiles.emplace_back(n, RandomBits(rng, n));
    }
    const Path alpha(std::move(profiles));
    const ActionProfile a(n, alpha.back().bits() & RandomBits(rng, n));
    for (double tau : taus) {
      ++couplings;
      try {
        const OneStepCoupling nu = BuildOneStepCoupling(
            ctx.pair.g, ctx.pair.g_hat, alpha, a, Temperature(tau));
        const OneStepReport rep = VerifyOneStep(nu, ctx.pair.g, ctx.pair.g_hat,
                                                alpha, a, Temperature(tau));
        lower_residual = std::max(lower_residual, rep.max_lower_residual);
        upper_residual = std::max(upper_residual, rep.max_upper_residual);
        total_residual =
            std::max(total_residual, std::abs(rep.total_mass - 1.0));
        if (!rep.ok && detail.empty()) detail = rep.detail;
        if (!rep.ok && !witness) {
          witness = ordered_json{{"path", alpha.ToString()},
                                 {"profile", a.ToBitString()},
                                 {"tau", tau}};
        }
      } catch (const AlignmentViolationError& e) {
        if (detail.empty()) detail = e.what();
        if (!witness) {
          witness = ordered_json{{"path", alpha.ToString()},
                                 {"profile", a.ToBitString()},
                                 {"tau", tau}};
        }
      }
    }
  }
  ordered_json r;
  r["name"] = "one_step";
  r["status"] = Status(detail.empty());
  r["couplings"] = couplings;
  r["max_residual"] = std::max({lower_residual, upper_residual, total_residual});
  r["max_lower_marginal_residual"] = lower_residual;
  r["max_upper_marginal_residual"] = upper_residual;
  r["max_total_mass_residual"] = total_residual;
  if (!detail.empty()) r["detail"] = detail;
  if (witness) r["witness"] = *witness;
  return r;
}

ordered_json CheckUpdateMonotonicity(const CheckContext& ctx,
                                     const nlohmann::json& spec) {
  const int n = ctx.config.game.n_players;
  const int max_t = Field<int>(spec, "max_T", 3);
  const double tau = Field<double>(spec, "tau", 1.0);
  const auto cap = Field<std::uint64_t>(spec, "max_paths", 1ULL << 20);
  std::uint64_t instances = 0;
  std::uint64_t not_met = 0;
  std::uint64_t failures = 0;
  std::optional<ordered_json> witness;
  for (int t = 1; t <= max_t; ++t) {
    std::vector<Path> paths;
    try {
      paths = EnumeratePaths(n, t, cap);
    } catch (const BoundError& e) {
      return Skipped("update_monotonicity", e.what());
    }
    for (const Path& alpha : paths) {
      for (std::uint64_t b = 0; b < ProfileCount(n); ++b) {
        const ActionProfile a(n, b);
        for (int i = 0; i < n; ++i) {
          if (!ProfileLeqExcept(a, alpha.back(), i)) continue;
          ++instances;
          const MonotonicityResult res = VerifyUpdateMonotonicity(
              ctx.pair.g, ctx.pair.g_hat, alpha, a, i, Temperature(tau));
          not_met += res.outcome == MonotonicityOutcome::kHypothesisNotMet;
          if (!res.ok()) {
            ++failures;
            if (!witness) {
              witness = ordered_json{{"path", alpha.ToString()},
                                     {"profile", a.ToBitString()},
                                     {"agent", i + 1},
                                     {"upper_p1", res.upper_p1},
                                     {"lower_p1", res.lower_p1}};
            }
          }
        }
      }
    }
  }
  ordered_json r;
  r["name"] = "update_monotonicity";
  r["status"] = Status(failures == 0);
  r["instances"] = instances;
  r["hypothesis_not_met"] = not_met;
  r["failures"] = failures;
  if (witness) r["witness"] = *witness;
  return r;
}

ordered_json CheckPathCoupling(const CheckContext& ctx,
                               const nlohmann::json& spec,
                               const std::string& name) {
  const int length = Field<int>(spec, "T", 3);
  const double tau = Field<double>(spec, "tau", 0.5);
  const auto max_pairs = Field<std::uint64_t>(spec, "max_pairs", 1ULL << 24);
  const Distribution pi = InitialLaw(ctx.config, ctx.pair.g_hat, tau);
  PathCouplingReport rep;
  try {
    rep = VerifyPathCoupling(ctx.pair.g, ctx.pair.g_hat, pi, length,
                             Temperature(tau), kPathMeasureTolerance, max_pairs);
  } catch (const BoundError& e) {
    return Skipped(name, e.what());
  }
  const ExpectationGapResult at_end = ExpectationGap(
      [](const Path& p) { return std::int64_t{p.back().IsOnes()}; }, rep.table);
  const ExpectationGapResult visits = ExpectationGap(
      [](const Path& p) {
        std::int64_t k = 0;
        for (const auto& a : p) k += a.IsOnes();
        return k;
      },
      rep.table);
  const double gap_residual =
      std::max(std::abs(at_end.difference), std::abs(visits.difference));
  const bool gap_ok = gap_residual <= kPathMeasureTolerance;
  ordered_json r;
  r["name"] = name;
  ordered_json gaps = ordered_json::array();
  for (const auto& [label, g] :
       {std::pair{"final_all_ones", at_end}, std::pair{"time_at_all_ones", visits}}) {
    gaps.push_back({{"statistic", label},
                    {"expectation_difference", g.expectation_difference},
                    {"coupling_sum", g.coupling_sum},
                    {"difference", g.difference}});
  }
  if (name == "expectation_gap") {
    r["status"] = Status(gap_ok);
    r["max_residual"] = gap_residual;
  } else {
    r["status"] = Status(rep.ok && gap_ok);
    r["max_residual"] =
        std::max({rep.max_lower_residual, rep.max_upper_residual,
                  std::abs(rep.total_mass - 1.0), gap_residual});
    r["pairs"] = rep.pairs;
    r["monotone_support"] = rep.monotone_support;
    r["total_mass"] = rep.total_mass;
    r["max_lower_marginal_residual"] = rep.max_lower_residual;
    r["max_upper_marginal_residual"] = rep.max_upper_residual;
    if (!rep.detail.empty()) r["detail"] = rep.detail;
  }
  r["expectation_gaps"] = gaps;
  return r;
}

}  // namespace

RunConfig LoadRunConfig(std::string_view subcommand, const Flags& flags) {
  RunConfig config;
  config.subcommand = std::string(subcommand);
  if (flags.config_path.empty()) throw ConfigError("--config is required");
  const std::string text = ReadFile(flags.config_path);
  config.digest = Sha256Hex(text);
  try {
    config.doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!config.doc.is_object()) throw ConfigError("config must be a JSON object");
  if (!config.doc.contains("game")) throw ConfigError("missing field 'game'");
  config.game = ParseGameSpec(config.doc.at("game").dump());

  config.seed = flags.seed ? *flags.seed
                           : Field<std::uint64_t>(config.doc, "seed", 0);
  const std::string mode =
      flags.mode ? *flags.mode
                 : Field<std::string>(config.doc, "mode", "exact-lifted");
  try {
    config.mode = ParseProbMode(mode);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  const bool has_reps = flags.reps || config.doc.contains("reps");
  config.reps = flags.reps ? *flags.reps : Field<int>(config.doc, "reps", 0);
  if (has_reps && config.reps < 1) throw ConfigError("reps must be >= 1");
  if (config.mode == ProbMode::kMonteCarlo && config.reps < 1) {
    throw ConfigError("monte-carlo mode needs reps >= 1");
  }
  config.jobs = flags.jobs ? *flags.jobs : Field<int>(config.doc, "jobs", 1);
  if (config.jobs < 1) throw ConfigError("jobs must be >= 1");
  config.length = Field<int>(config.doc, "T", 10);
  if (config.length < 1) throw ConfigError("T must be >= 1");

  if (config.doc.contains("taus")) {
    config.taus = Field<std::vector<double>>(config.doc, "taus", {});
  } else {
    config.taus = {Field<double>(config.doc, "tau", 1.0)};
  }
  if (config.taus.empty()) throw ConfigError("temperature schedule is empty");
  for (std::size_t k = 0; k < config.taus.size(); ++k) {
    if (!(config.taus[k] > 0.0) || !std::isfinite(config.taus[k])) {
      throw ConfigError("temperatures must be positive and finite");
    }
    if (k > 0 && !(config.taus[k] < config.taus[k - 1])) {
      throw ConfigError("temperature schedule must be strictly decreasing");
    }
  }
  const std::string initial = Field<std::string>(config.doc, "initial", "");
  if (!initial.empty() && initial != "uniform" && initial != "gibbs-reference") {
    try {
      if (ActionProfile::FromBitString(initial).size() !=
          config.game.n_players) {
        throw ConfigError("initial profile has the wrong length");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(std::string("initial: ") + e.what());
    }
  }
  config.out_dir = flags.out_dir;
  return config;
}

CommandResult CmdSimulate(const RunConfig& config) {
  const GamePair pair = BuildGamePair(config.game, 0);
  const double tau = config.taus.front();
  const Distribution pi = InitialLaw(config, pair.g_hat, tau);
  const SimRun run = Simulate(pair.g, pi, Temperature(tau), config.length,
                              DeriveSeed(config.seed, "simulate", 0));
  Csv csv({"t", "profile", "updater"});
  for (int t = 0; t < run.path.length(); ++t) {
    csv.Row({Int(t + 1), run.path[t].ToBitString(),
             Int(t == 0 ? 0 : run.updaters[t - 1] + 1)});
  }
  CommandResult result;
  result.outputs.push_back(std::move(csv).Finish("path.csv"));
  return result;
}

CommandResult CmdVerify(const RunConfig& config) {
  const nlohmann::json checks =
      config.doc.contains("checks") ? config.doc.at("checks")
                                    : nlohmann::json::array();
  if (!checks.is_array()) throw ConfigError("'checks' must be an array");
  std::vector<std::pair<std::string, nlohmann::json>> plan;
  for (const auto& c : checks) {
    if (c.is_string()) {
      plan.emplace_back(c.get<std::string>(), nlohmann::json::object());
    } else if (c.is_object() && c.contains("name") && c.at("name").is_string()) {
      plan.emplace_back(c.at("name").get<std::string>(), c);
    } else {
      throw ConfigError("each check is a name or an object with a name");
    }
    static const std::vector<std::string> kKnown = {
        "exact_potential", "alignment", "bijection", "one_step",
        "update_monotonicity",          "path_coupling", "expectation_gap"};
    if (std::find(kKnown.begin(), kKnown.end(), plan.back().first) ==
        kKnown.end()) {
      throw ConfigError("unknown check '" + plan.back().first + "'");
    }
  }
  const GamePair pair = BuildGamePair(config.game);
  const CheckContext ctx{config, pair};
  ordered_json report;
  report["game"] = std::string(GameKindName(config.game.kind));
  report["n_players"] = config.game.n_players;
  report["seed"] = config.seed;
  ordered_json results = ordered_json::array();
  bool all_ok = true;
  std::string first_failure;
  for (const auto& [name, spec] : plan) {
    ordered_json r;
    try {
      if (name == "exact_potential") {
        r = CheckExactPotential(ctx, spec);
      } else if (name == "alignment") {
        r = CheckAlignment(ctx, spec);
      } else if (name == "bijection") {
        r = CheckBijection(ctx, spec);
      } else if (name == "one_step") {
        r = CheckOneStep(ctx, spec);
      } else if (name == "update_monotonicity") {
        r = CheckUpdateMonotonicity(ctx, spec);
      } else {
        r = CheckPathCoupling(ctx, spec, name);
      }
    } catch (const BoundError& e) {
      r = Skipped(name, e.what());
    }
    if (r["status"] == "fail") {
      all_ok = false;
      if (first_failure.empty()) first_failure = name;
    }
    results.push_back(std::move(r));
  }
  report["ok"] = all_ok;
  report["checks"] = std::move(results);
  CommandResult result;
  result.outputs.push_back(JsonOutput("report.json", report));
  if (!all_ok) {
    result.exit_code = kExitFailure;
    result.message = "verification failed: " + first_failure;
  }
  return result;
}

CommandResult CmdDominance(const RunConfig& config) {
  const GamePair pair = BuildGamePair(config.game);
  CommandResult result;
  if (Field<bool>(config.doc, "alignment_precheck", false)) {
    AlignmentOptions opt;
    opt.max_length = Field<int>(config.doc, "precheck_max_T", 2);
    if (!VerifyAlignment(pair.g, pair.g_hat, opt).is_aligned) {
      result.exit_code = kExitFailure;
      result.message = "alignment pre-check failed";
      return result;
    }
  }
  Csv csv({"T", "p_g", "p_ghat", "gap", "mode", "p_g_stderr", "tau"});
  ordered_json summary;
  summary["ok"] = true;
  summary["rows"] = ordered_json::array();
  for (std::size_t k = 0; k < config.taus.size(); ++k) {
    const double tau = config.taus[k];
    DominanceOptions opt;
    opt.prob.mode = config.mode;
    opt.prob.reps = config.reps;
    opt.prob.jobs = config.jobs;
    opt.prob.seed = DeriveSeed(config.seed, "dominance", k);
    opt.seed = opt.prob.seed;
    opt.random_upper_sets = Field<int>(config.doc, "random_upper_sets", 4);
    const Distribution pi = InitialLaw(config, pair.g_hat, tau);
    const DominanceReport rep = DominanceCheck(pair.g, pair.g_hat, pi,
                                               Temperature(tau), config.length,
                                               opt);
    for (const DominanceRow& row : rep.rows) {
      csv.Row({Int(row.length), Num(row.p_g), Num(row.p_ghat), Num(row.gap),
               std::string(ProbModeName(rep.mode)), Num(row.p_g_std_error),
               Num(tau)});
    }
    std::size_t upper_ok = 0;
    for (const auto& u : rep.upper_sets) upper_ok += u.ok;
    summary["rows"].push_back({{"tau", tau},
                               {"ok", rep.ok},
                               {"violation_T", rep.violation_length.value_or(0)},
                               {"upper_sets_checked", rep.upper_sets.size()},
                               {"upper_sets_ok", upper_ok},
                               {"detail", rep.detail}});
    if (!rep.ok) {
      summary["ok"] = false;
      result.exit_code = kExitFailure;
      if (result.message.empty()) {
        result.message = "tau=" + Num(tau) + ": " + rep.detail;
      }
    }
  }
  result.outputs.push_back(std::move(csv).Finish("dominance.csv"));
  result.outputs.push_back(JsonOutput("dominance.json", summary));
  return result;
}

CommandResult CmdSweep(const RunConfig& config) {
  CommandResult result;
  const std::string experiment = Field<std::string>(
      config.doc, "experiment", config.game.sisgcg ? "occupancy" : "stability");
  if (experiment == "occupancy") {
    if (!config.game.sisgcg) {
      throw ConfigError("the occupancy experiment needs a sisgcg game");
    }
    SsOptions opt;
    opt.burn_in = Field<int>(config.doc, "burn_in", 2000);
    opt.horizon = Field<int>(config.doc, "horizon", 10000);
    opt.reps = config.reps > 0 ? config.reps : 1000;
    opt.seed = config.seed;
    opt.jobs = config.jobs;
    const std::string initial =
        Field<std::string>(config.doc, "initial", "gibbs-reference");
    if (initial == "gibbs-reference") {
      opt.initial = InitialLaw::kGibbsReference;
    } else if (initial == "uniform") {
      opt.initial = InitialLaw::kUniform;
    } else {
      throw ConfigError("occupancy experiment initial law must be "
                        "gibbs-reference or uniform");
    }
    if (opt.burn_in < 0 || opt.horizon < 1) {
      throw ConfigError("need burn_in >= 0 and horizon >= 1");
    }
    const SsResult ss = SsExperiment(*config.game.sisgcg, config.taus, opt);
    Csv csv({"tau", "occupancy", "stderr", "post_entry_occupancy",
             "post_entry_stderr", "entered_reps", "gibbs_anchor", "seed"});
    for (const SsRow& row : ss.rows) {
      csv.Row({Num(row.tau), Num(row.occupancy), Num(row.occupancy_std_error),
               Num(row.post_entry_occupancy), Num(row.post_entry_std_error),
               Int(row.entered_reps), Num(row.gibbs_anchor), UInt(row.seed)});
    }
    result.outputs.push_back(std::move(csv).Finish("occupancy.csv"));
    ordered_json notes;
    notes["warnings"] = ss.warnings;
    result.outputs.push_back(JsonOutput("warnings.json", notes));
    return result;
  }
  if (experiment != "stability") {
    throw ConfigError("unknown experiment '" + experiment + "'");
  }
  const GamePair pair = BuildGamePair(config.game);
  ProbOptions opt;
  opt.mode = config.mode;
  opt.reps = config.reps;
  opt.seed = config.seed;
  opt.jobs = config.jobs;
  const Distribution pi = InitialLaw(config, pair.g_hat, config.taus.front());
  const std::vector<SweepRow> rows =
      StabilitySweep(pair.g, pi, config.taus, config.length, opt);
  Csv csv({"tau", "T", "mode", "estimate", "stderr", "seed"});
  for (const SweepRow& row : rows) {
    csv.Row({Num(row.tau), Int(row.length), std::string(ProbModeName(row.mode)),
             Num(row.estimate.value), Num(row.estimate.std_error),
             UInt(row.seed)});
  }
  result.outputs.push_back(std::move(csv).Finish("sweep.csv"));
  return result;
}

CommandResult CmdEpidemic(const RunConfig& config) {
  if (!config.game.sisgcg) throw ConfigError("epidemic needs a sisgcg game");
  const SisgcgConfig& sis = *config.game.sisgcg;
  const int runs = Field<int>(config.doc, "runs", 1);
  const int n_steps = Field<int>(config.doc, "n_steps", 1000);
  const bool dump_all = Field<bool>(config.doc, "dump_all", false);
  if (runs < 1 || n_steps < 0) throw ConfigError("need runs >= 1, n_steps >= 0");
  const double tau = config.taus.front();
  const Distribution pi =
      InitialLaw(config, MakeReferenceGcg(sis).game, tau);
  const std::vector<std::string> traj_cols = {
      "t", "s", "I", "beta", "profile", "last_updater", "tau"};
  Csv summary({"run", "seed", "entered", "entry_index", "entry_time",
               "violations", "final_s"});
  CommandResult result;
  int failures = 0;
  for (int r = 0; r < runs; ++r) {
    const std::uint64_t seed =
        DeriveSeed(config.seed, "epidemic", static_cast<std::uint64_t>(r));
    const Trajectory traj = RunSisgcg(sis, pi, Temperature(tau), n_steps, seed);
    const InvarianceReport inv =
        CheckInvariance(traj.rows, sis.gamma, sis.beta1);
    failures += !inv.ok();
    summary.Row({Int(r), UInt(seed), inv.entry_index ? "1" : "0",
                 inv.entry_index ? UInt(*inv.entry_index) : "",
                 inv.entry_time ? Num(*inv.entry_time) : "",
                 UInt(inv.violations.size()), Num(traj.rows.back().s)});
    if (r == 0 || dump_all) {
      Csv csv(traj_cols);
      for (const TrajectoryRow& row : traj.rows) {
        csv.Row({Num(row.t), Num(row.s), Num(1.0 - row.s), Num(row.beta),
                 row.profile.ToBitString(), Int(row.last_updater), Num(tau)});
      }
      char name[48];
      std::snprintf(name, sizeof(name), dump_all ? "trajectory_%04d.csv"
                                                 : "trajectory.csv", r);
      result.outputs.push_back(std::move(csv).Finish(name));
    }
  }
  result.outputs.push_back(std::move(summary).Finish("invariance.csv"));
  if (failures > 0) {
    result.exit_code = kExitFailure;
    result.message = std::to_string(failures) +
                     " run(s) failed the invariant-set check";
  }
  return result;
}

int Run(std::string_view subcommand, const Flags& flags) {
  const std::string started = UtcNow();
  RunConfig config;
  CommandResult result;
  try {
    config = LoadRunConfig(subcommand, flags);
    if (subcommand == "simulate") {
      result = CmdSimulate(config);
    } else if (subcommand == "verify") {
      result = CmdVerify(config);
    } else if (subcommand == "dominance") {
      result = CmdDominance(config);
    } else if (subcommand == "sweep") {
      result = CmdSweep(config);
    } else if (subcommand == "epidemic") {
      result = CmdEpidemic(config);
    } else {
      throw ConfigError("unknown subcommand '" + std::string(subcommand) + "'");
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }

  try {
    fs::create_directories(config.out_dir);
    ordered_json manifest;
    manifest["tool"] = std::string(kToolName);
    manifest["version"] = std::string(kToolVersion);
    manifest["subcommand"] = config.subcommand;
    manifest["config_digest"] = config.digest;
    manifest["master_seed"] = config.seed;
    manifest["started_at"] = started;
    manifest["exit_code"] = result.exit_code;
    ordered_json outputs = ordered_json::array();
    for (const Output& out : result.outputs) {
      WriteFileAtomically(config.out_dir / out.name, out.contents);
      ordered_json entry;
      entry["file"] = out.name;
      entry["sha256"] = Sha256Hex(out.contents);
      entry["bytes"] = out.contents.size();
      if (!out.columns.empty()) entry["columns"] = out.columns;
      outputs.push_back(std::move(entry));
    }
    manifest["outputs"] = std::move(outputs);
    manifest["finished_at"] = UtcNow();
    WriteFileAtomically(config.out_dir / "manifest.json",
                        manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  if (!result.message.empty()) std::cerr << result.message << "\n";
  return result.exit_code;
}

}  // namespace loglin::cli
