// Copyright 2026 The Nerio Authors
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

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "nerio/fuzz.hpp"
#include "nerio/scenario.hpp"
#include "nerio/simnet.hpp"

namespace nerio::cli {

namespace fs = std::filesystem;
using nlohmann::json;

SeedRange parse_seed_range(const std::string& text) {
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("bad seed range '" + text + "' (expected N or A..B)");
    }
    return std::stoull(s);
  };
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    auto v = number(text);
    return {v, v};
  }
  SeedRange r{number(text.substr(0, dots)), number(text.substr(dots + 2))};
  if (r.last < r.first) throw std::invalid_argument("empty seed range '" + text + "'");
  return r;
}

std::string default_out_dir() {
  const char* env = std::getenv("NERIO_OUT");
  return env && *env ? env : "nerio-out";
}

std::string report_json(const Report& report, std::uint64_t seed, const std::string& scenario) {
  json j;
  j["schema"] = "nerio-report/1";
  j["seed"] = seed;
  j["scenario"] = scenario;
  j["checks"] = json::array();
  for (const auto& c : report.checks) {
    j["checks"].push_back({{"name", c.name}, {"verdict", to_string(c.verdict)}, {"detail", c.detail}});
  }
  j["safety_violation"] = report.safety_violation();
  j["liveness_shortfall"] = report.liveness_shortfall();
  j["first_election_after_gst"] =
      report.first_election_after_gst ? json(to_string(*report.first_election_after_gst)) : json(nullptr);
  j["latest_conflicting_expiry"] = to_string(report.latest_conflicting_expiry);
  j["leaders"] = json::array();
  for (const auto& iv : report.leaders) {
    j["leaders"].push_back({{"from", to_string(iv.from)},
                            {"to", to_string(iv.to)},
                            {"leader", iv.leader ? json(*iv.leader) : json(nullptr)}});
  }
  j["stats"] = {{"checkpoints", report.checkpoints},
                {"completions", report.completions},
                {"edicts", report.edicts},
                {"verifications", report.verifications}};
  return j.dump(2) + "\n";
}

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

bool selected(const std::vector<std::string>& checks, const std::string& name) {
  return checks.empty() || std::find(checks.begin(), checks.end(), name) != checks.end();
}

}  // namespace

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Scenario scenario;
  try {
    scenario = load_scenario(config.scenario_path);
  } catch (const ScenarioError& e) {
    err << config.scenario_path << ": " << e.what() << '\n';
    return kConfigError;
  }
  if (auto problem = validation_error(scenario); !problem.empty()) {
    err << config.scenario_path << ": invalid scenario: " << problem << '\n';
    return kConfigError;
  }
  static const std::vector<std::string> known = {"uniqueness",   "core_invariant", "grant_cover",    "qt_order",
                                                 "edict_validity", "edict_order", "verification", "epochs",
                                                 "stability",    "eventual_election"};
  for (const auto& c : config.checks) {
    if (std::find(known.begin(), known.end(), c) == known.end()) {
      err << "unknown check '" << c << "'\n";
      return kConfigError;
    }
  }

  SeedRange seeds = config.seeds ? *config.seeds : SeedRange{scenario.seed, scenario.seed};
  fs::path dir = config.out_dir.empty() ? fs::path(default_out_dir()) : fs::path(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    err << "cannot create output directory " << dir.string() << ": " << ec.message() << '\n';
    return kConfigError;
  }

  bool violation = false;
  bool shortfall = false;
  for (std::uint64_t seed = seeds.first;; ++seed) {
    scenario.seed = seed;
    RunResult r = run(scenario);
    std::string stem = "seed-" + std::to_string(seed);
    write_file(dir / (stem + ".trace"), emit_trace(r.trace));
    write_file(dir / (stem + ".json"), report_json(r.report, seed, config.scenario_path));
    std::string failed;
    for (const auto& c : r.report.checks) {
      if (!selected(config.checks, c.name)) continue;
      if (c.verdict == Verdict::Fail && !is_liveness_check(c.name)) violation = true;
      if (c.verdict != Verdict::Pass && is_liveness_check(c.name)) shortfall = true;
      if (c.verdict != Verdict::Pass) failed += " " + c.name + "=" + to_string(c.verdict);
      if (config.verbose || (c.verdict == Verdict::Fail && !is_liveness_check(c.name))) {
        out << "  " << c.name << ": " << to_string(c.verdict) << " (" << c.detail << ")\n";
      }
    }
    out << "seed " << seed << ": " << (failed.empty() ? "all checks pass" : failed.substr(1)) << '\n';
    if (seed == seeds.last) break;
  }
  out << "output in " << dir.string() << '\n';
  if (violation) return kSafetyViolation;
  if (config.strict && shortfall) return kInconclusiveStrict;
  return kPass;
}

int fuzz_command(const FuzzConfig& config, std::ostream& out, std::ostream& err) {
  if (config.count == 0) {
    err << "fuzz count must be at least 1\n";
    return kConfigError;
  }
  Scenario base = default_fuzz_base();
  if (config.base_path) {
    try {
      base = load_scenario(*config.base_path);
    } catch (const ScenarioError& e) {
      err << *config.base_path << ": " << e.what() << '\n';
      return kConfigError;
    }
    if (auto problem = validation_error(base); !problem.empty()) {
      err << *config.base_path << ": invalid scenario: " << problem << '\n';
      return kConfigError;
    }
  }
  std::optional<fs::path> dir;
  if (config.out_dir) {
    dir = fs::path(*config.out_dir);
    std::error_code ec;
    fs::create_directories(*dir, ec);
    if (ec) {
      err << "cannot create output directory " << dir->string() << ": " << ec.message() << '\n';
      return kConfigError;
    }
  }

  FuzzOptions options{config.master_seed, config.count, config.mutation};
  auto started = std::chrono::steady_clock::now();
  FuzzSummary summary = run_fuzz(base, options, [&](std::size_t k, const Scenario& s, const Trace& trace,
                                                    const Report& report) {
    if (config.verbose) {
      out << "scenario " << k << ": " << (report.safety_violation() ? "VIOLATION" : "safe") << '\n';
    }
    if (dir && report.safety_violation()) {
      std::string stem = "fuzz-" + std::to_string(k);
      write_file(*dir / (stem + ".scenario"), emit_scenario(s));
      write_file(*dir / (stem + ".trace"), emit_trace(trace));
      write_file(*dir / (stem + ".json"), report_json(report, s.seed, stem + ".scenario"));
    }
  });
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  json j;
  j["schema"] = "nerio-fuzz/1";
  j["master_seed"] = config.master_seed;
  j["mutation"] = to_string(config.mutation ? *config.mutation : base.mutation);
  j["runs"] = summary.runs;
  j["safety_violations"] = summary.safety_violations;
  j["liveness_shortfalls"] = summary.liveness_shortfalls;
  j["failing_runs_by_check"] = summary.failing_runs_by_check;
  j["first_failures"] = json::array();
  for (const auto& f : summary.first_failures) {
    j["first_failures"].push_back({{"index", f.index}, {"check", f.check}, {"detail", f.detail}});
  }
  j["seconds"] = seconds;
  std::string text = j.dump(2) + "\n";
  out << text;
  if (dir) write_file(*dir / "summary.json", text);
  return summary.safety_violations > 0 ? kSafetyViolation : kPass;
}

}  // namespace nerio::cli
