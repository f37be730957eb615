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

#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace nerio::cli;
  CLI::App app{"nerio: run and fuzz lease-based leader election scenarios"};
  app.require_subcommand(1);

  RunConfig run;
  std::string seeds;
  std::string checks;
  auto* run_cmd = app.add_subcommand("run", "run a scenario file for one or more seeds");
  run_cmd->add_option("--scenario", run.scenario_path, "scenario file")->required();
  run_cmd->add_option("--seeds", seeds, "seed or inclusive range A..B (default: the scenario's seed)");
  run_cmd->add_option("--out", run.out_dir, "output directory (default: $NERIO_OUT or nerio-out)");
  run_cmd->add_option("--checks", checks, "comma separated checks that decide the exit status");
  run_cmd->add_flag("--strict", run.strict, "exit 3 when a liveness check does not pass");
  run_cmd->add_flag("-v,--verbose", run.verbose, "print every check");

  FuzzConfig fuzz;
  std::string base;
  std::string mutation;
  std::string fuzz_out;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "run randomized variations of a base scenario");
  fuzz_cmd->add_option("--base", base, "base scenario file (default: built-in)");
  fuzz_cmd->add_option("--count", fuzz.count, "number of scenarios")->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--master-seed", fuzz.master_seed, "seed for the scenario generator");
  fuzz_cmd->add_option("--mutation", mutation,
                       "seeded bug: none, responder_shrink, initiator_stretch, overwrite_finish");
  fuzz_cmd->add_option("--out", fuzz_out, "directory for the summary and violating runs");
  fuzz_cmd->add_flag("-v,--verbose", fuzz.verbose, "print one line per scenario");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*run_cmd) {
      if (!seeds.empty()) run.seeds = parse_seed_range(seeds);
      std::size_t pos = 0;
      while (!checks.empty() && pos <= checks.size()) {
        auto comma = checks.find(',', pos);
        if (comma == std::string::npos) comma = checks.size();
        if (comma > pos) run.checks.push_back(checks.substr(pos, comma - pos));
        pos = comma + 1;
      }
      return run_command(run, std::cout, std::cerr);
    }
    if (!base.empty()) fuzz.base_path = base;
    if (!mutation.empty()) fuzz.mutation = nerio::parse_mutation(mutation);
    if (!fuzz_out.empty()) fuzz.out_dir = fuzz_out;
    return fuzz_command(fuzz, std::cout, std::cerr);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
}
