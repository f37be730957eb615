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

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nerio/oracle.hpp"
#include "nerio/process.hpp"

namespace nerio::cli {

enum ExitCode : int {
  kPass = 0,
  kSafetyViolation = 1,
  kConfigError = 2,
  kInconclusiveStrict = 3,
};

struct SeedRange {
  std::uint64_t first = 0;
  std::uint64_t last = 0;
};

// "7" or "1..100" (inclusive). Throws std::invalid_argument.
SeedRange parse_seed_range(const std::string& text);

struct RunConfig {
  std::string scenario_path;
  std::optional<SeedRange> seeds;  // default: the scenario's own seed
  std::string out_dir;
  std::vector<std::string> checks;  // empty: all checks count
  bool strict = false;
  bool verbose = false;
};

struct FuzzConfig {
  std::optional<std::string> base_path;
  std::size_t count = 100;
  std::uint64_t master_seed = 0;
  std::optional<Mutation> mutation;
  std::optional<std::string> out_dir;
  bool verbose = false;
};

// Output directory from NERIO_OUT, falling back to "nerio-out".
std::string default_out_dir();

// Report as JSON text (schema "nerio-report/1").
std::string report_json(const Report& report, std::uint64_t seed, const std::string& scenario);

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);
int fuzz_command(const FuzzConfig& config, std::ostream& out, std::ostream& err);

}  // namespace nerio::cli
