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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nerio/oracle.hpp"
#include "nerio/process.hpp"
#include "nerio/scenario.hpp"

namespace nerio {

// Base used when no scenario is given: five processes, d = 1, horizon 120.
Scenario default_fuzz_base();

// The index-th randomized variation of `base`, fully determined by
// (master_seed, index). Randomizes process count (5-7), variant, rho in
// [1e-4, 1e-2], skew, GST, latencies, pre-GST loss up to 1/2, 0-3 crashes,
// 0-2 partitions, adversarial or random clock rates, the delta policy,
// renewal, scheduled releases and acquisitions, and occasionally a
// reconfiguration. Protocol timing (d, i, retry, timeout, edict period) and
// the horizon come from the base.
Scenario fuzz_scenario(const Scenario& base, std::uint64_t master_seed, std::size_t index,
                       std::optional<Mutation> mutation = std::nullopt);

struct FuzzOptions {
  std::uint64_t master_seed = 0;
  std::size_t count = 1;
  std::optional<Mutation> mutation;
};

struct FuzzFailure {
  std::size_t index = 0;
  std::string check;
  std::string detail;
};

struct FuzzSummary {
  std::size_t runs = 0;
  std::size_t safety_violations = 0;   // runs with at least one failing safety check
  std::size_t liveness_shortfalls = 0; // runs with a non-passing liveness check
  std::map<std::string, std::size_t> failing_runs_by_check;
  std::vector<FuzzFailure> first_failures;  // at most 10
};

using FuzzObserver = std::function<void(std::size_t index, const Scenario&, const Trace&, const Report&)>;

FuzzSummary run_fuzz(const Scenario& base, const FuzzOptions& options, const FuzzObserver& observer = {});

}  // namespace nerio
