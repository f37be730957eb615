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

#include <map>

#include "nerio/clock.hpp"
#include "nerio/oracle.hpp"
#include "nerio/scenario.hpp"
#include "nerio/trace.hpp"

namespace nerio {

struct RunResult {
  Trace trace;  // ends with the oracle's verdict events
  Report report;
};

// Executes the scenario up to its horizon. Events are processed one at a
// time in (real time, process id, sequence) order; all randomness comes
// from the scenario seed, so equal scenarios give equal traces.
// Throws std::invalid_argument if the scenario does not validate.
Trace simulate(const Scenario& scenario);

// simulate() followed by the oracle.
RunResult run(const Scenario& scenario, const OracleOptions& options = {});

}  // namespace nerio
