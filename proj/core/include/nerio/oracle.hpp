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
#include <optional>
#include <string>
#include <vector>

#include "nerio/clock.hpp"
#include "nerio/membership.hpp"
#include "nerio/scenario.hpp"
#include "nerio/trace.hpp"

namespace nerio {

// What the oracle knows beyond the trace: membership and the exact clocks.
struct OracleContext {
  std::vector<EpochConfig> epochs;
  std::map<ProcessId, ClockSchedule> clocks;
  RealTime gst = 0;
  RealTime horizon = 0;
  Duration latency_bound = 0;

  static OracleContext from(const Scenario& scenario);
  static OracleContext from(const Scenario& scenario, std::map<ProcessId, ClockSchedule> clocks);
};

struct ProcessSnapshot {
  std::optional<ProcessId> assignee;
  ClockValue finish;
  ClockValue expiration;
};

// Protocol variables of every process at one real time, rebuilt from the
// trace's state events. Processes without a state event yet hold their
// initial values (A = self, F = E = 0).
struct GlobalSnapshot {
  RealTime t;
  std::map<ProcessId, ProcessSnapshot> processes;
  const std::map<ProcessId, ClockSchedule>* clocks = nullptr;
};

// State after every trace event with time <= t has been applied.
GlobalSnapshot snapshot_at(const OracleContext& ctx, const Trace& trace, const RealTime& t);

// A_q = p and C_q(t) < F_q, with C_q evaluated exactly.
bool gamma(const GlobalSnapshot& snapshot, ProcessId p, ProcessId q);

// Some quorum of `quorums` grants to p at the snapshot's time.
bool true_is_leader(const GlobalSnapshot& snapshot, ProcessId p, const QuorumSystem& quorums);

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);

struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::Pass;
  std::string detail;  // witness for failures, measurements otherwise
};

// One maximal real-time interval with a constant leader (or none).
struct LeaderInterval {
  RealTime from;
  RealTime to;
  std::optional<ProcessId> leader;
};

struct Report {
  std::vector<CheckResult> checks;
  std::vector<LeaderInterval> leaders;
  std::optional<RealTime> first_election_after_gst;
  // Latest real time at which a grant created by gst + bound/2 expires.
  RealTime latest_conflicting_expiry;
  std::size_t checkpoints = 0;
  std::size_t completions = 0;
  std::size_t edicts = 0;
  std::size_t verifications = 0;

  const CheckResult* find(const std::string& name) const;
  // Any failing safety check (everything except stability and election).
  bool safety_violation() const;
  bool liveness_shortfall() const;
};

bool is_liveness_check(const std::string& name);

struct OracleOptions {
  // Stability is checked from this real time on; defaults to gst.
  std::optional<RealTime> stability_from;
  // Eventual election must happen by this real time when set.
  std::optional<RealTime> election_deadline;
};

// Sweeps the trace once, evaluating every predicate at every event and at
// every real time at which a grant or lease runs out on its owner's clock.
// Checks: uniqueness, core_invariant, grant_cover, qt_order, edict_validity,
// edict_order, verification, epochs, stability, eventual_election.
Report analyze(const OracleContext& ctx, const Trace& trace, const OracleOptions& options = {});

CheckResult check_uniqueness(const OracleContext& ctx, const Trace& trace);
CheckResult check_core_invariant(const OracleContext& ctx, const Trace& trace);
CheckResult check_edict_properties(const OracleContext& ctx, const Trace& trace);
CheckResult check_stability(const OracleContext& ctx, const Trace& trace, const RealTime& from);
CheckResult check_eventual_election(const OracleContext& ctx, const Trace& trace,
                                    const std::optional<RealTime>& deadline = std::nullopt);

// Verdict events for appending to a trace.
std::vector<VerdictEvent> verdict_events(const Report& report);

}  // namespace nerio
