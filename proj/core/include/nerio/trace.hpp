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

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nerio/clock.hpp"
#include "nerio/edict.hpp"
#include "nerio/message.hpp"
#include "nerio/types.hpp"

namespace nerio {

// Trace file, one event per line, fields in a fixed order:
//
//   # nerio-trace v1
//   send t=<real> from=<p> to=<q> epoch=<e> msg=<Kind{...}>
//   recv t=<real> at=<q> from=<p> epoch=<e> msg=<Kind{...}>
//   drop t=<real> from=<p> to=<q> epoch=<e> reason=<loss|partition|crashed|epoch|inactive> msg=<Kind{...}>
//   timer t=<real> at=<p> kind=<name>
//   crash t=<real> at=<p>
//   state t=<real> at=<p> epoch=<e> A=<q|_> F=<clock|inf> E=<clock>
//   complete t=<real> at=<p> epoch=<e> start=<clock> E=<clock> qt=<{(q,clock),...}>
//   fail t=<real> at=<p> start=<clock> reason=<word>
//   edict t=<real> creator=<p> epoch=<e> ec=<n> qt=<{(q,clock),...}>
//   verified t=<real> at=<p> target=<q> start=<clock>
//   unblock t=<real> at=<p> epoch=<e>
//   release t=<real> at=<p>
//   reconfigure t=<real> epoch=<e> initiator=<p>
//   verdict check=<name> result=<pass|fail|inconclusive> detail="<text>"

struct SendEvent {
  RealTime t;
  ProcessId from = 0;
  ProcessId to = 0;
  EpochId epoch = 0;
  Payload msg;
  friend bool operator==(const SendEvent&, const SendEvent&) = default;
};

struct RecvEvent {
  RealTime t;
  ProcessId at = 0;
  ProcessId from = 0;
  EpochId epoch = 0;
  Payload msg;
  friend bool operator==(const RecvEvent&, const RecvEvent&) = default;
};

struct DropEvent {
  RealTime t;
  ProcessId from = 0;
  ProcessId to = 0;
  EpochId epoch = 0;
  std::string reason;
  Payload msg;
  friend bool operator==(const DropEvent&, const DropEvent&) = default;
};

struct TimerEvent {
  RealTime t;
  ProcessId at = 0;
  std::string kind;
  friend bool operator==(const TimerEvent&, const TimerEvent&) = default;
};

struct CrashEvent {
  RealTime t;
  ProcessId at = 0;
  friend bool operator==(const CrashEvent&, const CrashEvent&) = default;
};

// Protocol variables of `at` right after a change.
struct StateEvent {
  RealTime t;
  ProcessId at = 0;
  EpochId epoch = 0;
  std::optional<ProcessId> assignee;
  ClockValue finish;
  ClockValue expiration;
  friend bool operator==(const StateEvent&, const StateEvent&) = default;
};

struct CompleteEvent {
  RealTime t;
  ProcessId at = 0;
  EpochId epoch = 0;
  ClockValue start;
  ClockValue expiration;
  QuorumTimestamp qt;
  friend bool operator==(const CompleteEvent&, const CompleteEvent&) = default;
};

struct FailEvent {
  RealTime t;
  ProcessId at = 0;
  ClockValue start;
  std::string reason;
  friend bool operator==(const FailEvent&, const FailEvent&) = default;
};

struct EdictEvent {
  RealTime t;
  ProcessId creator = 0;
  EpochId epoch = 0;
  std::uint64_t ec = 0;
  QuorumTimestamp qt;
  friend bool operator==(const EdictEvent&, const EdictEvent&) = default;
};

// `at` accepted a Remainder from `target` as proof of leadership.
struct VerifiedEvent {
  RealTime t;
  ProcessId at = 0;
  ProcessId target = 0;
  ClockValue start;
  friend bool operator==(const VerifiedEvent&, const VerifiedEvent&) = default;
};

struct UnblockEvent {
  RealTime t;
  ProcessId at = 0;
  EpochId epoch = 0;
  friend bool operator==(const UnblockEvent&, const UnblockEvent&) = default;
};

struct ReleaseEvent {
  RealTime t;
  ProcessId at = 0;
  friend bool operator==(const ReleaseEvent&, const ReleaseEvent&) = default;
};

struct ReconfigureEvent {
  RealTime t;
  EpochId epoch = 0;
  ProcessId initiator = 0;
  friend bool operator==(const ReconfigureEvent&, const ReconfigureEvent&) = default;
};

struct VerdictEvent {
  std::string check;
  std::string result;
  std::string detail;
  friend bool operator==(const VerdictEvent&, const VerdictEvent&) = default;
};

using TraceEvent = std::variant<SendEvent, RecvEvent, DropEvent, TimerEvent, CrashEvent, StateEvent, CompleteEvent,
                                FailEvent, EdictEvent, VerifiedEvent, UnblockEvent, ReleaseEvent, ReconfigureEvent,
                                VerdictEvent>;

using Trace = std::vector<TraceEvent>;

std::string to_string(const TraceEvent& event);
TraceEvent parse_trace_event(std::string_view line);

std::string emit_trace(const Trace& trace);
// Throws std::invalid_argument naming the offending line.
Trace parse_trace(std::string_view text);

}  // namespace nerio
