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
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "nerio/clock.hpp"
#include "nerio/types.hpp"

namespace nerio {

struct ProcessState;

// Responder samples collected by one completed acquisition, restricted to
// exactly one quorum.
struct QuorumTimestamp {
  std::map<ProcessId, ClockValue> entries;

  friend bool operator==(const QuorumTimestamp&, const QuorumTimestamp&) = default;
};

struct EdictTimestamp {
  EpochId epoch = 0;
  QuorumTimestamp qt;
  std::uint64_t ec = 0;

  friend bool operator==(const EdictTimestamp&, const EdictTimestamp&) = default;
};

// The real creation time is deliberately absent: protocol code cannot
// observe it. The simulator records it next to the edict in the trace.
struct Edict {
  ProcessId creator = 0;
  EdictTimestamp ts;
  std::string payload;
};

enum class Order { Less, Greater, Equal, Incomparable };

std::string to_string(Order order);

// Less iff some shared responder has a strictly smaller sample in `a` and
// none has a strictly larger one. No shared responder, or shared responders
// pointing both ways, yields Incomparable. Quorum timestamps produced by a
// correct run are never Incomparable.
Order compare_qt(const QuorumTimestamp& a, const QuorumTimestamp& b);

// Lexicographic on (epoch, quorum timestamp, edict counter).
Order compare_edicts(const EdictTimestamp& a, const EdictTimestamp& b);

// Tags a new edict if the creator still believes it is leader at `now`
// (now < E). On success the edict counter advances; on failure nothing
// changes. Fails as well when no acquisition has completed yet.
std::optional<Edict> create_edict(ProcessState& state, const ClockValue& now, std::string payload);

// "{(q,(tick,seq)),...}"
std::string to_string(const QuorumTimestamp& qt);
QuorumTimestamp parse_quorum_timestamp(std::string_view text);

}  // namespace nerio
