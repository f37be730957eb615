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
#include <vector>

#include "nerio/clock.hpp"
#include "nerio/process.hpp"
#include "nerio/types.hpp"

namespace nerio {

// One process's view of the ring of its epoch, maintained by a ping/pong
// failure detector. Suspicion is revocable: suspected peers keep being
// pinged and come back on the first pong.
struct RingView {
  ProcessId self = 0;
  ProcessSet members;
  ProcessSet alive;  // members currently considered correct, self included
  std::map<ProcessId, ClockValue> ping_deadline;
  Duration timeout;
};

RingView make_ring_view(ProcessId self, const ProcessSet& members, const Duration& timeout);

// Closest alive predecessor / successor on the ring; self when alone.
ProcessId ring_predecessor(const RingView& view);
ProcessId ring_successor(const RingView& view);

// The peers whose liveness this process is responsible for.
std::vector<ProcessId> monitored_peers(const RingView& view);

// Monitored peers plus every suspected member.
std::vector<ProcessId> ping_targets(const RingView& view);

// True iff the closest alive predecessor does not have a smaller id, i.e.
// self is the lowest alive member.
bool am_weak_leader(const RingView& view);

// Arms a deadline for a monitored peer unless one is outstanding.
void arm_ping(RingView& view, ProcessId peer, const ClockValue& deadline);

// Monitored peers whose deadline has passed.
std::vector<ProcessId> expired_pings(const RingView& view, const ClockValue& now);

void on_ping_timeout(RingView& view, ProcessId peer);
void on_pong(RingView& view, ProcessId peer);

// Whether a weak leader should start an acquisition now: it must not be
// granting an unexpired lease to someone else and `retry_period` must have
// elapsed on its clock since its last attempt.
bool weak_leader_tick(const RingView& view, const ProcessState& state, const ClockValue& now,
                      const Duration& retry_period, const std::optional<ClockValue>& last_attempt);

}  // namespace nerio
