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

#include "nerio/weak_election.hpp"

#include <algorithm>
#include <stdexcept>

namespace nerio {

RingView make_ring_view(ProcessId self, const ProcessSet& members, const Duration& timeout) {
  if (!members.count(self)) throw std::invalid_argument("ring view owner must be a ring member");
  return RingView{self, members, members, {}, timeout};
}

ProcessId ring_predecessor(const RingView& view) {
  auto it = view.alive.find(view.self);
  if (it == view.alive.begin()) return *view.alive.rbegin();
  return *std::prev(it);
}

ProcessId ring_successor(const RingView& view) {
  auto it = std::next(view.alive.find(view.self));
  if (it == view.alive.end()) return *view.alive.begin();
  return *it;
}

std::vector<ProcessId> monitored_peers(const RingView& view) {
  std::vector<ProcessId> out;
  ProcessId pred = ring_predecessor(view);
  ProcessId succ = ring_successor(view);
  if (pred != view.self) out.push_back(pred);
  if (succ != view.self && succ != pred) out.push_back(succ);
  return out;
}

std::vector<ProcessId> ping_targets(const RingView& view) {
  std::vector<ProcessId> out = monitored_peers(view);
  for (ProcessId m : view.members) {
    if (!view.alive.count(m)) out.push_back(m);
  }
  return out;
}

bool am_weak_leader(const RingView& view) { return ring_predecessor(view) >= view.self; }

void arm_ping(RingView& view, ProcessId peer, const ClockValue& deadline) {
  view.ping_deadline.try_emplace(peer, deadline);
}

std::vector<ProcessId> expired_pings(const RingView& view, const ClockValue& now) {
  std::vector<ProcessId> out;
  for (ProcessId peer : monitored_peers(view)) {
    auto it = view.ping_deadline.find(peer);
    if (it != view.ping_deadline.end() && it->second <= now) out.push_back(peer);
  }
  return out;
}

void on_ping_timeout(RingView& view, ProcessId peer) {
  if (peer == view.self) return;
  view.alive.erase(peer);
  view.ping_deadline.erase(peer);
}

void on_pong(RingView& view, ProcessId peer) {
  if (!view.members.count(peer)) return;
  view.alive.insert(peer);
  view.ping_deadline.erase(peer);
}

bool weak_leader_tick(const RingView& view, const ProcessState& state, const ClockValue& now,
                      const Duration& retry_period, const std::optional<ClockValue>& last_attempt) {
  if (!am_weak_leader(view)) return false;
  if (state.assignee != state.self && now < state.finish) return false;
  if (last_attempt && now.tick() < last_attempt->tick() + retry_period) return false;
  return true;
}

}  // namespace nerio
