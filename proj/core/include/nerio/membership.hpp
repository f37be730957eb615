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
#include <variant>
#include <vector>

#include "nerio/clock.hpp"
#include "nerio/message.hpp"
#include "nerio/process.hpp"
#include "nerio/quorum.hpp"
#include "nerio/types.hpp"

namespace nerio {

// One membership configuration. Process sets of different epochs are
// disjoint: a machine taking part in two epochs appears under two ids.
struct EpochConfig {
  EpochId id = 0;
  QuorumSystem quorums;

  const ProcessSet& processes() const { return quorums.processes(); }
  friend bool operator==(const EpochConfig&, const EpochConfig&) = default;
};

enum class EpochStatus { Pending, Running, Terminated };

std::string to_string(EpochStatus status);

// Epoch 0 runs first; epoch k runs once every earlier epoch has terminated,
// and terminates once a quorum of its members is wedged.
std::vector<EpochStatus> derive_statuses(const std::vector<bool>& quorum_wedged);

// A = bottom and F = infinity: the process will never grant again.
bool is_wedged(const ProcessState& state);

// Wedge request sent by `initiator` (a member of `next`) to every member of
// the epoch before it. Throws std::invalid_argument if the initiator does
// not belong to `next`.
GrantRequest send_wedge(ProcessId initiator, const EpochConfig& next, const ClockValue& now);

// Wedges the process right away when it holds no unexpired grant, answering
// Ok; otherwise buffers the request until the grant has expired. Repeated
// requests to a wedged process are answered again.
std::optional<Ok> handle_wedge(ProcessState& state, const ClockValue& now_sample, const GrantRequest& wedge,
                               ProcessId initiator);

// Applies a buffered wedge once the current grant has expired. Returns the
// Ok owed to the initiator, addressed to it.
std::optional<std::pair<ProcessId, Ok>> apply_buffered_wedge(ProcessState& state, const ClockValue& now_sample);

// Progress of the initiator of a successor epoch.
struct WedgeCampaign {
  EpochConfig previous;
  ClockValue start;
  ProcessSet confirmed;
  bool done = false;
};

// Records an Ok for the campaign's wedge. Returns true the first time the
// confirmations form a quorum of the previous epoch.
bool record_wedge_confirmation(WedgeCampaign& campaign, const Ok& ok);

struct WedgedQuorum {
  ProcessSet confirmed;  // members of the previous epoch known to be wedged
};
struct PeerGrantRequest {
  ProcessId from = 0;  // a member of the process's own epoch
};
using TerminationEvidence = std::variant<WedgedQuorum, PeerGrantRequest>;

// Unblocks a member of a successor epoch when the evidence shows that the
// previous epoch has terminated. Returns whether the process is active
// afterwards.
bool learn_terminated(ProcessState& state, const EpochConfig& own, const EpochConfig& previous,
                      const TerminationEvidence& evidence);

}  // namespace nerio
