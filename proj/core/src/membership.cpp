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

#include "nerio/membership.hpp"

#include <stdexcept>

namespace nerio {

std::string to_string(EpochStatus status) {
  switch (status) {
    case EpochStatus::Pending: return "PENDING";
    case EpochStatus::Running: return "RUNNING";
    case EpochStatus::Terminated: return "TERMINATED";
  }
  return "?";
}

std::vector<EpochStatus> derive_statuses(const std::vector<bool>& quorum_wedged) {
  std::vector<EpochStatus> out;
  bool prior_terminated = true;
  for (bool wedged : quorum_wedged) {
    if (wedged) {
      out.push_back(EpochStatus::Terminated);
    } else {
      out.push_back(prior_terminated ? EpochStatus::Running : EpochStatus::Pending);
      prior_terminated = false;
    }
  }
  return out;
}

bool is_wedged(const ProcessState& state) { return !state.assignee && state.finish.is_infinite(); }

GrantRequest send_wedge(ProcessId initiator, const EpochConfig& next, const ClockValue& now) {
  if (!next.processes().count(initiator)) {
    throw std::invalid_argument("wedge initiator " + std::to_string(initiator) + " is not a member of epoch " +
                                std::to_string(next.id));
  }
  return GrantRequest{std::nullopt, now, std::nullopt};
}

namespace {

bool holds_unexpired_grant(const ProcessState& state, const ClockValue& now) {
  return state.assignee && now < state.finish;
}

void wedge(ProcessState& state) {
  state.assignee.reset();
  state.finish = ClockValue::infinity();
  state.wedge_buffer.reset();
  state.pending.reset();
}

}  // namespace

std::optional<Ok> handle_wedge(ProcessState& state, const ClockValue& now_sample, const GrantRequest& request,
                               ProcessId initiator) {
  if (!request.is_wedge()) throw std::invalid_argument("handle_wedge expects a wedge request");
  if (is_wedged(state)) return Ok{state.self, now_sample, request.start};
  if (holds_unexpired_grant(state, now_sample)) {
    state.wedge_buffer = BufferedWedge{initiator, request.start};
    return std::nullopt;
  }
  wedge(state);
  return Ok{state.self, now_sample, request.start};
}

std::optional<std::pair<ProcessId, Ok>> apply_buffered_wedge(ProcessState& state, const ClockValue& now_sample) {
  if (!state.wedge_buffer || holds_unexpired_grant(state, now_sample)) return std::nullopt;
  BufferedWedge buffered = *state.wedge_buffer;
  wedge(state);
  return std::make_pair(buffered.initiator, Ok{state.self, now_sample, buffered.start});
}

bool record_wedge_confirmation(WedgeCampaign& campaign, const Ok& ok) {
  if (campaign.done || ok.start != campaign.start) return false;
  if (!campaign.previous.processes().count(ok.from)) return false;
  campaign.confirmed.insert(ok.from);
  if (!campaign.previous.quorums.is_quorum(campaign.confirmed)) return false;
  campaign.done = true;
  return true;
}

bool learn_terminated(ProcessState& state, const EpochConfig& own, const EpochConfig& previous,
                      const TerminationEvidence& evidence) {
  if (state.active) return true;
  if (const auto* q = std::get_if<WedgedQuorum>(&evidence)) {
    ProcessSet members;
    for (ProcessId p : q->confirmed) {
      if (previous.processes().count(p)) members.insert(p);
    }
    if (previous.quorums.is_quorum(members)) state.active = true;
  } else {
    const auto& peer = std::get<PeerGrantRequest>(evidence);
    if (peer.from != state.self && own.processes().count(peer.from)) state.active = true;
  }
  return state.active;
}

}  // namespace nerio
