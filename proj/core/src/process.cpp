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

#include "nerio/process.hpp"

#include <stdexcept>

namespace nerio {

std::string to_string(Variant v) { return v == Variant::BoundedDrift ? "drift" : "skew"; }

Variant parse_variant(std::string_view text) {
  if (text == "drift") return Variant::BoundedDrift;
  if (text == "skew") return Variant::BoundedSkew;
  throw std::invalid_argument("unknown variant '" + std::string(text) + "' (expected drift or skew)");
}

std::string to_string(Mutation m) {
  switch (m) {
    case Mutation::None: return "none";
    case Mutation::ResponderShrink: return "responder_shrink";
    case Mutation::InitiatorStretch: return "initiator_stretch";
    case Mutation::OverwriteFinish: return "overwrite_finish";
  }
  return "?";
}

Mutation parse_mutation(std::string_view text) {
  for (Mutation m : {Mutation::None, Mutation::ResponderShrink, Mutation::InitiatorStretch,
                     Mutation::OverwriteFinish}) {
    if (text == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown mutation '" + std::string(text) + "'");
}

std::string to_string(AcquireOutcome outcome) {
  switch (outcome) {
    case AcquireOutcome::Idle: return "idle";
    case AcquireOutcome::Pending: return "pending";
    case AcquireOutcome::Completed: return "completed";
    case AcquireOutcome::Failed: return "failed";
  }
  return "?";
}

ProcessState::ProcessState(ProcessId self_id, EpochId epoch_id, ProtocolConfig cfg)
    : self(self_id),
      epoch(epoch_id),
      config(std::move(cfg)),
      assignee(self_id),
      finish(Rational(0)),
      expiration(Rational(0)) {}

ClockValue attempt_deadline(const ProtocolConfig& config, const ClockValue& start, const Duration& delta) {
  if (config.variant == Variant::BoundedDrift) return start + (1 - config.rho) * delta;
  return start + delta;
}

namespace {

ClockValue granted_finish(const ProtocolConfig& config, const ClockValue& sample, const GrantRequest& request) {
  const Duration& delta = *request.delta;
  const bool shrink = config.mutation == Mutation::ResponderShrink;
  if (config.variant == Variant::BoundedDrift) {
    return sample + (shrink ? Rational(1 - config.rho) : Rational(1 + config.rho)) * delta;
  }
  // The initiator's start is meaningful to the responder only because the
  // clocks are within `skew` of each other.
  return request.start + (shrink ? Rational(delta - config.skew) : Rational(delta + config.skew));
}

ClockValue completed_expiration(const ProtocolConfig& config, const AcquireAttempt& attempt) {
  if (config.mutation != Mutation::InitiatorStretch) return attempt.deadline;
  if (config.variant == Variant::BoundedDrift) return attempt.start + (1 + config.rho) * attempt.delta;
  return attempt.start + (attempt.delta + config.skew);
}

std::optional<Rational> remaining(const ClockValue& finish, const ClockValue& now) {
  if (finish.is_infinite()) return std::nullopt;
  return tick_difference(finish, now);
}

AcquireOutcome idle_or_pending(const ProcessState& state) {
  return state.pending ? AcquireOutcome::Pending : AcquireOutcome::Idle;
}

}  // namespace

GrantRequest start_acquire(ProcessState& state, const ClockValue& now, const Duration& delta) {
  if (delta <= 0) {
    throw std::domain_error("acquisition period must be positive, got " + to_string(delta));
  }
  state.pending = AcquireAttempt{now, delta, attempt_deadline(state.config, now, delta), {}, {}};
  return GrantRequest{state.self, now, delta};
}

Payload handle_grant_request(ProcessState& state, const ClockValue& now_sample, const GrantRequest& request) {
  if (request.is_wedge() || !request.delta) {
    throw std::invalid_argument("wedge requests are handled by the membership module");
  }
  const ProcessId p = *request.from;
  if (state.wedge_buffer) {
    return GrantError{state.self, remaining(state.finish, now_sample), request.start};
  }
  if (state.assignee != p && now_sample < state.finish) {
    return GrantError{state.self, remaining(state.finish, now_sample), request.start};
  }
  ClockValue proposed = granted_finish(state.config, now_sample, request);
  state.assignee = p;
  if (state.config.mutation == Mutation::OverwriteFinish || state.finish < proposed) {
    state.finish = proposed;
  }
  return Ok{state.self, now_sample, request.start};
}

AcquireOutcome handle_ok(ProcessState& state, const ClockValue& now, const Ok& ok, const QuorumSystem& quorums) {
  if (!state.pending || state.pending->start != ok.start) return idle_or_pending(state);
  AcquireAttempt& attempt = *state.pending;
  if (now >= attempt.deadline) {
    state.pending.reset();
    return AcquireOutcome::Failed;
  }
  attempt.oks.insert_or_assign(ok.from, ok.responder_sample);
  ProcessSet responders;
  for (const auto& [q, _] : attempt.oks) responders.insert(q);
  auto quorum = quorums.find_quorum(responders);
  if (!quorum) return AcquireOutcome::Pending;

  QuorumTimestamp qt;
  for (ProcessId q : *quorum) qt.entries.emplace(q, attempt.oks.at(q));
  state.expiration = completed_expiration(state.config, attempt);
  state.last_qt = std::move(qt);
  state.pending.reset();
  return AcquireOutcome::Completed;
}

AcquireOutcome handle_grant_error(ProcessState& state, const ClockValue& now, const GrantError& error,
                                  const QuorumSystem& quorums) {
  if (!state.pending || state.pending->start != error.start) return idle_or_pending(state);
  AcquireAttempt& attempt = *state.pending;
  if (now >= attempt.deadline) {
    state.pending.reset();
    return AcquireOutcome::Failed;
  }
  attempt.refused.insert(error.from);
  ProcessSet hopeful;
  for (ProcessId q : quorums.processes()) {
    if (!attempt.refused.count(q)) hopeful.insert(q);
  }
  if (!quorums.find_quorum(hopeful)) {
    state.pending.reset();
    return AcquireOutcome::Failed;
  }
  return AcquireOutcome::Pending;
}

AcquireOutcome check_deadline(ProcessState& state, const ClockValue& now) {
  if (!state.pending) return AcquireOutcome::Idle;
  if (now >= state.pending->deadline) {
    state.pending.reset();
    return AcquireOutcome::Failed;
  }
  return AcquireOutcome::Pending;
}

bool is_leader_local(const ProcessState& state, const ClockValue& now) { return now < state.expiration; }

Release release(ProcessState& state, const ClockValue& now) {
  state.pending.reset();
  state.expiration = now;
  return Release{state.self, state.fifo_seq++};
}

void handle_release(ProcessState& state, const ClockValue& now_sample, const Release& msg) {
  if (state.assignee == msg.from) state.finish = now_sample;
}

Revoke revoke(ProcessState& state, const ClockValue& now) {
  state.pending.reset();
  if (now < state.expiration) state.expiration = now;
  return Revoke{state.self, state.fifo_seq++};
}

void handle_revoke(ProcessState& state, const ClockValue& now_sample, const Revoke& msg) {
  if (state.assignee == msg.from && now_sample < state.finish) state.finish = now_sample;
}

VerifyLeadership verify_leadership_request(ProcessState& state, const ClockValue& now) {
  state.verify_start = now;
  return VerifyLeadership{state.self, now};
}

Remainder handle_verify(const ProcessState& state, const ClockValue& now, const VerifyLeadership& msg) {
  Duration delta = tick_difference(state.expiration, now) / (1 + state.config.rho);
  return Remainder{state.self, delta, msg.start};
}

bool interpret_remainder(ProcessState& requester, const ClockValue& now, const Remainder& msg) {
  if (!requester.verify_start || *requester.verify_start != msg.start) return false;
  requester.verify_start.reset();
  if (msg.delta <= 0) return false;
  return now.tick() < msg.start.tick() + msg.delta * (1 - requester.config.rho);
}

ClientResponse handle_client_request(const ProcessState& state, const ClockValue& now) {
  if (is_leader_local(state, now)) return {ClientResponse::Kind::IAmLeader, state.self};
  if (state.assignee && *state.assignee != state.self && now < state.finish) {
    return {ClientResponse::Kind::Forward, state.assignee};
  }
  if (state.pending) return {ClientResponse::Kind::TryingToAcquire, std::nullopt};
  return {ClientResponse::Kind::NoLeaderKnown, std::nullopt};
}

Rational renewal_threshold(const ProcessState& state, const Duration& d) {
  return state.expiration.tick() - (1 + state.config.rho) * d;
}

std::optional<Duration> renewal_policy(const ProcessState& state, const ClockValue& now, const Duration& d,
                                       const Duration& i) {
  if (d <= 0 || i < 0) throw std::domain_error("renewal policy needs d > 0 and i >= 0");
  if (!is_leader_local(state, now)) return std::nullopt;
  if (now.tick() < renewal_threshold(state, d)) return std::nullopt;
  Duration left = (1 + state.config.rho) * tick_difference(state.expiration, now);
  return d + (left > i ? left : i);
}

}  // namespace nerio
