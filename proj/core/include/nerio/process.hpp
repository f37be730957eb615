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
#include <string_view>

#include "nerio/clock.hpp"
#include "nerio/edict.hpp"
#include "nerio/message.hpp"
#include "nerio/quorum.hpp"
#include "nerio/types.hpp"

namespace nerio {

enum class Variant { BoundedDrift, BoundedSkew };

// Seeded bugs used to show that the oracle notices broken lease arithmetic.
enum class Mutation {
  None,
  ResponderShrink,   // responder grants (1 - rho) * delta (skew: Start + delta - Delta)
  InitiatorStretch,  // initiator keeps (1 + rho) * delta (skew: Start + delta + Delta)
  OverwriteFinish,   // responder overwrites F instead of taking the maximum
};

std::string to_string(Variant v);
Variant parse_variant(std::string_view text);
std::string to_string(Mutation m);
Mutation parse_mutation(std::string_view text);

struct ProtocolConfig {
  Variant variant = Variant::BoundedDrift;
  Rational rho = 0;   // drift bound, also used by renewal and verification
  Rational skew = 0;  // bounded-skew variant only
  Mutation mutation = Mutation::None;
};

struct AcquireAttempt {
  ClockValue start;
  Duration delta;
  ClockValue deadline;
  std::map<ProcessId, ClockValue> oks;  // responder -> responder sample
  ProcessSet refused;
};

struct BufferedWedge {
  ProcessId initiator = 0;
  ClockValue start;
};

// Protocol variables of one process in one epoch. Clock values are samples
// of the owner's clock; durations are real-time quantities.
struct ProcessState {
  ProcessState(ProcessId self, EpochId epoch, ProtocolConfig config);

  ProcessId self;
  EpochId epoch;
  ProtocolConfig config;

  std::optional<ProcessId> assignee;  // A; empty is bottom
  ClockValue finish;                  // F
  ClockValue expiration;              // E
  std::optional<AcquireAttempt> pending;

  std::uint64_t edict_counter = 0;
  std::optional<QuorumTimestamp> last_qt;

  // False for members of a successor epoch until they learn that the
  // previous epoch has terminated.
  bool active = true;
  std::optional<BufferedWedge> wedge_buffer;

  std::uint64_t fifo_seq = 0;  // next Release/Revoke sequence number
  std::optional<ClockValue> verify_start;
};

enum class AcquireOutcome { Idle, Pending, Completed, Failed };

std::string to_string(AcquireOutcome outcome);

// Clock value at which an attempt started at `start` with `delta` stops
// being able to complete.
ClockValue attempt_deadline(const ProtocolConfig& config, const ClockValue& start, const Duration& delta);

// Aborts any pending attempt and begins a new one. The returned request is
// to be delivered to every member of the epoch, the caller included.
// Throws std::domain_error if delta <= 0.
GrantRequest start_acquire(ProcessState& state, const ClockValue& now, const Duration& delta);

// Responder side. Returns Ok when the grant is made or extended, GrantError
// when a different process holds an unexpired grant (or a wedge is
// buffered). Throws std::invalid_argument for wedge requests, which belong
// to handle_wedge.
Payload handle_grant_request(ProcessState& state, const ClockValue& now_sample, const GrantRequest& request);

// Initiator side. Responses for other attempts are discarded.
AcquireOutcome handle_ok(ProcessState& state, const ClockValue& now, const Ok& ok, const QuorumSystem& quorums);

// Fails the attempt early once the responders that have not refused can no
// longer form a quorum.
AcquireOutcome handle_grant_error(ProcessState& state, const ClockValue& now, const GrantError& error,
                                  const QuorumSystem& quorums);

AcquireOutcome check_deadline(ProcessState& state, const ClockValue& now);

bool is_leader_local(const ProcessState& state, const ClockValue& now);

Release release(ProcessState& state, const ClockValue& now);
void handle_release(ProcessState& state, const ClockValue& now_sample, const Release& msg);

// Abandons the pending attempt so late Oks cannot advance E, and gives up
// local leadership if still held: revoked grants no longer back any E.
Revoke revoke(ProcessState& state, const ClockValue& now);
void handle_revoke(ProcessState& state, const ClockValue& now_sample, const Revoke& msg);

VerifyLeadership verify_leadership_request(ProcessState& state, const ClockValue& now);
Remainder handle_verify(const ProcessState& state, const ClockValue& now, const VerifyLeadership& msg);

// True iff the responder is guaranteed to still be leader at `now`:
// now < start + delta * (1 - rho). Stale responses yield false.
bool interpret_remainder(ProcessState& requester, const ClockValue& now, const Remainder& msg);

struct ClientResponse {
  enum class Kind { IAmLeader, Forward, TryingToAcquire, NoLeaderKnown };
  Kind kind = Kind::NoLeaderKnown;
  std::optional<ProcessId> leader;
};

ClientResponse handle_client_request(const ProcessState& state, const ClockValue& now);

// Local clock value at which a leader should start renewing: E - (1+rho)d.
Rational renewal_threshold(const ProcessState& state, const Duration& d);

// delta = d + max(i, (1+rho)(E - now)) once now has reached the renewal
// threshold; nothing when the process is not leader or it is too early.
std::optional<Duration> renewal_policy(const ProcessState& state, const ClockValue& now, const Duration& d,
                                       const Duration& i);

}  // namespace nerio
