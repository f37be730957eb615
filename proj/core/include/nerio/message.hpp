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
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "nerio/clock.hpp"
#include "nerio/rational.hpp"
#include "nerio/types.hpp"

namespace nerio {

// Every response echoes the request's `start` without interpreting it; the
// pair (initiator, start) names one acquisition attempt.

// `from` empty is the bottom process and `delta` empty is infinity; both are
// empty exactly for the wedge requests that terminate an epoch.
struct GrantRequest {
  std::optional<ProcessId> from;
  ClockValue start;
  std::optional<Duration> delta;

  bool is_wedge() const { return !from.has_value(); }
  friend bool operator==(const GrantRequest&, const GrantRequest&) = default;
};

struct Ok {
  ProcessId from = 0;
  ClockValue responder_sample;
  ClockValue start;
  friend bool operator==(const Ok&, const Ok&) = default;
};

// `remaining` is F - T in the responder's clock units; empty means the
// responder is wedged and will never grant again.
struct GrantError {
  ProcessId from = 0;
  std::optional<Rational> remaining;
  ClockValue start;
  friend bool operator==(const GrantError&, const GrantError&) = default;
};

struct Release {
  ProcessId from = 0;
  std::uint64_t seq = 0;
  friend bool operator==(const Release&, const Release&) = default;
};

struct Revoke {
  ProcessId from = 0;
  std::uint64_t seq = 0;
  friend bool operator==(const Revoke&, const Revoke&) = default;
};

struct VerifyLeadership {
  ProcessId from = 0;
  ClockValue start;
  friend bool operator==(const VerifyLeadership&, const VerifyLeadership&) = default;
};

// Real time left of the responder's leadership; negative when it is not
// leader.
struct Remainder {
  ProcessId from = 0;
  Duration delta;
  ClockValue start;
  friend bool operator==(const Remainder&, const Remainder&) = default;
};

struct Forward {
  std::optional<ProcessId> leader_hint;
  friend bool operator==(const Forward&, const Forward&) = default;
};

struct Ping {
  ProcessId from = 0;
  std::uint64_t nonce = 0;
  friend bool operator==(const Ping&, const Ping&) = default;
};

struct Pong {
  ProcessId from = 0;
  std::uint64_t nonce = 0;
  friend bool operator==(const Pong&, const Pong&) = default;
};

// Asks a member of the previous epoch whether it is wedged.
struct WedgeQuery {
  ProcessId from = 0;
  friend bool operator==(const WedgeQuery&, const WedgeQuery&) = default;
};

struct WedgeStatus {
  ProcessId from = 0;
  bool wedged = false;
  friend bool operator==(const WedgeStatus&, const WedgeStatus&) = default;
};

using Payload = std::variant<GrantRequest, Ok, GrantError, Release, Revoke, VerifyLeadership, Remainder,
                             Forward, Ping, Pong, WedgeQuery, WedgeStatus>;

// Network envelope. `epoch` is the sender's epoch.
struct Message {
  ProcessId src = 0;
  ProcessId dst = 0;
  EpochId epoch = 0;
  Payload payload;
  friend bool operator==(const Message&, const Message&) = default;
};

std::string_view kind_name(const Payload& payload);

// Messages that must reach a given destination in the order a given source
// sent them.
bool is_fifo_class(const Payload& payload);

// Traffic that may legitimately cross an epoch boundary.
bool is_cross_epoch_class(const Payload& payload);

// "Kind{field=value,...}" with a fixed field order per kind.
std::string to_string(const Payload& payload);
Payload parse_payload(std::string_view text);

}  // namespace nerio
