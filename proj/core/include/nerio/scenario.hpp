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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nerio/clock.hpp"
#include "nerio/membership.hpp"
#include "nerio/process.hpp"
#include "nerio/quorum.hpp"

namespace nerio {

// Scenario file format, version 1. One directive per line, `#` starts a
// comment, fields are `key=value` separated by blanks:
//
//   version 1
//   seed 7
//   horizon 200
//   variant drift                       # or skew
//   rho 1/1000
//   skew 2                              # skew variant only
//   processes 1,2,3,4,5
//   quorums majority                    # or {1,2}|{2,3}|{1,3}
//   gst 40
//   latency min=1/10 max=3 bound=2      # bound: round trip after gst
//   loss 1/5                            # before gst only
//   clock process=1 initial=0 segments=0:1;10:1001/1000
//   clocks auto segment=10 initial_max=5 mode=random   # or extreme
//   partition from=5 to=20 blocks={1,2}|{3,4,5}
//   crash process=2 at=12
//   protocol d=2 i=3 retry=4 timeout=4 edict=5 jitter=0 renew=on verify=on delta=policy
//   mutation none
//   reconfigure at=80 new_epoch={processes=6,7,8;quorums=majority;initiator=6}
//   release at=60 process=1 quiet=10
//   acquire at=30 process=3
//
// Unknown directives and fields are rejected.

class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::size_t line, std::string field, const std::string& message);

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

struct LatencyModel {
  Duration min = ratio(1, 10);
  Duration max = 1;
  Duration bound = 1;  // round trip after gst; each leg takes at most bound / 2
  friend bool operator==(const LatencyModel&, const LatencyModel&) = default;
};

struct ClockSpec {
  ProcessId process = 0;
  Rational initial = 0;
  std::vector<ClockSegment> segments;
  friend bool operator==(const ClockSpec&, const ClockSpec&) = default;
};

enum class ClockMode { Random, Extreme };

// Schedules for processes without an explicit clock line.
struct AutoClocks {
  Duration segment = 10;
  Rational initial_max = 0;
  ClockMode mode = ClockMode::Random;
  friend bool operator==(const AutoClocks&, const AutoClocks&) = default;
};

struct Partition {
  RealTime from;
  RealTime to;
  std::vector<ProcessSet> blocks;  // unlisted processes form singleton blocks
  friend bool operator==(const Partition&, const Partition&) = default;
};

struct Crash {
  ProcessId process = 0;
  RealTime at;
  friend bool operator==(const Crash&, const Crash&) = default;
};

enum class DeltaMode { Policy, Random };

struct ProtocolParams {
  Duration d = 1;       // round trip estimate
  Duration i = 2;       // minimum spacing between attempts of one leader
  Duration retry = 2;   // weak leader attempt period
  Duration timeout = 2; // ping timeout; pings go out every timeout / 2
  Duration edict = 0;   // edict creation period, 0 disables edicts
  Duration jitter = 0;  // random extra delta for fresh attempts
  bool renew = true;
  bool verify = true;
  DeltaMode delta = DeltaMode::Policy;
  friend bool operator==(const ProtocolParams&, const ProtocolParams&) = default;
};

struct Reconfiguration {
  RealTime at;
  EpochConfig next;
  ProcessId initiator = 0;
  friend bool operator==(const Reconfiguration&, const Reconfiguration&) = default;
};

struct ReleaseAction {
  RealTime at;
  ProcessId process = 0;
  Duration quiet = 0;  // no new attempts by the releaser for this long
  friend bool operator==(const ReleaseAction&, const ReleaseAction&) = default;
};

struct AcquireAction {
  RealTime at;
  ProcessId process = 0;
  friend bool operator==(const AcquireAction&, const AcquireAction&) = default;
};

struct Scenario {
  std::uint64_t seed = 0;
  RealTime horizon = 100;
  Variant variant = Variant::BoundedDrift;
  Rational rho = 0;
  Rational skew = 0;
  QuorumSystem quorums;  // epoch 0
  RealTime gst = 0;
  LatencyModel latency;
  Rational loss = 0;
  std::vector<ClockSpec> clocks;
  AutoClocks auto_clocks;
  std::vector<Partition> partitions;
  std::vector<Crash> crashes;
  ProtocolParams protocol;
  Mutation mutation = Mutation::None;
  std::vector<Reconfiguration> reconfigurations;
  std::vector<ReleaseAction> releases;
  std::vector<AcquireAction> acquires;

  // Epoch 0 followed by one epoch per reconfiguration.
  std::vector<EpochConfig> epochs() const;
  ProcessSet all_processes() const;
  ProtocolConfig protocol_config() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

std::string to_string(ClockMode mode);
std::string to_string(DeltaMode mode);

// Throws ScenarioError naming the line and field of the first problem.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

// Canonical text; parse_scenario(emit_scenario(s)) == s.
std::string emit_scenario(const Scenario& scenario);

// Semantic checks that need the whole scenario. Returns a diagnostic, empty
// when the scenario can be run.
std::string validation_error(const Scenario& scenario);

// One schedule per process of every epoch: explicit clock lines first,
// generated ones (from the scenario seed) for the rest.
std::map<ProcessId, ClockSchedule> build_schedules(const Scenario& scenario);

}  // namespace nerio
