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


#include <gtest/gtest.h>

#include <stdexcept>
#include <string>

#include "nerio/scenario.hpp"
#include "nerio/simnet.hpp"
#include "nerio/trace.hpp"

namespace nerio {
namespace {

ClockValue cv(long tick, std::uint64_t seq = 0) { return ClockValue(Rational(tick), seq); }

TEST(TraceTest, EveryKindRoundTrips) {
  QuorumTimestamp qt{{{1, cv(3, 1)}, {2, cv(4)}}};
  Trace trace = {
      SendEvent{ratio(1, 10), 1, 2, 0, GrantRequest{1, cv(5), Duration(ratio(3, 2))}},
      RecvEvent{ratio(2, 10), 2, 1, 0, Ok{2, cv(6, 2), cv(5)}},
      DropEvent{1, 3, 4, 0, "partition", GrantError{3, std::nullopt, cv(5)}},
      SendEvent{2, 6, 1, 1, GrantRequest{std::nullopt, cv(9), std::nullopt}},
      TimerEvent{3, 1, "campaign"},
      CrashEvent{4, 5},
      StateEvent{5, 2, 0, std::nullopt, ClockValue::infinity(), cv(0)},
      StateEvent{5, 3, 0, 1, cv(12), cv(0)},
      CompleteEvent{6, 1, 0, cv(5), cv(7), qt},
      FailEvent{7, 1, cv(5), "deadline"},
      EdictEvent{8, 1, 0, 3, qt},
      VerifiedEvent{9, 2, 1, cv(8)},
      UnblockEvent{10, 6, 1},
      ReleaseEvent{11, 1},
      ReconfigureEvent{12, 1, 6},
      RecvEvent{13, 1, 2, 0, Remainder{2, ratio(-5, 3), cv(1)}},
      RecvEvent{13, 1, 2, 0, Release{2, 4}},
      RecvEvent{13, 1, 2, 0, Revoke{2, 5}},
      RecvEvent{13, 1, 2, 0, VerifyLeadership{2, cv(1)}},
      RecvEvent{13, 1, 2, 0, Forward{std::nullopt}},
      RecvEvent{13, 1, 2, 0, Ping{2, 8}},
      RecvEvent{13, 1, 2, 0, Pong{2, 8}},
      RecvEvent{13, 1, 2, 0, WedgeQuery{2}},
      RecvEvent{13, 1, 2, 0, WedgeStatus{2, true}},
      VerdictEvent{"uniqueness", "pass", "checked 4 \"points\""},
  };
  std::string text = emit_trace(trace);
  EXPECT_EQ(text.rfind("# nerio-trace v1\n", 0), 0u);
  EXPECT_EQ(parse_trace(text), trace);
  for (const auto& e : trace) EXPECT_EQ(parse_trace_event(to_string(e)), e) << to_string(e);
}

TEST(TraceTest, SimulatedTraceRoundTrips) {
  Scenario s = load_scenario(NERIO_SCENARIO_DIR "/basic.scenario");
  s.horizon = 20;
  RunResult r = run(s);
  ASSERT_FALSE(r.trace.empty());
  std::string text = emit_trace(r.trace);
  EXPECT_EQ(parse_trace(text), r.trace);
  EXPECT_EQ(emit_trace(parse_trace(text)), text);
}

TEST(TraceTest, ErrorsNameTheLine) {
  try {
    parse_trace("# nerio-trace v1\ncrash t=1 at=2\ncrash t=x at=2\n");
    FAIL() << "accepted a bad time";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_trace_event("crash t=1"), std::invalid_argument);
  EXPECT_THROW(parse_trace_event("explode t=1 at=2"), std::invalid_argument);
  EXPECT_THROW(parse_trace_event("recv t=1 at=2 from=1 epoch=0 msg=Ok{from=1}"), std::invalid_argument);
}

}  // namespace
}  // namespace nerio
