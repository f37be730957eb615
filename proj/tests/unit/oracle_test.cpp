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

#include <string>

#include "nerio/oracle.hpp"
#include "nerio/simnet.hpp"

namespace nerio {
namespace {

ClockValue cv(long tick) { return ClockValue(Rational(tick)); }

// Perfect clocks for the given processes.
OracleContext context(const QuorumSystem& quorums, long horizon) {
  OracleContext ctx;
  ctx.epochs.push_back(EpochConfig{0, quorums});
  for (ProcessId p : quorums.processes()) ctx.clocks.emplace(p, ClockSchedule(p, 0, {{0, 1}}, 0));
  ctx.horizon = horizon;
  ctx.latency_bound = 1;
  return ctx;
}

StateEvent grant(long t, ProcessId at, ProcessId to, long finish) { return {t, at, 0, to, cv(finish), cv(0)}; }

TEST(OracleTest, DisjointQuorumsBreakUniqueness) {
  auto quorums = QuorumSystem::explicit_list({1, 2, 3, 4}, {{1, 2}, {3, 4}});
  OracleContext ctx = context(quorums, 20);
  Trace trace = {grant(1, 1, 1, 10), grant(1, 2, 1, 10), grant(2, 3, 3, 10), grant(2, 4, 3, 10)};
  CheckResult c = check_uniqueness(ctx, trace);
  EXPECT_EQ(c.verdict, Verdict::Fail);
  EXPECT_NE(c.detail.find("t=2 leaders 1"), std::string::npos) << c.detail;
  EXPECT_NE(c.detail.find("3 granted by {3,4}"), std::string::npos) << c.detail;
}

TEST(OracleTest, MajorityGrantsAreUnique) {
  OracleContext ctx = context(QuorumSystem::majority({1, 2, 3}), 20);
  Trace trace = {grant(1, 1, 1, 10), grant(1, 2, 1, 10), grant(2, 3, 3, 10), grant(11, 2, 3, 15),
                 grant(11, 3, 3, 15)};
  GlobalSnapshot at5 = snapshot_at(ctx, trace, 5);
  EXPECT_TRUE(true_is_leader(at5, 1, ctx.epochs[0].quorums));
  EXPECT_TRUE(gamma(at5, 1, 2));
  EXPECT_FALSE(gamma(at5, 3, 2));
  GlobalSnapshot at12 = snapshot_at(ctx, trace, 12);
  EXPECT_TRUE(true_is_leader(at12, 3, ctx.epochs[0].quorums));
  EXPECT_FALSE(true_is_leader(at12, 1, ctx.epochs[0].quorums));
  Report r = analyze(ctx, trace);
  EXPECT_EQ(r.find("uniqueness")->verdict, Verdict::Pass);
  ASSERT_GE(r.leaders.size(), 3u);
}

TEST(OracleTest, StaleExpirationBreaksCoreInvariant) {
  OracleContext ctx = context(QuorumSystem::majority({1, 2, 3}), 30);
  Trace trace = {grant(1, 1, 1, 10), grant(1, 2, 1, 10), StateEvent{2, 1, 0, 1, cv(10), cv(20)}};
  CheckResult c = check_core_invariant(ctx, trace);
  EXPECT_EQ(c.verdict, Verdict::Fail);
  EXPECT_NE(c.detail.find("t=10 process 1 has E="), std::string::npos) << c.detail;
}

TEST(OracleTest, GrantExpiryIsExact) {
  // Grants lapse at clock value 10 on a clock running at 1/2 after t=4.
  OracleContext ctx = context(QuorumSystem::majority({1, 2, 3}), 30);
  ctx.clocks.erase(2);
  ctx.clocks.emplace(2, ClockSchedule(2, 0, {{0, 1}, {4, ratio(1, 2)}}, ratio(1, 2)));
  Trace trace = {grant(1, 1, 1, 10), grant(1, 2, 1, 10), StateEvent{1, 1, 0, 1, cv(10), cv(10)}};
  // Process 2 reads 10 at t=16, process 1 at t=10: leadership ends at 10.
  Report r = analyze(ctx, trace);
  EXPECT_EQ(r.find("core_invariant")->verdict, Verdict::Pass);
  bool found = false;
  for (const auto& iv : r.leaders) {
    if (iv.leader == 1u) {
      EXPECT_EQ(iv.to, 10);
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(OracleTest, IncomparableEdictsBreakOrder) {
  OracleContext ctx = context(QuorumSystem::majority({1, 2, 3}), 30);
  QuorumTimestamp a{{{1, cv(10)}, {2, cv(20)}}};
  QuorumTimestamp b{{{1, cv(12)}, {2, cv(18)}}};
  Trace trace = {EdictEvent{1, 1, 0, 0, a}, EdictEvent{2, 2, 0, 0, b}};
  CheckResult c = check_edict_properties(ctx, trace);
  EXPECT_EQ(c.verdict, Verdict::Fail);
  Report r = analyze(ctx, trace);
  EXPECT_EQ(r.find("edict_order")->verdict, Verdict::Fail);
}

TEST(OracleTest, OrderedEdictsPass) {
  OracleContext ctx = context(QuorumSystem::majority({1, 2, 3}), 30);
  QuorumTimestamp a{{{1, cv(10)}, {2, cv(20)}}};
  QuorumTimestamp b{{{2, cv(21)}, {3, cv(1)}}};
  Trace trace = {EdictEvent{1, 1, 0, 0, a}, EdictEvent{2, 1, 0, 1, a}, EdictEvent{3, 2, 0, 0, b}};
  Report r = analyze(ctx, trace);
  EXPECT_EQ(r.find("edict_order")->verdict, Verdict::Pass);
  EXPECT_EQ(r.edicts, 3u);
}

TEST(OracleTest, NoLeaderMeansNoElection) {
  OracleContext ctx = context(QuorumSystem::majority({1, 2, 3}), 30);
  CheckResult c = check_eventual_election(ctx, {}, Rational(20));
  EXPECT_NE(c.verdict, Verdict::Pass);
  EXPECT_TRUE(is_liveness_check("eventual_election"));
  EXPECT_FALSE(is_liveness_check("uniqueness"));
}

Scenario basic() { return load_scenario(NERIO_SCENARIO_DIR "/basic.scenario"); }

TEST(OracleTest, BasicScenarioPassesEverything) {
  RunResult r = run(basic());
  for (const auto& c : r.report.checks) EXPECT_EQ(c.verdict, Verdict::Pass) << c.name << ": " << c.detail;
  EXPECT_GT(r.report.completions, 0u);
  EXPECT_GT(r.report.edicts, 0u);
  EXPECT_TRUE(r.report.first_election_after_gst);
}

TEST(OracleTest, WithoutRenewalLeadershipLapses) {
  Scenario s = basic();
  s.protocol.renew = false;
  s.protocol.i = 0;
  RunResult r = run(s);
  EXPECT_FALSE(r.report.safety_violation());
  EXPECT_EQ(r.report.find("stability")->verdict, Verdict::Fail) << r.report.find("stability")->detail;
  EXPECT_TRUE(r.report.liveness_shortfall());
}

TEST(OracleTest, CrashedLeaderStaysLeaderUntilGrantsLapse) {
  Scenario s = basic();
  RunResult dry = run(s);
  ASSERT_FALSE(dry.report.leaders.empty());
  std::optional<LeaderInterval> first;
  for (const auto& iv : dry.report.leaders) {
    if (iv.leader && iv.to - iv.from > 2) {
      first = iv;
      break;
    }
  }
  ASSERT_TRUE(first);
  RealTime at = first->from + 1;
  s.gst = at;  // crashes happen by gst
  s.crashes.push_back({*first->leader, at});
  RunResult r = run(s);
  EXPECT_FALSE(r.report.safety_violation());
  bool held = false;
  bool replaced = false;
  for (const auto& iv : r.report.leaders) {
    if (iv.leader == first->leader && iv.from <= at && at < iv.to) held = true;
    if (iv.leader && *iv.leader != *first->leader && iv.from > at) replaced = true;
  }
  EXPECT_TRUE(held) << "the crashed process keeps its grants";
  EXPECT_TRUE(replaced) << "someone else is elected later";
}

}  // namespace
}  // namespace nerio
