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

#include <random>
#include <stdexcept>

#include "nerio/clock.hpp"

namespace nerio {
namespace {

ClockSchedule constant(Rational rate, Rational initial = 0, Rational rho = ratio(1, 10)) {
  return ClockSchedule(1, initial, {{0, rate}}, rho);
}

TEST(ClockValueTest, LexicographicOrder) {
  EXPECT_LT(ClockValue(Rational(7), 0), ClockValue(Rational(7), 1));
  EXPECT_LT(ClockValue(Rational(7), 9), ClockValue(Rational(8), 0));
  EXPECT_EQ(ClockValue(Rational(7), 2), ClockValue(Rational(7), 2));
  EXPECT_LT(ClockValue(Rational(1000000)), ClockValue::infinity());
  EXPECT_FALSE(ClockValue::infinity() < ClockValue::infinity());
}

TEST(ClockValueTest, TextRoundTrip) {
  for (const ClockValue& v : {ClockValue(ratio(3, 4), 2), ClockValue(Rational(0)), ClockValue::infinity()}) {
    EXPECT_EQ(parse_clock_value(to_string(v)), v);
  }
  EXPECT_EQ(to_string(ClockValue(ratio(3, 4), 2)), "(3/4,2)");
  EXPECT_THROW(parse_clock_value("(1,2"), std::invalid_argument);
}

TEST(ClockScheduleTest, ValueAt) {
  EXPECT_EQ(constant(1).value_at(5), 5);
  EXPECT_EQ(constant(ratio(101, 100), 100).value_at(10), ratio(1101, 10));
  ClockSchedule two(1, 0, {{0, ratio(99, 100)}, {10, ratio(101, 100)}}, ratio(1, 100));
  EXPECT_EQ(two.value_at(20), 20);
  EXPECT_EQ(two.value_at(10), ratio(99, 10));
}

TEST(ClockScheduleTest, InverseAt) {
  EXPECT_EQ(constant(1).inverse_at(5), 5);
  EXPECT_EQ(constant(ratio(101, 100)).inverse_at(ratio(101, 10)), 10);
  EXPECT_THROW(constant(1, 3).inverse_at(2), std::domain_error);
}

TEST(ClockScheduleTest, RejectsBadSegments) {
  EXPECT_THROW(ClockSchedule(1, 0, {}, 0), std::invalid_argument);
  EXPECT_THROW(ClockSchedule(1, 0, {{1, 1}}, 0), std::invalid_argument);
  EXPECT_THROW(ClockSchedule(1, 0, {{0, 2}}, ratio(1, 10)), std::invalid_argument);
  EXPECT_THROW(ClockSchedule(1, 0, {{0, 1}, {5, 1}, {5, 1}}, 0), std::invalid_argument);
}

TEST(ClockScheduleTest, KeepsRunningForever) {
  ClockSchedule c = constant(ratio(99, 100), 0, ratio(1, 100));
  EXPECT_EQ(c.value_at(1000000), 990000);
  EXPECT_EQ(c.inverse_at(990000), 1000000);
}

TEST(SampleTest, CounterBreaksTies) {
  ClockSchedule c = constant(1, 7);
  ClockValue a = sample(c, 0, std::nullopt);
  ClockValue b = sample(c, 0, a);
  EXPECT_EQ(a, ClockValue(Rational(7), 0));
  EXPECT_EQ(b, ClockValue(Rational(7), 1));
  EXPECT_EQ(sample(c, 1, b), ClockValue(Rational(8), 0));
}

TEST(SampleTest, ThreeSamples) {
  ClockSchedule c = constant(1, 3);
  ClockValue s0 = sample(c, 0, std::nullopt);
  ClockValue s1 = sample(c, 0, s0);
  ClockValue s2 = sample(c, 1, s1);
  EXPECT_EQ(s0, ClockValue(Rational(3), 0));
  EXPECT_EQ(s1, ClockValue(Rational(3), 1));
  EXPECT_EQ(s2, ClockValue(Rational(4), 0));
}

// The drift envelope on random schedules.
TEST(ClockPropertyTest, InverseAndEnvelope) {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 500; ++k) {
    Rational rho = random_on_grid(rng, 0, ratio(1, 20), 10000);
    std::vector<ClockSegment> segs;
    RealTime at = 0;
    for (int n = 1 + static_cast<int>(rng() % 4); n > 0; --n) {
      segs.push_back({at, random_on_grid(rng, 1 - rho, 1 + rho, 10000)});
      at += random_on_grid(rng, ratio(1, 10), 20, 100);
    }
    ClockSchedule c(1, random_on_grid(rng, 0, 50, 100), segs, rho);
    RealTime t = random_on_grid(rng, 0, 100, 1000);
    RealTime dt = random_on_grid(rng, 0, 30, 1000);
    Rational target = random_on_grid(rng, c.initial(), c.initial() + 100, 1000);
    RealTime inv = c.inverse_at(target);
    EXPECT_EQ(c.value_at(inv), target);
    EXPECT_EQ(c.value_at(t) < target, t < inv);
    Rational grown = c.value_at(t + dt) - c.value_at(t);
    EXPECT_LE((1 - rho) * dt, grown);
    EXPECT_LE(grown, (1 + rho) * dt);
  }
}

TEST(SkewBoundedTest, ZeroSkewGivesIdenticalClocks) {
  SkewOptions opt;
  opt.initials = {5, 5};
  opt.seed = 3;
  auto s = make_skew_bounded({1, 2}, 0, ratio(1, 100), opt);
  ASSERT_EQ(s.size(), 2u);
  for (int t = 0; t < 120; t += 7) EXPECT_EQ(s[0].value_at(t), s[1].value_at(t));
}

TEST(SkewBoundedTest, GapWithinBound) {
  SkewOptions opt;
  opt.initials = {0, ratio(3, 2)};
  auto same_rate = make_skew_bounded({1, 2}, 2, 0, opt);
  EXPECT_EQ(max_pairwise_skew(same_rate, 100), ratio(3, 2));

  opt.initials = {0, 1, ratio(1, 2), 2};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    opt.seed = seed;
    auto s = make_skew_bounded({1, 2, 3, 4}, 2, ratio(1, 100), opt);
    EXPECT_LE(max_pairwise_skew(s, 150), 2);
    for (const auto& c : s) EXPECT_EQ(c.rho(), ratio(1, 100));
  }
}

TEST(SkewBoundedTest, InfeasibleInitials) {
  SkewOptions opt;
  opt.initials = {0, 3};
  EXPECT_THROW(make_skew_bounded({1, 2}, 1, ratio(1, 100), opt), std::invalid_argument);
}

}  // namespace
}  // namespace nerio
