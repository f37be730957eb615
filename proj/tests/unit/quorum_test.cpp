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

#include "nerio/quorum.hpp"
#include "nerio/rational.hpp"

namespace nerio {
namespace {

ProcessSet range(ProcessId lo, ProcessId hi) {
  ProcessSet s;
  for (ProcessId p = lo; p <= hi; ++p) s.insert(p);
  return s;
}

TEST(QuorumTest, MajorityMembership) {
  auto q = QuorumSystem::majority(range(1, 5));
  EXPECT_TRUE(q.is_quorum({1, 2, 3}));
  EXPECT_FALSE(q.is_quorum({1, 2}));
  EXPECT_THROW(q.is_quorum({1, 9}), std::domain_error);
  EXPECT_EQ(q.min_quorum_size(), 3u);
}

TEST(QuorumTest, ExplicitAcceptsSupersets) {
  auto q = QuorumSystem::explicit_list(range(1, 4), {{1, 2}, {2, 3}, {1, 3}});
  EXPECT_TRUE(q.validate());
  EXPECT_TRUE(q.is_quorum({1, 3, 4}));
  EXPECT_FALSE(q.is_quorum({3, 4}));
  EXPECT_EQ(q.find_quorum({1, 3, 4}), (ProcessSet{1, 3}));
}

TEST(QuorumTest, ExplicitIsMinimized) {
  auto q = QuorumSystem::explicit_list(range(1, 3), {{1, 2, 3}, {1, 2}});
  EXPECT_EQ(q.quorums(), (std::vector<ProcessSet>{{1, 2}}));
}

TEST(QuorumTest, DisjointPairIsNamed) {
  auto q = QuorumSystem::explicit_list(range(1, 4), {{1, 2}, {3, 4}});
  EXPECT_FALSE(q.validate());
  auto pair = q.disjoint_pair();
  ASSERT_TRUE(pair);
  EXPECT_EQ(pair->first, (ProcessSet{1, 2}));
  EXPECT_EQ(pair->second, (ProcessSet{3, 4}));
  EXPECT_NE(q.validation_error().find("{1,2}"), std::string::npos);
  EXPECT_NE(q.validation_error().find("{3,4}"), std::string::npos);
}

TEST(QuorumTest, ForeignOrEmptyQuorumsAreInvalid) {
  EXPECT_FALSE(QuorumSystem::explicit_list(range(1, 3), {{1, 7}}).validate());
  EXPECT_FALSE(QuorumSystem::explicit_list(range(1, 3), {{}}).validate());
  EXPECT_FALSE(QuorumSystem::explicit_list(range(1, 3), {}).validate());
}

TEST(QuorumTest, AllThreeSubsetsOfFive) {
  std::vector<ProcessSet> all;
  for (unsigned m = 0; m < 32; ++m) {
    if (__builtin_popcount(m) != 3) continue;
    ProcessSet s;
    for (ProcessId p = 1; p <= 5; ++p) {
      if (m & (1u << (p - 1))) s.insert(p);
    }
    all.push_back(s);
  }
  EXPECT_EQ(all.size(), 10u);
  EXPECT_TRUE(QuorumSystem::explicit_list(range(1, 5), all).validate());
}

// Any two majorities intersect, for every pair of subsets of up to 7 processes.
TEST(QuorumTest, MajoritiesIntersectExhaustively) {
  for (ProcessId n = 1; n <= 7; ++n) {
    auto q = QuorumSystem::majority(range(1, n));
    EXPECT_TRUE(q.validate());
    const unsigned total = 1u << n;
    auto as_set = [&](unsigned m) {
      ProcessSet s;
      for (ProcessId p = 1; p <= n; ++p) {
        if (m & (1u << (p - 1))) s.insert(p);
      }
      return s;
    };
    for (unsigned a = 0; a < total; ++a) {
      if (!q.is_quorum(as_set(a))) continue;
      for (unsigned b = 0; b < total; ++b) {
        if (q.is_quorum(as_set(b))) {
          ASSERT_NE(a & b, 0u) << "n=" << n;
        }
      }
    }
  }
}

TEST(QuorumTest, ToString) { EXPECT_EQ(to_string(ProcessSet{3, 1, 2}), "{1,2,3}"); }

TEST(RationalTest, ParseAndPrint) {
  EXPECT_EQ(parse_rational("7"), 7);
  EXPECT_EQ(parse_rational("-3/4"), ratio(-3, 4));
  EXPECT_EQ(parse_rational("0.0125"), ratio(1, 80));
  EXPECT_EQ(to_string(ratio(6, 4)), "3/2");
  EXPECT_EQ(to_string(Rational(5)), "5");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

TEST(RationalTest, GridHelpers) {
  EXPECT_EQ(ceil_to_grid(ratio(1, 3), 1000), ratio(334, 1000));
  EXPECT_EQ(ceil_to_grid(ratio(1, 4), 1000), ratio(1, 4));
  std::mt19937_64 rng(1);
  for (int k = 0; k < 100; ++k) {
    Rational r = random_on_grid(rng, ratio(1, 3), 2, 10);
    EXPECT_GE(r, ratio(1, 3));
    EXPECT_LE(r, 2);
    EXPECT_EQ(Rational(r * 10).get_den(), 1);
  }
  EXPECT_EQ(random_on_grid(rng, ratio(1, 3), ratio(1, 3), 10), ratio(1, 3));
}

}  // namespace
}  // namespace nerio
