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
#include <utility>
#include <vector>

#include "nerio/types.hpp"

namespace nerio {

// A family of mutually intersecting subsets of a fixed process set.
// Explicit systems are kept as their minimal quorums; any superset of a
// listed quorum also counts as a quorum.
class QuorumSystem {
 public:
  enum class Kind { Majority, Explicit };

  static QuorumSystem majority(ProcessSet processes);
  // Quorums are minimized on construction. No validation happens here; call
  // validate() before use.
  static QuorumSystem explicit_list(ProcessSet processes, std::vector<ProcessSet> quorums);

  Kind kind() const { return kind_; }
  const ProcessSet& processes() const { return processes_; }
  const std::vector<ProcessSet>& quorums() const { return quorums_; }

  // Throws std::domain_error if s contains a process outside the system.
  bool is_quorum(const ProcessSet& s) const;

  // A quorum contained in s, if any: s itself for majority systems, the
  // first listed minimal quorum otherwise.
  std::optional<ProcessSet> find_quorum(const ProcessSet& s) const;

  // Every quorum is a non-empty subset of the process set and every two
  // quorums intersect.
  bool validate() const;

  // Human readable reason for validate() == false; empty when valid.
  std::string validation_error() const;

  // A witness pair of disjoint quorums, if one exists.
  std::optional<std::pair<ProcessSet, ProcessSet>> disjoint_pair() const;

  // Smallest number of members that can form a quorum.
  std::size_t min_quorum_size() const;

  friend bool operator==(const QuorumSystem&, const QuorumSystem&) = default;

 private:
  Kind kind_ = Kind::Majority;
  ProcessSet processes_;
  std::vector<ProcessSet> quorums_;
};

std::string to_string(const ProcessSet& s);

}  // namespace nerio
