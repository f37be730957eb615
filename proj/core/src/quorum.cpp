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

#include "nerio/quorum.hpp"

#include <algorithm>
#include <stdexcept>

namespace nerio {

namespace {

bool intersects(const ProcessSet& a, const ProcessSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

}  // namespace

QuorumSystem QuorumSystem::majority(ProcessSet processes) {
  QuorumSystem qs;
  qs.kind_ = Kind::Majority;
  qs.processes_ = std::move(processes);
  return qs;
}

QuorumSystem QuorumSystem::explicit_list(ProcessSet processes, std::vector<ProcessSet> quorums) {
  QuorumSystem qs;
  qs.kind_ = Kind::Explicit;
  qs.processes_ = std::move(processes);
  std::sort(quorums.begin(), quorums.end(),
            [](const ProcessSet& a, const ProcessSet& b) {
              return a.size() != b.size() ? a.size() < b.size() : a < b;
            });
  quorums.erase(std::unique(quorums.begin(), quorums.end()), quorums.end());
  for (const auto& q : quorums) {
    bool redundant = std::any_of(qs.quorums_.begin(), qs.quorums_.end(), [&](const ProcessSet& kept) {
      return std::includes(q.begin(), q.end(), kept.begin(), kept.end());
    });
    if (!redundant) qs.quorums_.push_back(q);
  }
  return qs;
}

bool QuorumSystem::is_quorum(const ProcessSet& s) const {
  for (ProcessId p : s) {
    if (!processes_.count(p)) {
      throw std::domain_error("process " + std::to_string(p) + " is not a member of the quorum system");
    }
  }
  return find_quorum(s).has_value();
}

std::optional<ProcessSet> QuorumSystem::find_quorum(const ProcessSet& s) const {
  if (kind_ == Kind::Majority) {
    std::size_t members = 0;
    for (ProcessId p : s) members += processes_.count(p);
    if (2 * members > processes_.size()) return s;
    return std::nullopt;
  }
  for (const auto& q : quorums_) {
    if (std::includes(s.begin(), s.end(), q.begin(), q.end())) return q;
  }
  return std::nullopt;
}

std::string QuorumSystem::validation_error() const {
  if (processes_.empty()) return "quorum system has no processes";
  if (kind_ == Kind::Majority) return {};
  if (quorums_.empty()) return "explicit quorum list is empty";
  for (const auto& q : quorums_) {
    if (q.empty()) return "explicit quorum list contains an empty quorum";
    if (!std::includes(processes_.begin(), processes_.end(), q.begin(), q.end())) {
      return "quorum " + to_string(q) + " is not a subset of " + to_string(processes_);
    }
  }
  if (auto pair = disjoint_pair()) {
    return "quorums " + to_string(pair->first) + " and " + to_string(pair->second) + " do not intersect";
  }
  return {};
}

bool QuorumSystem::validate() const { return validation_error().empty(); }

std::optional<std::pair<ProcessSet, ProcessSet>> QuorumSystem::disjoint_pair() const {
  if (kind_ == Kind::Majority) return std::nullopt;
  for (std::size_t i = 0; i < quorums_.size(); ++i) {
    for (std::size_t j = i; j < quorums_.size(); ++j) {
      if (!intersects(quorums_[i], quorums_[j])) return std::make_pair(quorums_[i], quorums_[j]);
    }
  }
  return std::nullopt;
}

std::size_t QuorumSystem::min_quorum_size() const {
  if (kind_ == Kind::Majority) return processes_.size() / 2 + 1;
  std::size_t best = processes_.size() + 1;
  for (const auto& q : quorums_) best = std::min(best, q.size());
  return best;
}

std::string to_string(const ProcessSet& s) {
  std::string out = "{";
  bool first = true;
  for (ProcessId p : s) {
    if (!first) out += ",";
    out += std::to_string(p);
    first = false;
  }
  return out + "}";
}

}  // namespace nerio
