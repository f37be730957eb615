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

#include "nerio/edict.hpp"

#include <stdexcept>

#include "nerio/process.hpp"

namespace nerio {

std::string to_string(Order order) {
  switch (order) {
    case Order::Less: return "less";
    case Order::Greater: return "greater";
    case Order::Equal: return "equal";
    case Order::Incomparable: return "incomparable";
  }
  return "?";
}

Order compare_qt(const QuorumTimestamp& a, const QuorumTimestamp& b) {
  if (a == b) return Order::Equal;
  bool smaller = false;
  bool larger = false;
  auto i = a.entries.begin();
  auto j = b.entries.begin();
  while (i != a.entries.end() && j != b.entries.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      if (i->second < j->second) smaller = true;
      if (j->second < i->second) larger = true;
      ++i;
      ++j;
    }
  }
  if (smaller && !larger) return Order::Less;
  if (larger && !smaller) return Order::Greater;
  return Order::Incomparable;
}

Order compare_edicts(const EdictTimestamp& a, const EdictTimestamp& b) {
  if (a.epoch != b.epoch) return a.epoch < b.epoch ? Order::Less : Order::Greater;
  Order qt = compare_qt(a.qt, b.qt);
  if (qt != Order::Equal) return qt;
  if (a.ec == b.ec) return Order::Equal;
  return a.ec < b.ec ? Order::Less : Order::Greater;
}

std::optional<Edict> create_edict(ProcessState& state, const ClockValue& now, std::string payload) {
  if (!state.last_qt || !is_leader_local(state, now)) return std::nullopt;
  Edict edict{state.self, EdictTimestamp{state.epoch, *state.last_qt, state.edict_counter}, std::move(payload)};
  ++state.edict_counter;
  return edict;
}

std::string to_string(const QuorumTimestamp& qt) {
  std::string out = "{";
  bool first = true;
  for (const auto& [q, sample] : qt.entries) {
    if (!first) out += ",";
    out += "(" + std::to_string(q) + "," + to_string(sample) + ")";
    first = false;
  }
  return out + "}";
}

QuorumTimestamp parse_quorum_timestamp(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("bad quorum timestamp '" + std::string(text) + "'"); };
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') fail();
  std::string_view body = text.substr(1, text.size() - 2);
  QuorumTimestamp qt;
  while (!body.empty()) {
    if (body.front() != '(') fail();
    auto comma = body.find(',');
    if (comma == std::string_view::npos) fail();
    auto id_text = std::string(body.substr(1, comma - 1));
    if (id_text.empty() || id_text.find_first_not_of("0123456789") != std::string::npos) fail();
    auto close = body.find(')', comma);  // closes the clock value
    if (close == std::string_view::npos || close + 1 >= body.size() || body[close + 1] != ')') fail();
    ClockValue sample = parse_clock_value(body.substr(comma + 1, close - comma));
    qt.entries.emplace(static_cast<ProcessId>(std::stoul(id_text)), sample);
    body.remove_prefix(close + 2);
    if (!body.empty()) {
      if (body.front() != ',') fail();
      body.remove_prefix(1);
    }
  }
  return qt;
}

}  // namespace nerio
