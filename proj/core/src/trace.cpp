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

#include "nerio/trace.hpp"

#include <sstream>
#include <stdexcept>

namespace nerio {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string quote(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

std::string id_or_bottom(const std::optional<ProcessId>& p) { return p ? std::to_string(*p) : "_"; }

// Reads "key=value" tokens in a fixed order.
class LineReader {
 public:
  explicit LineReader(std::string_view line) : line_(line) {
    auto space = line.find(' ');
    head_ = line.substr(0, space);
    rest_ = space == std::string_view::npos ? std::string_view{} : line.substr(space + 1);
  }

  std::string_view head() const { return head_; }

  std::string_view take(std::string_view key) {
    if (rest_.substr(0, key.size()) != key || rest_.size() <= key.size() || rest_[key.size()] != '=') {
      fail("expected field '" + std::string(key) + "'");
    }
    rest_.remove_prefix(key.size() + 1);
    auto space = rest_.find(' ');
    std::string_view value = rest_.substr(0, space);
    rest_ = space == std::string_view::npos ? std::string_view{} : rest_.substr(space + 1);
    return value;
  }

  std::string quoted(std::string_view key) {
    if (rest_.substr(0, key.size() + 2) != std::string(key) + "=\"") fail("expected quoted field");
    rest_.remove_prefix(key.size() + 2);
    std::string out;
    std::size_t i = 0;
    for (; i < rest_.size(); ++i) {
      char c = rest_[i];
      if (c == '\\' && i + 1 < rest_.size()) {
        char n = rest_[++i];
        out += n == 'n' ? '\n' : n;
      } else if (c == '"') {
        break;
      } else {
        out += c;
      }
    }
    if (i >= rest_.size()) fail("unterminated quote");
    rest_.remove_prefix(i + 1);
    return out;
  }

  RealTime time() { return parse_rational(take("t")); }
  ProcessId id(std::string_view key) {
    auto v = take(key);
    if (v.empty() || v.find_first_not_of("0123456789") != std::string_view::npos) fail("bad id");
    return static_cast<ProcessId>(std::stoul(std::string(v)));
  }
  std::uint64_t number(std::string_view key) {
    auto v = take(key);
    if (v.empty() || v.find_first_not_of("0123456789") != std::string_view::npos) fail("bad number");
    return std::stoull(std::string(v));
  }
  ClockValue clock(std::string_view key) { return parse_clock_value(take(key)); }
  Payload msg() { return parse_payload(take("msg")); }

  void finish() const {
    if (!rest_.empty()) fail("trailing text '" + std::string(rest_) + "'");
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("bad trace line '" + std::string(line_) + "': " + why);
  }

 private:
  std::string_view line_;
  std::string_view head_;
  std::string_view rest_;
};

}  // namespace

std::string to_string(const TraceEvent& event) {
  auto t = [](const RealTime& time) { return "t=" + to_string(time); };
  return std::visit(
      overloaded{
          [&](const SendEvent& e) {
            return "send " + t(e.t) + " from=" + std::to_string(e.from) + " to=" + std::to_string(e.to) +
                   " epoch=" + std::to_string(e.epoch) + " msg=" + to_string(e.msg);
          },
          [&](const RecvEvent& e) {
            return "recv " + t(e.t) + " at=" + std::to_string(e.at) + " from=" + std::to_string(e.from) +
                   " epoch=" + std::to_string(e.epoch) + " msg=" + to_string(e.msg);
          },
          [&](const DropEvent& e) {
            return "drop " + t(e.t) + " from=" + std::to_string(e.from) + " to=" + std::to_string(e.to) +
                   " epoch=" + std::to_string(e.epoch) + " reason=" + e.reason + " msg=" + to_string(e.msg);
          },
          [&](const TimerEvent& e) { return "timer " + t(e.t) + " at=" + std::to_string(e.at) + " kind=" + e.kind; },
          [&](const CrashEvent& e) { return "crash " + t(e.t) + " at=" + std::to_string(e.at); },
          [&](const StateEvent& e) {
            return "state " + t(e.t) + " at=" + std::to_string(e.at) + " epoch=" + std::to_string(e.epoch) +
                   " A=" + id_or_bottom(e.assignee) + " F=" + to_string(e.finish) + " E=" + to_string(e.expiration);
          },
          [&](const CompleteEvent& e) {
            return "complete " + t(e.t) + " at=" + std::to_string(e.at) + " epoch=" + std::to_string(e.epoch) +
                   " start=" + to_string(e.start) + " E=" + to_string(e.expiration) + " qt=" + to_string(e.qt);
          },
          [&](const FailEvent& e) {
            return "fail " + t(e.t) + " at=" + std::to_string(e.at) + " start=" + to_string(e.start) +
                   " reason=" + e.reason;
          },
          [&](const EdictEvent& e) {
            return "edict " + t(e.t) + " creator=" + std::to_string(e.creator) + " epoch=" + std::to_string(e.epoch) +
                   " ec=" + std::to_string(e.ec) + " qt=" + to_string(e.qt);
          },
          [&](const VerifiedEvent& e) {
            return "verified " + t(e.t) + " at=" + std::to_string(e.at) + " target=" + std::to_string(e.target) +
                   " start=" + to_string(e.start);
          },
          [&](const UnblockEvent& e) {
            return "unblock " + t(e.t) + " at=" + std::to_string(e.at) + " epoch=" + std::to_string(e.epoch);
          },
          [&](const ReleaseEvent& e) { return "release " + t(e.t) + " at=" + std::to_string(e.at); },
          [&](const ReconfigureEvent& e) {
            return "reconfigure " + t(e.t) + " epoch=" + std::to_string(e.epoch) +
                   " initiator=" + std::to_string(e.initiator);
          },
          [&](const VerdictEvent& e) {
            return "verdict check=" + e.check + " result=" + e.result + " detail=" + quote(e.detail);
          },
      },
      event);
}

TraceEvent parse_trace_event(std::string_view line) {
  LineReader r(line);
  auto head = r.head();
  TraceEvent out;
  if (head == "send") {
    SendEvent e;
    e.t = r.time();
    e.from = r.id("from");
    e.to = r.id("to");
    e.epoch = static_cast<EpochId>(r.number("epoch"));
    e.msg = r.msg();
    out = std::move(e);
  } else if (head == "recv") {
    RecvEvent e;
    e.t = r.time();
    e.at = r.id("at");
    e.from = r.id("from");
    e.epoch = static_cast<EpochId>(r.number("epoch"));
    e.msg = r.msg();
    out = std::move(e);
  } else if (head == "drop") {
    DropEvent e;
    e.t = r.time();
    e.from = r.id("from");
    e.to = r.id("to");
    e.epoch = static_cast<EpochId>(r.number("epoch"));
    e.reason = std::string(r.take("reason"));
    e.msg = r.msg();
    out = std::move(e);
  } else if (head == "timer") {
    TimerEvent e;
    e.t = r.time();
    e.at = r.id("at");
    e.kind = std::string(r.take("kind"));
    out = std::move(e);
  } else if (head == "crash") {
    CrashEvent e;
    e.t = r.time();
    e.at = r.id("at");
    out = std::move(e);
  } else if (head == "state") {
    StateEvent e;
    e.t = r.time();
    e.at = r.id("at");
    e.epoch = static_cast<EpochId>(r.number("epoch"));
    auto a = r.take("A");
    if (a != "_") {
      if (a.empty() || a.find_first_not_of("0123456789") != std::string_view::npos) r.fail("bad assignee");
      e.assignee = static_cast<ProcessId>(std::stoul(std::string(a)));
    }
    e.finish = r.clock("F");
    e.expiration = r.clock("E");
    out = std::move(e);
  } else if (head == "complete") {
    CompleteEvent e;
    e.t = r.time();
    e.at = r.id("at");
    e.epoch = static_cast<EpochId>(r.number("epoch"));
    e.start = r.clock("start");
    e.expiration = r.clock("E");
    e.qt = parse_quorum_timestamp(r.take("qt"));
    out = std::move(e);
  } else if (head == "fail") {
    FailEvent e;
    e.t = r.time();
    e.at = r.id("at");
    e.start = r.clock("start");
    e.reason = std::string(r.take("reason"));
    out = std::move(e);
  } else if (head == "edict") {
    EdictEvent e;
    e.t = r.time();
    e.creator = r.id("creator");
    e.epoch = static_cast<EpochId>(r.number("epoch"));
    e.ec = r.number("ec");
    e.qt = parse_quorum_timestamp(r.take("qt"));
    out = std::move(e);
  } else if (head == "verified") {
    VerifiedEvent e;
    e.t = r.time();
    e.at = r.id("at");
    e.target = r.id("target");
    e.start = r.clock("start");
    out = std::move(e);
  } else if (head == "unblock") {
    UnblockEvent e;
    e.t = r.time();
    e.at = r.id("at");
    e.epoch = static_cast<EpochId>(r.number("epoch"));
    out = std::move(e);
  } else if (head == "release") {
    ReleaseEvent e;
    e.t = r.time();
    e.at = r.id("at");
    out = std::move(e);
  } else if (head == "reconfigure") {
    ReconfigureEvent e;
    e.t = r.time();
    e.epoch = static_cast<EpochId>(r.number("epoch"));
    e.initiator = r.id("initiator");
    out = std::move(e);
  } else if (head == "verdict") {
    VerdictEvent e;
    e.check = std::string(r.take("check"));
    e.result = std::string(r.take("result"));
    e.detail = r.quoted("detail");
    out = std::move(e);
  } else {
    r.fail("unknown event");
  }
  r.finish();
  return out;
}

std::string emit_trace(const Trace& trace) {
  std::string out = "# nerio-trace v1\n";
  for (const auto& e : trace) {
    out += to_string(e);
    out += '\n';
  }
  return out;
}

Trace parse_trace(std::string_view text) {
  Trace out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool header = false;
  while (pos < text.size()) {
    ++line_no;
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line == "# nerio-trace v1") header = true;
      continue;
    }
    if (!header) throw std::invalid_argument("trace is missing the '# nerio-trace v1' header");
    try {
      out.push_back(parse_trace_event(line));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace nerio
