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

#include "nerio/message.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace nerio {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string id_or_bottom(const std::optional<ProcessId>& p) { return p ? std::to_string(*p) : "_"; }

std::string rational_or_inf(const std::optional<Rational>& r) { return r ? to_string(*r) : "inf"; }

class FieldReader {
 public:
  FieldReader(std::string_view original, std::string_view body) : original_(original) {
    int depth = 0;
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= body.size(); ++i) {
      if (i == body.size() || (body[i] == ',' && depth == 0)) {
        if (i > begin) split(body.substr(begin, i - begin));
        begin = i + 1;
        continue;
      }
      if (body[i] == '(' || body[i] == '{') ++depth;
      if (body[i] == ')' || body[i] == '}') --depth;
    }
  }

  std::string_view take(std::string_view key) {
    if (next_ >= fields_.size() || fields_[next_].first != key) {
      fail("expected field '" + std::string(key) + "'");
    }
    return fields_[next_++].second;
  }

  void finish() const {
    if (next_ != fields_.size()) fail("unexpected field '" + std::string(fields_[next_].first) + "'");
  }

  ProcessId id(std::string_view key) {
    auto v = take(key);
    if (v.empty() || v.find_first_not_of("0123456789") != std::string_view::npos) fail("bad process id");
    return static_cast<ProcessId>(std::stoul(std::string(v)));
  }

  std::optional<ProcessId> id_or_bottom(std::string_view key) {
    if (peek_value() == "_") {
      take(key);
      return std::nullopt;
    }
    return id(key);
  }

  std::uint64_t number(std::string_view key) {
    auto v = take(key);
    if (v.empty() || v.find_first_not_of("0123456789") != std::string_view::npos) fail("bad number");
    return std::stoull(std::string(v));
  }

  ClockValue clock(std::string_view key) { return parse_clock_value(take(key)); }

  Rational rational(std::string_view key) { return parse_rational(take(key)); }

  std::optional<Rational> rational_or_inf(std::string_view key) {
    auto v = take(key);
    if (v == "inf") return std::nullopt;
    return parse_rational(v);
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("bad message '" + std::string(original_) + "': " + why);
  }

 private:
  std::string_view peek_value() const {
    return next_ < fields_.size() ? fields_[next_].second : std::string_view{};
  }

  void split(std::string_view field) {
    auto eq = field.find('=');
    if (eq == std::string_view::npos) fail("field without '='");
    fields_.emplace_back(field.substr(0, eq), field.substr(eq + 1));
  }

  std::string_view original_;
  std::vector<std::pair<std::string_view, std::string_view>> fields_;
  std::size_t next_ = 0;
};

}  // namespace

std::string_view kind_name(const Payload& payload) {
  return std::visit(overloaded{
                        [](const GrantRequest&) { return std::string_view("GrantRequest"); },
                        [](const Ok&) { return std::string_view("Ok"); },
                        [](const GrantError&) { return std::string_view("GrantError"); },
                        [](const Release&) { return std::string_view("Release"); },
                        [](const Revoke&) { return std::string_view("Revoke"); },
                        [](const VerifyLeadership&) { return std::string_view("VerifyLeadership"); },
                        [](const Remainder&) { return std::string_view("Remainder"); },
                        [](const Forward&) { return std::string_view("Forward"); },
                        [](const Ping&) { return std::string_view("Ping"); },
                        [](const Pong&) { return std::string_view("Pong"); },
                        [](const WedgeQuery&) { return std::string_view("WedgeQuery"); },
                        [](const WedgeStatus&) { return std::string_view("WedgeStatus"); },
                    },
                    payload);
}

bool is_fifo_class(const Payload& payload) {
  return std::holds_alternative<GrantRequest>(payload) || std::holds_alternative<Release>(payload) ||
         std::holds_alternative<Revoke>(payload);
}

bool is_cross_epoch_class(const Payload& payload) {
  if (auto* req = std::get_if<GrantRequest>(&payload)) return req->is_wedge();
  return std::holds_alternative<Ok>(payload) || std::holds_alternative<WedgeQuery>(payload) ||
         std::holds_alternative<WedgeStatus>(payload);
}

std::string to_string(const Payload& payload) {
  std::string fields = std::visit(
      overloaded{
          [](const GrantRequest& m) {
            return "from=" + id_or_bottom(m.from) + ",start=" + to_string(m.start) +
                   ",delta=" + rational_or_inf(m.delta);
          },
          [](const Ok& m) {
            return "from=" + std::to_string(m.from) + ",sample=" + to_string(m.responder_sample) +
                   ",start=" + to_string(m.start);
          },
          [](const GrantError& m) {
            return "from=" + std::to_string(m.from) + ",remaining=" + rational_or_inf(m.remaining) +
                   ",start=" + to_string(m.start);
          },
          [](const Release& m) { return "from=" + std::to_string(m.from) + ",seq=" + std::to_string(m.seq); },
          [](const Revoke& m) { return "from=" + std::to_string(m.from) + ",seq=" + std::to_string(m.seq); },
          [](const VerifyLeadership& m) {
            return "from=" + std::to_string(m.from) + ",start=" + to_string(m.start);
          },
          [](const Remainder& m) {
            return "from=" + std::to_string(m.from) + ",delta=" + to_string(m.delta) +
                   ",start=" + to_string(m.start);
          },
          [](const Forward& m) { return "leader=" + id_or_bottom(m.leader_hint); },
          [](const Ping& m) { return "from=" + std::to_string(m.from) + ",nonce=" + std::to_string(m.nonce); },
          [](const Pong& m) { return "from=" + std::to_string(m.from) + ",nonce=" + std::to_string(m.nonce); },
          [](const WedgeQuery& m) { return "from=" + std::to_string(m.from); },
          [](const WedgeStatus& m) {
            return "from=" + std::to_string(m.from) + ",wedged=" + (m.wedged ? "1" : "0");
          },
      },
      payload);
  return std::string(kind_name(payload)) + "{" + fields + "}";
}

Payload parse_payload(std::string_view text) {
  auto open = text.find('{');
  if (open == std::string_view::npos || text.back() != '}') {
    throw std::invalid_argument("bad message '" + std::string(text) + "'");
  }
  std::string_view kind = text.substr(0, open);
  FieldReader r(text, text.substr(open + 1, text.size() - open - 2));
  Payload out;
  if (kind == "GrantRequest") {
    GrantRequest m;
    m.from = r.id_or_bottom("from");
    m.start = r.clock("start");
    m.delta = r.rational_or_inf("delta");
    out = m;
  } else if (kind == "Ok") {
    Ok m;
    m.from = r.id("from");
    m.responder_sample = r.clock("sample");
    m.start = r.clock("start");
    out = m;
  } else if (kind == "GrantError") {
    GrantError m;
    m.from = r.id("from");
    m.remaining = r.rational_or_inf("remaining");
    m.start = r.clock("start");
    out = m;
  } else if (kind == "Release") {
    Release m;
    m.from = r.id("from");
    m.seq = r.number("seq");
    out = m;
  } else if (kind == "Revoke") {
    Revoke m;
    m.from = r.id("from");
    m.seq = r.number("seq");
    out = m;
  } else if (kind == "VerifyLeadership") {
    VerifyLeadership m;
    m.from = r.id("from");
    m.start = r.clock("start");
    out = m;
  } else if (kind == "Remainder") {
    Remainder m;
    m.from = r.id("from");
    m.delta = r.rational("delta");
    m.start = r.clock("start");
    out = m;
  } else if (kind == "Forward") {
    out = Forward{r.id_or_bottom("leader")};
  } else if (kind == "Ping") {
    Ping m;
    m.from = r.id("from");
    m.nonce = r.number("nonce");
    out = m;
  } else if (kind == "Pong") {
    Pong m;
    m.from = r.id("from");
    m.nonce = r.number("nonce");
    out = m;
  } else if (kind == "WedgeQuery") {
    out = WedgeQuery{r.id("from")};
  } else if (kind == "WedgeStatus") {
    WedgeStatus m;
    m.from = r.id("from");
    m.wedged = r.number("wedged") != 0;
    out = m;
  } else {
    r.fail("unknown kind");
  }
  r.finish();
  return out;
}

}  // namespace nerio
