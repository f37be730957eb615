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

#include "nerio/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace nerio {

ScenarioError::ScenarioError(std::size_t line, std::string field, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + (field.empty() ? "" : ", field '" + field + "'") + ": " +
                         message),
      line_(line),
      field_(std::move(field)) {}

std::vector<EpochConfig> Scenario::epochs() const {
  std::vector<EpochConfig> out{EpochConfig{0, quorums}};
  for (const auto& r : reconfigurations) out.push_back(r.next);
  return out;
}

ProcessSet Scenario::all_processes() const {
  ProcessSet out;
  for (const auto& e : epochs()) out.insert(e.processes().begin(), e.processes().end());
  return out;
}

ProtocolConfig Scenario::protocol_config() const { return ProtocolConfig{variant, rho, skew, mutation}; }

std::string to_string(ClockMode mode) { return mode == ClockMode::Random ? "random" : "extreme"; }
std::string to_string(DeltaMode mode) { return mode == DeltaMode::Policy ? "policy" : "random"; }

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || (text[i] == sep && depth == 0)) {
      out.push_back(text.substr(begin, i - begin));
      begin = i + 1;
    } else if (text[i] == '{') {
      ++depth;
    } else if (text[i] == '}') {
      --depth;
    }
  }
  return out;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

class Fields {
 public:
  Fields(std::size_t line, std::vector<std::string_view> toks, std::initializer_list<std::string_view> allowed)
      : line_(line) {
    for (auto tok : toks) {
      auto eq = tok.find('=');
      if (eq == std::string_view::npos) throw ScenarioError(line, std::string(tok), "expected key=value");
      std::string key(tok.substr(0, eq));
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw ScenarioError(line, key, "unknown field");
      }
      if (!values_.emplace(key, tok.substr(eq + 1)).second) throw ScenarioError(line, key, "repeated field");
    }
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string_view get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ScenarioError(line_, key, "missing field");
    return it->second;
  }

  template <class F>
  auto convert(const std::string& key, F&& f) const {
    try {
      return f(get(key));
    } catch (const ScenarioError&) {
      throw;
    } catch (const std::exception& e) {
      throw ScenarioError(line_, key, e.what());
    }
  }

  Rational rational(const std::string& key) const { return convert(key, parse_rational); }

  Rational rational_or(const std::string& key, const Rational& fallback) const {
    return has(key) ? rational(key) : fallback;
  }

  bool on_off(const std::string& key) const {
    return convert(key, [](std::string_view v) {
      if (v == "on") return true;
      if (v == "off") return false;
      throw std::invalid_argument("expected on or off, got '" + std::string(v) + "'");
    });
  }

 private:
  std::size_t line_;
  std::map<std::string, std::string_view> values_;
};

std::uint64_t parse_u64(std::string_view text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("not a non-negative integer: '" + std::string(text) + "'");
  }
  std::uint64_t v = 0;
  for (char c : text) {
    std::uint64_t next = v * 10 + static_cast<std::uint64_t>(c - '0');
    if (next / 10 != v) throw std::invalid_argument("integer too large: '" + std::string(text) + "'");
    v = next;
  }
  return v;
}

ProcessId parse_process(std::string_view text) {
  std::uint64_t v = parse_u64(text);
  if (v > 0xffffffffu) throw std::invalid_argument("process id too large: '" + std::string(text) + "'");
  return static_cast<ProcessId>(v);
}

ProcessSet parse_process_list(std::string_view text) {
  ProcessSet out;
  for (auto part : split(text, ',')) {
    if (!out.insert(parse_process(part)).second) {
      throw std::invalid_argument("process " + std::string(part) + " listed twice");
    }
  }
  return out;
}

ProcessSet parse_braced_set(std::string_view text) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw std::invalid_argument("expected {a,b,...}, got '" + std::string(text) + "'");
  }
  auto body = text.substr(1, text.size() - 2);
  if (body.empty()) return {};
  return parse_process_list(body);
}

std::vector<ProcessSet> parse_set_list(std::string_view text) {
  std::vector<ProcessSet> out;
  for (auto part : split(text, '|')) out.push_back(parse_braced_set(part));
  return out;
}

QuorumSystem parse_quorums(std::string_view text, const ProcessSet& processes) {
  if (text == "majority") return QuorumSystem::majority(processes);
  return QuorumSystem::explicit_list(processes, parse_set_list(text));
}

std::vector<ClockSegment> parse_segments(std::string_view text) {
  std::vector<ClockSegment> out;
  for (auto part : split(text, ';')) {
    auto colon = part.find(':');
    if (colon == std::string_view::npos) {
      throw std::invalid_argument("expected start:rate, got '" + std::string(part) + "'");
    }
    out.push_back({parse_rational(part.substr(0, colon)), parse_rational(part.substr(colon + 1))});
  }
  return out;
}

Reconfiguration parse_new_epoch(std::string_view text, EpochId id) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw std::invalid_argument("expected {processes=...;quorums=...;initiator=...}");
  }
  std::map<std::string, std::string_view> kv;
  for (auto part : split(text.substr(1, text.size() - 2), ';')) {
    auto eq = part.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("expected key=value in '" + std::string(part) + "'");
    std::string key(part.substr(0, eq));
    if (key != "processes" && key != "quorums" && key != "initiator") {
      throw std::invalid_argument("unknown new_epoch key '" + key + "'");
    }
    if (!kv.emplace(key, part.substr(eq + 1)).second) throw std::invalid_argument("repeated key '" + key + "'");
  }
  for (const char* key : {"processes", "quorums", "initiator"}) {
    if (!kv.count(key)) throw std::invalid_argument(std::string("new_epoch is missing ") + key);
  }
  ProcessSet processes = parse_process_list(kv["processes"]);
  Reconfiguration r;
  r.next = EpochConfig{id, parse_quorums(kv["quorums"], processes)};
  r.initiator = parse_process(kv["initiator"]);
  return r;
}

std::string process_list(const ProcessSet& s) {
  std::string out;
  for (ProcessId p : s) {
    if (!out.empty()) out += ',';
    out += std::to_string(p);
  }
  return out;
}

std::string set_list(const std::vector<ProcessSet>& sets) {
  std::string out;
  for (const auto& s : sets) {
    if (!out.empty()) out += '|';
    out += to_string(s);
  }
  return out;
}

std::string quorum_text(const QuorumSystem& qs) {
  return qs.kind() == QuorumSystem::Kind::Majority ? "majority" : set_list(qs.quorums());
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Scenario s;
  std::set<std::string> seen;
  bool have_version = false;
  std::optional<std::string_view> quorum_spec;
  std::size_t quorum_line = 0;
  ProcessSet processes;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = tokens(line);
    if (toks.empty()) continue;
    std::string directive(toks.front());
    std::vector<std::string_view> rest(toks.begin() + 1, toks.end());

    static const std::set<std::string> singletons = {"version", "seed",  "horizon", "variant", "rho",
                                                     "skew",    "processes", "quorums", "gst", "latency",
                                                     "loss",    "clocks", "protocol", "mutation"};
    if (singletons.count(directive) && !seen.insert(directive).second) {
      throw ScenarioError(line_no, directive, "directive given twice");
    }
    if (!have_version && directive != "version") {
      throw ScenarioError(line_no, directive, "the first directive must be 'version'");
    }

    auto single = [&](const std::string& name) -> std::string_view {
      if (rest.size() != 1) throw ScenarioError(line_no, name, "expected exactly one value");
      return rest.front();
    };
    auto scalar = [&](const std::string& name, auto&& f) {
      auto value = single(name);
      try {
        return f(value);
      } catch (const std::exception& e) {
        throw ScenarioError(line_no, name, e.what());
      }
    };

    if (directive == "version") {
      if (scalar("version", parse_u64) != 1) throw ScenarioError(line_no, "version", "unsupported version");
      have_version = true;
    } else if (directive == "seed") {
      s.seed = scalar("seed", parse_u64);
    } else if (directive == "horizon") {
      s.horizon = scalar("horizon", parse_rational);
    } else if (directive == "variant") {
      s.variant = scalar("variant", parse_variant);
    } else if (directive == "rho") {
      s.rho = scalar("rho", parse_rational);
    } else if (directive == "skew") {
      s.skew = scalar("skew", parse_rational);
    } else if (directive == "processes") {
      processes = scalar("processes", parse_process_list);
    } else if (directive == "quorums") {
      quorum_spec = single("quorums");
      quorum_line = line_no;
    } else if (directive == "gst") {
      s.gst = scalar("gst", parse_rational);
    } else if (directive == "loss") {
      s.loss = scalar("loss", parse_rational);
    } else if (directive == "mutation") {
      s.mutation = scalar("mutation", parse_mutation);
    } else if (directive == "latency") {
      Fields f(line_no, rest, {"min", "max", "bound"});
      s.latency = LatencyModel{f.rational("min"), f.rational("max"), f.rational("bound")};
    } else if (directive == "clock") {
      Fields f(line_no, rest, {"process", "initial", "segments"});
      s.clocks.push_back({f.convert("process", parse_process), f.rational("initial"),
                          f.convert("segments", parse_segments)});
    } else if (directive == "clocks") {
      if (rest.empty() || rest.front() != "auto") throw ScenarioError(line_no, "clocks", "expected 'clocks auto'");
      Fields f(line_no, {rest.begin() + 1, rest.end()}, {"segment", "initial_max", "mode"});
      s.auto_clocks.segment = f.rational("segment");
      s.auto_clocks.initial_max = f.rational("initial_max");
      s.auto_clocks.mode = f.convert("mode", [](std::string_view v) {
        if (v == "random") return ClockMode::Random;
        if (v == "extreme") return ClockMode::Extreme;
        throw std::invalid_argument("expected random or extreme, got '" + std::string(v) + "'");
      });
    } else if (directive == "partition") {
      Fields f(line_no, rest, {"from", "to", "blocks"});
      s.partitions.push_back({f.rational("from"), f.rational("to"), f.convert("blocks", parse_set_list)});
    } else if (directive == "crash") {
      Fields f(line_no, rest, {"process", "at"});
      s.crashes.push_back({f.convert("process", parse_process), f.rational("at")});
    } else if (directive == "protocol") {
      Fields f(line_no, rest, {"d", "i", "retry", "timeout", "edict", "jitter", "renew", "verify", "delta"});
      ProtocolParams p;
      p.d = f.rational_or("d", p.d);
      p.i = f.rational_or("i", p.i);
      p.retry = f.rational_or("retry", p.retry);
      p.timeout = f.rational_or("timeout", p.timeout);
      p.edict = f.rational_or("edict", p.edict);
      p.jitter = f.rational_or("jitter", p.jitter);
      if (f.has("renew")) p.renew = f.on_off("renew");
      if (f.has("verify")) p.verify = f.on_off("verify");
      if (f.has("delta")) {
        p.delta = f.convert("delta", [](std::string_view v) {
          if (v == "policy") return DeltaMode::Policy;
          if (v == "random") return DeltaMode::Random;
          throw std::invalid_argument("expected policy or random, got '" + std::string(v) + "'");
        });
      }
      s.protocol = p;
    } else if (directive == "reconfigure") {
      Fields f(line_no, rest, {"at", "new_epoch"});
      auto id = static_cast<EpochId>(s.reconfigurations.size() + 1);
      Reconfiguration r = f.convert("new_epoch", [id](std::string_view v) { return parse_new_epoch(v, id); });
      r.at = f.rational("at");
      s.reconfigurations.push_back(std::move(r));
    } else if (directive == "release") {
      Fields f(line_no, rest, {"at", "process", "quiet"});
      s.releases.push_back({f.rational("at"), f.convert("process", parse_process), f.rational_or("quiet", 0)});
    } else if (directive == "acquire") {
      Fields f(line_no, rest, {"at", "process"});
      s.acquires.push_back({f.rational("at"), f.convert("process", parse_process)});
    } else {
      throw ScenarioError(line_no, directive, "unknown directive");
    }
  }
  if (!have_version) throw ScenarioError(line_no, "version", "missing version directive");
  if (processes.empty()) throw ScenarioError(line_no, "processes", "missing processes directive");
  try {
    s.quorums = quorum_spec ? parse_quorums(*quorum_spec, processes) : QuorumSystem::majority(processes);
  } catch (const std::exception& e) {
    throw ScenarioError(quorum_line, "quorums", e.what());
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(0, "", "cannot open scenario file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string emit_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "version 1\n";
  out << "seed " << s.seed << '\n';
  out << "horizon " << to_string(s.horizon) << '\n';
  out << "variant " << to_string(s.variant) << '\n';
  out << "rho " << to_string(s.rho) << '\n';
  out << "skew " << to_string(s.skew) << '\n';
  out << "processes " << process_list(s.quorums.processes()) << '\n';
  out << "quorums " << quorum_text(s.quorums) << '\n';
  out << "gst " << to_string(s.gst) << '\n';
  out << "latency min=" << to_string(s.latency.min) << " max=" << to_string(s.latency.max)
      << " bound=" << to_string(s.latency.bound) << '\n';
  out << "loss " << to_string(s.loss) << '\n';
  for (const auto& c : s.clocks) {
    out << "clock process=" << c.process << " initial=" << to_string(c.initial) << " segments=";
    for (std::size_t k = 0; k < c.segments.size(); ++k) {
      if (k) out << ';';
      out << to_string(c.segments[k].real_start) << ':' << to_string(c.segments[k].rate);
    }
    out << '\n';
  }
  out << "clocks auto segment=" << to_string(s.auto_clocks.segment)
      << " initial_max=" << to_string(s.auto_clocks.initial_max) << " mode=" << to_string(s.auto_clocks.mode)
      << '\n';
  for (const auto& p : s.partitions) {
    out << "partition from=" << to_string(p.from) << " to=" << to_string(p.to) << " blocks=" << set_list(p.blocks)
        << '\n';
  }
  for (const auto& c : s.crashes) out << "crash process=" << c.process << " at=" << to_string(c.at) << '\n';
  const auto& p = s.protocol;
  out << "protocol d=" << to_string(p.d) << " i=" << to_string(p.i) << " retry=" << to_string(p.retry)
      << " timeout=" << to_string(p.timeout) << " edict=" << to_string(p.edict) << " jitter=" << to_string(p.jitter)
      << " renew=" << (p.renew ? "on" : "off") << " verify=" << (p.verify ? "on" : "off")
      << " delta=" << to_string(p.delta) << '\n';
  out << "mutation " << to_string(s.mutation) << '\n';
  for (const auto& r : s.reconfigurations) {
    out << "reconfigure at=" << to_string(r.at) << " new_epoch={processes=" << process_list(r.next.processes())
        << ";quorums=" << quorum_text(r.next.quorums) << ";initiator=" << r.initiator << "}\n";
  }
  for (const auto& r : s.releases) {
    out << "release at=" << to_string(r.at) << " process=" << r.process << " quiet=" << to_string(r.quiet) << '\n';
  }
  for (const auto& a : s.acquires) out << "acquire at=" << to_string(a.at) << " process=" << a.process << '\n';
  return out.str();
}

namespace {

std::string quorum_problem(const QuorumSystem& qs) {
  if (auto pair = qs.disjoint_pair()) {
    return "quorums " + to_string(pair->first) + " and " + to_string(pair->second) + " do not intersect";
  }
  return qs.validation_error();
}

}  // namespace

std::string validation_error(const Scenario& s) {
  if (s.horizon <= 0) return "horizon: must be positive";
  if (s.gst < 0 || s.gst > s.horizon) return "gst: must lie in [0, horizon]";
  if (s.rho < 0 || s.rho >= 1) return "rho: must lie in [0, 1)";
  if (s.skew < 0) return "skew: must be non-negative";
  if (auto q = quorum_problem(s.quorums); !q.empty()) return "quorums: " + q;
  if (s.latency.min <= 0 || s.latency.max < s.latency.min) return "latency: need 0 < min <= max";
  if (s.latency.bound <= 0) return "latency: bound must be positive";
  if (s.loss < 0 || s.loss >= 1) return "loss: must lie in [0, 1)";
  const auto& p = s.protocol;
  if (p.d <= 0) return "protocol: d must be positive";
  if (p.i < 0) return "protocol: i must be non-negative";
  if (p.retry <= 0) return "protocol: retry must be positive";
  if (p.timeout <= 0) return "protocol: timeout must be positive";
  if (p.edict < 0 || p.jitter < 0) return "protocol: edict and jitter must be non-negative";
  if (s.auto_clocks.segment <= 0) return "clocks: segment must be positive";
  if (s.auto_clocks.initial_max < 0) return "clocks: initial_max must be non-negative";

  ProcessSet all = s.quorums.processes();
  RealTime last_reconfig = 0;
  for (const auto& r : s.reconfigurations) {
    std::string where = "reconfigure at=" + to_string(r.at) + ": ";
    if (r.at < last_reconfig || r.at >= s.horizon) return where + "times must be increasing and before the horizon";
    last_reconfig = r.at;
    if (auto q = quorum_problem(r.next.quorums); !q.empty()) return where + q;
    for (ProcessId id : r.next.processes()) {
      if (!all.insert(id).second) return where + "process " + std::to_string(id) + " already belongs to an epoch";
    }
    if (!r.next.processes().count(r.initiator)) return where + "initiator is not a member of the new epoch";
  }
  auto known = [&](ProcessId id) { return all.count(id) > 0; };

  std::set<ProcessId> clocked;
  for (const auto& c : s.clocks) {
    if (!known(c.process)) return "clock: unknown process " + std::to_string(c.process);
    if (!clocked.insert(c.process).second) return "clock: process " + std::to_string(c.process) + " given twice";
    try {
      ClockSchedule(c.process, c.initial, c.segments, s.rho);
    } catch (const std::exception& e) {
      return "clock process=" + std::to_string(c.process) + ": " + e.what();
    }
  }
  for (const auto& part : s.partitions) {
    if (part.from < 0 || part.to <= part.from) return "partition: need 0 <= from < to";
    if (part.to > s.gst) return "partition: must end by gst";
    ProcessSet used;
    for (const auto& block : part.blocks) {
      for (ProcessId id : block) {
        if (!known(id)) return "partition: unknown process " + std::to_string(id);
        if (!used.insert(id).second) return "partition: process " + std::to_string(id) + " in two blocks";
      }
    }
  }
  std::set<ProcessId> crashed;
  for (const auto& c : s.crashes) {
    if (!known(c.process)) return "crash: unknown process " + std::to_string(c.process);
    if (!crashed.insert(c.process).second) return "crash: process " + std::to_string(c.process) + " crashes twice";
    if (c.at < 0 || c.at > s.gst) return "crash: crashes must happen by gst";
  }
  for (const auto& r : s.releases) {
    if (!known(r.process)) return "release: unknown process " + std::to_string(r.process);
    if (r.at < 0 || r.at > s.horizon || r.quiet < 0) return "release: bad time or quiet period";
  }
  for (const auto& a : s.acquires) {
    if (!known(a.process)) return "acquire: unknown process " + std::to_string(a.process);
    if (a.at < 0 || a.at > s.horizon) return "acquire: bad time";
  }
  try {
    auto schedules = build_schedules(s);
    if (s.variant == Variant::BoundedSkew) {
      std::vector<ClockSchedule> list;
      for (auto& [_, sched] : schedules) list.push_back(sched);
      Rational gap = max_pairwise_skew(list, s.horizon);
      if (gap > s.skew) return "skew: clocks drift " + to_string(gap) + " apart, above the bound";
    }
  } catch (const std::exception& e) {
    return std::string("clocks: ") + e.what();
  }
  return {};
}


std::map<ProcessId, ClockSchedule> build_schedules(const Scenario& s) {
  std::map<ProcessId, ClockSchedule> out;
  for (const auto& c : s.clocks) out.emplace(c.process, ClockSchedule(c.process, c.initial, c.segments, s.rho));

  std::vector<ProcessId> generated;
  for (ProcessId id : s.all_processes()) {
    if (!out.count(id)) generated.push_back(id);
  }
  if (generated.empty()) return out;

  std::mt19937_64 rng(s.seed * 0x9E3779B97F4A7C15ull + 0x5851F42D4C957F2Dull);
  constexpr unsigned long kGrid = 1000000;
  Rational initial_cap = s.auto_clocks.initial_max;
  if (s.variant == Variant::BoundedSkew && s.skew < initial_cap) initial_cap = s.skew;

  std::vector<Rational> initials;
  for (std::size_t k = 0; k < generated.size(); ++k) initials.push_back(random_on_grid(rng, 0, initial_cap, 1000));

  if (s.variant == Variant::BoundedSkew) {
    SkewOptions opts{initials, s.horizon, s.auto_clocks.segment, rng()};
    auto schedules = make_skew_bounded(generated, s.skew, s.rho, opts);
    for (auto& sched : schedules) out.emplace(sched.process(), sched);
    return out;
  }
  for (std::size_t k = 0; k < generated.size(); ++k) {
    std::vector<ClockSegment> segments;
    for (RealTime t = 0; t < s.horizon; t += s.auto_clocks.segment) {
      Rational rate;
      if (s.auto_clocks.mode == ClockMode::Extreme) {
        rate = (rng() & 1) ? Rational(1 + s.rho) : Rational(1 - s.rho);
      } else {
        rate = random_on_grid(rng, 1 - s.rho, 1 + s.rho, kGrid);
      }
      segments.push_back({t, rate});
    }
    out.emplace(generated[k], ClockSchedule(generated[k], initials[k], std::move(segments), s.rho));
  }
  return out;
}

}  // namespace nerio
