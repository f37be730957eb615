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


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Scenario families are generated from fixed
// master seeds, so every run of this binary checks the same scenarios.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nerio/clock.hpp"
#include "nerio/fuzz.hpp"
#include "nerio/membership.hpp"
#include "nerio/oracle.hpp"
#include "nerio/process.hpp"
#include "nerio/quorum.hpp"
#include "nerio/scenario.hpp"
#include "nerio/simnet.hpp"
#include "nerio/trace.hpp"

namespace {

using namespace nerio;
using Clock = std::chrono::steady_clock;

// Pinned limits.
constexpr std::size_t kSafetyRuns = 1000;
constexpr double kSafetySeconds = 300.0;
constexpr std::size_t kMutationRuns = 200;
constexpr std::size_t kStabilityRuns = 100;
constexpr std::size_t kElectionRuns = 100;
constexpr std::size_t kReleaseRuns = 50;
constexpr std::size_t kEpochRuns = 50;
constexpr std::size_t kClockPairs = 10000;
constexpr std::size_t kReplayRuns = 100;

int failures = 0;

void verdict(int number, bool pass, const std::string& what) {
  std::printf("criterion %2d: %s  %s\n", number, pass ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool passes(const Report& report, const std::string& check) {
  const CheckResult* c = report.find(check);
  return c && c->verdict == Verdict::Pass;
}

std::string detail(const Report& report, const std::string& check) {
  const CheckResult* c = report.find(check);
  return c ? c->detail : "missing";
}

std::optional<ProcessId> leader_at(const Report& report, const RealTime& t) {
  for (const auto& iv : report.leaders) {
    if (iv.from <= t && t < iv.to) return iv.leader;
  }
  return std::nullopt;
}

std::string first_safety_failure(const Report& report) {
  for (const auto& c : report.checks) {
    if (!is_liveness_check(c.name) && c.verdict == Verdict::Fail) return c.name + ": " + c.detail;
  }
  return "";
}

// Moves gst, dropping partitions and crashes that would outlast it.
void set_gst(Scenario& s, const RealTime& gst) {
  s.gst = gst;
  std::erase_if(s.partitions, [&](const Partition& p) { return p.to > gst; });
  std::erase_if(s.crashes, [&](const Crash& c) { return c.at > gst; });
}

// Fuzz scenario with renewal on, delta from the renewal policy and no
// scheduled releases, acquisitions or reconfigurations. Crashes (all before
// gst) are kept as long as a quorum survives.
Scenario renewing_scenario(std::uint64_t master, std::size_t k) {
  Scenario s = fuzz_scenario(default_fuzz_base(), master, k);
  s.mutation = Mutation::None;
  s.protocol.renew = true;
  s.protocol.delta = DeltaMode::Policy;
  s.protocol.jitter = 0;
  s.releases.clear();
  s.acquires.clear();
  s.reconfigurations.clear();
  const std::size_t n = s.quorums.processes().size();
  if (s.crashes.size() > (n - 1) / 2) s.crashes.resize((n - 1) / 2);
  return s;
}

// The whole run lies after gst: latency bounded from the start, no loss, no
// partitions. The minority that crashes does so at time zero.
Scenario post_gst_scenario(std::uint64_t master, std::size_t k) {
  Scenario s = renewing_scenario(master, k);
  for (auto& c : s.crashes) c.at = 0;
  set_gst(s, 0);
  return s;
}

// ---------------------------------------------------------------------------

struct FuzzTally {
  std::size_t runs = 0;
  std::map<std::string, std::size_t> failing;
  std::map<std::string, std::string> witness;
  std::size_t completions = 0;
  std::size_t edicts = 0;
  double seconds = 0;
};

FuzzTally safety_fuzz() {
  FuzzTally tally;
  auto start = Clock::now();
  FuzzOptions options;
  options.master_seed = 20261015;
  options.count = kSafetyRuns;
  run_fuzz(default_fuzz_base(), options, [&](std::size_t, const Scenario&, const Trace&, const Report& report) {
    ++tally.runs;
    tally.completions += report.completions;
    tally.edicts += report.edicts;
    for (const auto& c : report.checks) {
      if (c.verdict != Verdict::Fail || is_liveness_check(c.name)) continue;
      if (tally.failing[c.name]++ == 0) tally.witness[c.name] = c.detail;
    }
  });
  tally.seconds = seconds_since(start);
  return tally;
}

std::string count_line(const FuzzTally& t, std::initializer_list<const char*> checks) {
  std::ostringstream out;
  bool first = true;
  for (const char* c : checks) {
    out << (first ? "" : ", ") << c << " violations in " << (t.failing.count(c) ? t.failing.at(c) : 0) << " runs";
    first = false;
  }
  for (const char* c : checks) {
    if (t.witness.count(c)) out << "; first " << c << ": " << t.witness.at(c);
  }
  return out.str();
}

bool clean(const FuzzTally& t, std::initializer_list<const char*> checks) {
  for (const char* c : checks) {
    if (t.failing.count(c)) return false;
  }
  return true;
}

void criteria_1_to_4() {
  FuzzTally t = safety_fuzz();
  char time[64];
  std::snprintf(time, sizeof time, "%.1f s (limit %.0f s)", t.seconds, kSafetySeconds);
  verdict(1, t.runs == kSafetyRuns && clean(t, {"uniqueness"}) && t.seconds <= kSafetySeconds,
          "leader uniqueness over " + std::to_string(t.runs) + " fuzz runs: " + count_line(t, {"uniqueness"}) +
              ", " + time);
  verdict(2, t.runs == kSafetyRuns && clean(t, {"core_invariant"}),
          "core invariant at every checkpoint: " + count_line(t, {"core_invariant"}));
  verdict(3, t.runs == kSafetyRuns && clean(t, {"grant_cover"}) && t.completions > 0,
          "lease end within every responder grant, " + std::to_string(t.completions) +
              " completions: " + count_line(t, {"grant_cover"}));
  verdict(4, t.runs == kSafetyRuns && clean(t, {"edict_order", "qt_order", "edict_validity"}) && t.edicts > 0,
          std::to_string(t.edicts) + " edicts: " + count_line(t, {"edict_order", "qt_order", "edict_validity"}));
}

// ---------------------------------------------------------------------------

void criterion_5() {
  bool all = true;
  std::ostringstream out;
  for (Mutation m : {Mutation::ResponderShrink, Mutation::InitiatorStretch, Mutation::OverwriteFinish}) {
    std::optional<std::size_t> found;
    std::string check;
    for (std::size_t k = 0; k < kMutationRuns && !found; ++k) {
      RunResult r = run(fuzz_scenario(default_fuzz_base(), 5005, k, m));
      for (const char* c : {"core_invariant", "uniqueness"}) {
        const CheckResult* res = r.report.find(c);
        if (res && res->verdict == Verdict::Fail) {
          found = k;
          check = c;
          break;
        }
      }
    }
    if (!found) all = false;
    out << to_string(m) << ": "
        << (found ? check + " violation in run " + std::to_string(*found + 1) : std::string("not detected"))
        << "; ";
  }
  std::string s = out.str();
  s.resize(s.size() - 2);
  verdict(5, all, "mutations detected within " + std::to_string(kMutationRuns) + " runs: " + s);
}

// ---------------------------------------------------------------------------

void criterion_6() {
  std::size_t stable = 0;
  std::string witness;
  for (std::size_t k = 0; k < kStabilityRuns; ++k) {
    Scenario s = post_gst_scenario(6006, k);
    RunResult r = run(s);
    bool ok = passes(r.report, "stability") && !r.report.safety_violation();
    if (ok) {
      ++stable;
    } else if (witness.empty()) {
      witness = "; first failure run " + std::to_string(k) + ": " + detail(r.report, "stability") + " " +
                first_safety_failure(r.report);
    }
  }
  verdict(6, stable == kStabilityRuns,
          "first post-gst leader keeps leading to the horizon in " + std::to_string(stable) + "/" +
              std::to_string(kStabilityRuns) + " runs" + witness);
}

// ---------------------------------------------------------------------------

void criterion_7() {
  std::size_t accepted = 0, elected = 0, attempts = 0;
  Rational worst_slack;
  bool have_slack = false;
  std::string witness;
  for (std::size_t k = 0; accepted < kElectionRuns && attempts < 4 * kElectionRuns; ++k, ++attempts) {
    Scenario s = renewing_scenario(7007, k);
    s.crashes.clear();
    std::mt19937_64 rng(k);
    set_gst(s, random_on_grid(rng, 20, 60, 1000));
    // Find a leader before gst and crash it in the middle of its tenure.
    RunResult dry = run(s);
    std::vector<LeaderInterval> before;
    for (const auto& iv : dry.report.leaders) {
      if (iv.leader && iv.to <= s.gst) before.push_back(iv);
    }
    if (before.empty()) continue;
    const LeaderInterval& iv = before[rng() % before.size()];
    RealTime at = ceil_to_grid((iv.from + iv.to) / 2, 1000000);
    if (at >= iv.to) continue;
    s.crashes.push_back({*iv.leader, at});
    RunResult r = run(s);
    if (leader_at(r.report, at) != iv.leader) continue;
    ++accepted;
    const Duration slack = 5 * (s.protocol.retry + s.protocol.d);
    RealTime bound = std::max(s.gst, r.report.latest_conflicting_expiry) + slack;
    bool ok = r.report.first_election_after_gst && *r.report.first_election_after_gst <= bound &&
              !r.report.safety_violation();
    if (ok) {
      ++elected;
      Rational margin = bound - *r.report.first_election_after_gst;
      if (!have_slack || margin < worst_slack) worst_slack = margin;
      have_slack = true;
    } else if (witness.empty()) {
      witness = "; first failure run " + std::to_string(k) + ": crashed " + std::to_string(*iv.leader) + " at " +
                to_string(at) + ", bound " + to_string(bound) + ", " + detail(r.report, "eventual_election") +
                " " + first_safety_failure(r.report);
    }
  }
  char margin[64] = "";
  if (have_slack) std::snprintf(margin, sizeof margin, ", smallest margin %.3f", to_double(worst_slack));
  verdict(7, accepted == kElectionRuns && elected == kElectionRuns,
          "new leader within max(gst, latest conflicting expiry) + 5(retry + d) after a pre-gst leader crash in " +
              std::to_string(elected) + "/" + std::to_string(accepted) + " runs" + margin + witness);
}

// ---------------------------------------------------------------------------

// Real time at which the lease of `leader` would have ended without the
// event at `index`: the last instant at which its unexpired grants, as they
// stood right before that event, still cover a quorum.
std::optional<RealTime> lease_end_without(const OracleContext& ctx, const Trace& trace, std::size_t index,
                                          const RealTime& at, ProcessId leader) {
  std::map<ProcessId, StateEvent> last;
  for (std::size_t i = 0; i < index; ++i) {
    if (const auto* st = std::get_if<StateEvent>(&trace[i])) last[st->at] = *st;
  }
  std::map<ProcessId, RealTime> ends;
  for (const auto& [q, st] : last) {
    if (st.assignee != leader || st.finish.is_infinite()) continue;
    const ClockSchedule& c = ctx.clocks.at(q);
    if (st.finish.tick() <= c.initial()) continue;
    RealTime end = c.inverse_at(st.finish.tick());
    if (end > at) ends.emplace(q, end);
  }
  std::optional<RealTime> best;
  for (const auto& [_, t] : ends) {
    ProcessSet still;
    for (const auto& [q, e] : ends) {
      if (e >= t) still.insert(q);
    }
    if (ctx.epochs.front().quorums.find_quorum(still) && (!best || t > *best)) best = t;
  }
  return best;
}

void criterion_8() {
  std::size_t accepted = 0, fast = 0, attempts = 0;
  std::optional<Rational> least_saved;
  std::string witness;
  for (std::size_t k = 0; accepted < kReleaseRuns && attempts < 4 * kReleaseRuns; ++k, ++attempts) {
    Scenario s = post_gst_scenario(8008, k);
    set_gst(s, 0);
    s.loss = 0;
    s.partitions.clear();
    s.crashes.clear();
    s.horizon = 80;
    s.protocol.i = 10;  // long leases, so waiting them out would be visible
    std::mt19937_64 rng(k);
    // Release shortly after a completed acquisition, while the lease is fresh.
    const RealTime after = random_on_grid(rng, 15, 40, 1000);
    RunResult dry = run(s);
    std::optional<ProcessId> leader;
    RealTime at;
    for (const auto& ev : dry.trace) {
      const auto* c = std::get_if<CompleteEvent>(&ev);
      if (!c || c->t < after) continue;
      at = ceil_to_grid(c->t + ratio(1, 100), 1000);
      leader = leader_at(dry.report, at);
      if (leader != c->at) leader.reset();
      break;
    }
    if (!leader) continue;
    std::vector<ProcessId> others;
    for (ProcessId p : s.quorums.processes()) {
      if (p != *leader) others.push_back(p);
    }
    ProcessId rival = others[rng() % others.size()];
    s.releases.push_back({at, *leader, 30});
    s.acquires.push_back({at + s.latency.bound, rival});
    RunResult r = run(s);
    std::optional<std::size_t> release_index;
    for (std::size_t i = 0; i < r.trace.size() && !release_index; ++i) {
      if (const auto* e = std::get_if<ReleaseEvent>(&r.trace[i]); e && e->at == *leader) release_index = i;
    }
    if (!release_index) continue;
    ++accepted;
    OracleContext ctx = OracleContext::from(s);
    auto expiry = lease_end_without(ctx, r.trace, *release_index, at, *leader);
    std::optional<RealTime> completed;
    for (std::size_t i = *release_index; i < r.trace.size() && !completed; ++i) {
      if (const auto* e = std::get_if<CompleteEvent>(&r.trace[i]); e && e->at == rival) completed = e->t;
    }
    bool ok = expiry && completed && *completed < *expiry && !r.report.safety_violation();
    if (ok) {
      ++fast;
      Rational saved = *expiry - *completed;
      if (!least_saved || saved < *least_saved) least_saved = saved;
    } else if (witness.empty()) {
      witness = "; first failure run " + std::to_string(k) + ": release at " + to_string(at) + ", rival " +
                std::to_string(rival) + " completed " + (completed ? to_string(*completed) : "never") +
                ", lease would have lasted to " + (expiry ? to_string(*expiry) : "-") + " " +
                first_safety_failure(r.report);
    }
  }
  char saved[64] = "";
  if (least_saved) std::snprintf(saved, sizeof saved, ", at least %.3f early", to_double(*least_saved));
  verdict(8, accepted == kReleaseRuns && fast == kReleaseRuns,
          "rival completes before the released lease would have ended in " + std::to_string(fast) + "/" +
              std::to_string(accepted) + " runs" + saved + witness);
}

// ---------------------------------------------------------------------------

// Every combination of wedged processes and initiators at three processes
// with majority quorums, every response order, several deltas. An attempt
// may only complete when the wedged processes do not form a quorum.
struct WedgeExhaustive {
  std::size_t cases = 0;
  std::size_t blocked_cases = 0;
  std::size_t completions_without_wedged_quorum = 0;
  std::string violation;
};

WedgeExhaustive exhaustive_wedge_check() {
  WedgeExhaustive out;
  const ProcessSet all{1, 2, 3};
  const QuorumSystem q = QuorumSystem::majority(all);
  const ProtocolConfig config{Variant::BoundedDrift, ratio(1, 100), 0, Mutation::None};
  const EpochConfig next{1, QuorumSystem::majority({4, 5, 6})};
  for (unsigned mask = 0; mask < 8; ++mask) {
    ProcessSet wedged;
    for (ProcessId p : all) {
      if (mask & (1u << (p - 1))) wedged.insert(p);
    }
    const bool wedged_quorum = q.is_quorum(wedged);
    for (ProcessId initiator : all) {
      for (const Rational& delta : {Rational(1), Rational(5), Rational(1000)}) {
        std::map<ProcessId, ProcessState> states;
        ClockValue now(Rational(10));
        for (ProcessId p : all) {
          states.emplace(p, ProcessState(p, 0, config));
          if (wedged.count(p)) {
            GrantRequest w = send_wedge(4, next, ClockValue(Rational(9)));
            handle_wedge(states.at(p), now, w, 4);
            if (!is_wedged(states.at(p))) out.violation = "process " + std::to_string(p) + " did not wedge";
          }
        }
        std::vector<std::pair<ProcessId, Payload>> replies;
        ProcessState probe = states.at(initiator);
        GrantRequest req = start_acquire(probe, now, delta);
        for (ProcessId p : all) replies.emplace_back(p, handle_grant_request(states.at(p), now, req));
        std::vector<std::size_t> order{0, 1, 2};
        do {
          ++out.cases;
          ProcessState attempt = probe;
          bool completed = false;
          for (std::size_t i : order) {
            const Payload& m = replies[i].second;
            AcquireOutcome o = std::holds_alternative<Ok>(m)
                                   ? handle_ok(attempt, now, std::get<Ok>(m), q)
                                   : handle_grant_error(attempt, now, std::get<GrantError>(m), q);
            if (o == AcquireOutcome::Completed) completed = true;
          }
          if (wedged_quorum) {
            ++out.blocked_cases;
            if (completed && out.violation.empty()) {
              out.violation = "initiator " + std::to_string(initiator) + " completed with wedged " + to_string(wedged);
            }
          } else if (completed) {
            ++out.completions_without_wedged_quorum;
          }
        } while (std::next_permutation(order.begin(), order.end()));
      }
    }
  }
  return out;
}

void criterion_9() {
  std::size_t good = 0;
  std::string witness;
  for (std::size_t k = 0; k < kEpochRuns; ++k) {
    Scenario s = renewing_scenario(9009, k);
    std::mt19937_64 rng(k);
    set_gst(s, random_on_grid(rng, 0, 30, 1000));
    const auto n = static_cast<ProcessId>(s.quorums.processes().size());
    ProcessSet next;
    for (ProcessId p = n + 1; p <= n + 3; ++p) next.insert(p);
    Reconfiguration rc;
    rc.at = random_on_grid(rng, s.gst + 10, s.gst + 40, 1000);
    rc.next = EpochConfig{1, QuorumSystem::majority(next)};
    rc.initiator = n + 1 + static_cast<ProcessId>(rng() % 3);
    s.reconfigurations = {rc};
    RunResult r = run(s);
    bool new_leader = false;
    for (const auto& iv : r.report.leaders) {
      if (iv.leader && next.count(*iv.leader) && iv.from >= rc.at) new_leader = true;
    }
    bool ok = passes(r.report, "epochs") && !r.report.safety_violation() && new_leader;
    if (ok) {
      ++good;
    } else if (witness.empty()) {
      witness = "; first failure run " + std::to_string(k) + ": " + (new_leader ? "" : "no leader in the new epoch ") +
                first_safety_failure(r.report);
    }
  }
  WedgeExhaustive w = exhaustive_wedge_check();
  bool exhaustive_ok = w.violation.empty() && w.blocked_cases > 0 && w.completions_without_wedged_quorum > 0;
  verdict(9, good == kEpochRuns && exhaustive_ok,
          std::to_string(good) + "/" + std::to_string(kEpochRuns) +
              " reconfigurations with one running epoch and a new-epoch leader; wedged quorum blocked " +
              std::to_string(w.blocked_cases) + "/" + std::to_string(w.blocked_cases) + " attempt orders out of " +
              std::to_string(w.cases) + (w.violation.empty() ? "" : "; " + w.violation) + witness);
}

// ---------------------------------------------------------------------------

// Clock value computed segment by segment, independently of ClockSchedule.
Rational reference_value(const Rational& initial, const std::vector<ClockSegment>& segs, const RealTime& t) {
  Rational v = initial;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (segs[i].real_start >= t) break;
    RealTime end = i + 1 < segs.size() ? std::min<RealTime>(segs[i + 1].real_start, t) : t;
    v += segs[i].rate * (end - segs[i].real_start);
  }
  return v;
}

void criterion_10() {
  std::mt19937_64 rng(1010);
  std::size_t bad = 0;
  std::string witness;
  for (std::size_t k = 0; k < kClockPairs; ++k) {
    Rational rho = random_on_grid(rng, ratio(1, 10000), ratio(1, 10), 1000000);
    Rational initial = random_on_grid(rng, 0, 100, 1000);
    std::vector<ClockSegment> segs;
    RealTime at = 0;
    for (std::size_t n = 1 + rng() % 6; n > 0; --n) {
      segs.push_back({at, random_on_grid(rng, 1 - rho, 1 + rho, 1000000)});
      at += random_on_grid(rng, ratio(1, 1000), 50, 1000);
    }
    ClockSchedule c(1, initial, segs, rho);
    RealTime t1 = random_on_grid(rng, 0, 300, 1000000);
    RealTime t2 = random_on_grid(rng, 0, 300, 1000000);
    if (t2 < t1) std::swap(t1, t2);
    Rational v1 = c.value_at(t1), v2 = c.value_at(t2);
    Rational target = random_on_grid(rng, initial, initial + 300, 1000000);
    bool ok = v1 == reference_value(initial, segs, t1) && v2 == reference_value(initial, segs, t2) &&
              c.inverse_at(v1) == t1 && c.inverse_at(v2) == t2 && c.value_at(c.inverse_at(target)) == target &&
              (1 - rho) * (t2 - t1) <= v2 - v1 && v2 - v1 <= (1 + rho) * (t2 - t1);
    if (!ok) {
      ++bad;
      if (witness.empty()) witness = "; first failure at pair " + std::to_string(k);
    }
  }
  verdict(10, bad == 0,
          "round trip and drift envelope exact on " + std::to_string(kClockPairs - bad) + "/" +
              std::to_string(kClockPairs) + " schedule/query pairs" + witness);
}

// ---------------------------------------------------------------------------

void criterion_11() {
  std::size_t same = 0;
  std::string witness;
  for (std::size_t k = 0; k < kReplayRuns; ++k) {
    Scenario s = fuzz_scenario(default_fuzz_base(), 1111, k);
    std::string a = emit_trace(run(s).trace);
    std::string b = emit_trace(run(parse_scenario(emit_scenario(s))).trace);
    if (a == b) {
      ++same;
    } else if (witness.empty()) {
      witness = "; first mismatch at run " + std::to_string(k);
    }
  }
  verdict(11, same == kReplayRuns,
          "byte-identical replays " + std::to_string(same) + "/" + std::to_string(kReplayRuns) +
              " (scenario re-read from its emitted text)" + witness);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> only(argv + 1, argv + argc);
  // --dump FAMILY K prints one generated scenario.
  if (only.size() == 3 && only[0] == "--dump") {
    std::uint64_t family = std::stoull(only[1]);
    std::size_t k = std::stoul(only[2]);
    std::fputs(emit_scenario(post_gst_scenario(family, k)).c_str(), stdout);
    return 0;
  }
  auto want = [&](const std::string& n) { return only.empty() || std::count(only.begin(), only.end(), n) > 0; };
  const std::vector<std::pair<std::string, std::function<void()>>> steps = {
      {"1-4", criteria_1_to_4}, {"5", criterion_5},   {"6", criterion_6},   {"7", criterion_7},
      {"8", criterion_8},       {"9", criterion_9},   {"10", criterion_10}, {"11", criterion_11},
  };
  for (const auto& [name, step] : steps) {
    if (want(name)) step();
  }
  std::printf("%s\n", failures == 0 ? "all criteria pass" : (std::to_string(failures) + " criteria failed").c_str());
  return failures == 0 ? 0 : 1;
}
