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

#include "nerio/oracle.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <tuple>
#include <sstream>
#include <stdexcept>

namespace nerio {

OracleContext OracleContext::from(const Scenario& scenario) { return from(scenario, build_schedules(scenario)); }

OracleContext OracleContext::from(const Scenario& scenario, std::map<ProcessId, ClockSchedule> clocks) {
  OracleContext ctx;
  ctx.epochs = scenario.epochs();
  ctx.clocks = std::move(clocks);
  ctx.gst = scenario.gst;
  ctx.horizon = scenario.horizon;
  ctx.latency_bound = scenario.latency.bound;
  return ctx;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

bool is_liveness_check(const std::string& name) { return name == "stability" || name == "eventual_election"; }

const CheckResult* Report::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool Report::safety_violation() const {
  return std::any_of(checks.begin(), checks.end(), [](const CheckResult& c) {
    return !is_liveness_check(c.name) && c.verdict == Verdict::Fail;
  });
}

bool Report::liveness_shortfall() const {
  return std::any_of(checks.begin(), checks.end(), [](const CheckResult& c) {
    return is_liveness_check(c.name) && c.verdict != Verdict::Pass;
  });
}

namespace {

ProcessSnapshot initial_snapshot(ProcessId p) { return ProcessSnapshot{p, ClockValue(Rational(0)), ClockValue(Rational(0))}; }

// Clock reading strictly below `bound` exactly while t < result.
RealTime until(const ClockSchedule& clock, const ClockValue& bound) {
  if (bound.is_infinite()) throw std::logic_error("until() of an infinite clock value");
  if (bound.tick() <= clock.initial()) return 0;
  return clock.inverse_at(bound.tick());
}

}  // namespace

GlobalSnapshot snapshot_at(const OracleContext& ctx, const Trace& trace, const RealTime& t) {
  GlobalSnapshot snap;
  snap.t = t;
  snap.clocks = &ctx.clocks;
  for (const auto& e : ctx.epochs) {
    for (ProcessId p : e.processes()) snap.processes.emplace(p, initial_snapshot(p));
  }
  for (const auto& ev : trace) {
    const auto* st = std::get_if<StateEvent>(&ev);
    if (!st || st->t > t) continue;
    snap.processes[st->at] = ProcessSnapshot{st->assignee, st->finish, st->expiration};
  }
  return snap;
}

bool gamma(const GlobalSnapshot& snapshot, ProcessId p, ProcessId q) {
  auto it = snapshot.processes.find(q);
  if (it == snapshot.processes.end() || it->second.assignee != p) return false;
  if (it->second.finish.is_infinite()) return true;
  return snapshot.clocks->at(q).value_at(snapshot.t) < it->second.finish.tick();
}

bool true_is_leader(const GlobalSnapshot& snapshot, ProcessId p, const QuorumSystem& quorums) {
  ProcessSet granting;
  for (ProcessId q : quorums.processes()) {
    if (gamma(snapshot, p, q)) granting.insert(q);
  }
  return quorums.find_quorum(granting).has_value();
}

namespace {

using Mask = std::uint64_t;

struct Record {
  RealTime from;
  std::optional<ProcessId> assignee;
  ClockValue finish;
  ClockValue expiration;
  std::optional<RealTime> finish_until;  // empty: never expires
  RealTime expiration_until;
};

struct EpochInfo {
  Mask members = 0;
  std::size_t size = 0;
  bool majority = true;
  std::vector<Mask> quorums;

  bool is_quorum(Mask s) const {
    s &= members;
    if (majority) return 2 * static_cast<std::size_t>(__builtin_popcountll(s)) > size;
    for (Mask q : quorums) {
      if ((s & q) == q) return true;
    }
    return false;
  }
};

struct Completion {
  RealTime t;
  ProcessId at;
  EpochId epoch;
  QuorumTimestamp qt;
};

struct EdictSeen {
  RealTime t;
  ProcessId creator;
  EdictTimestamp ts;
};

class Failure {
 public:
  explicit Failure(std::string name) : name_(std::move(name)) {}
  void note(const std::string& witness) {
    if (count_++ == 0) first_ = witness;
  }
  void observe() { ++observed_; }
  CheckResult result(const std::string& pass_detail) const {
    if (count_ == 0) return {name_, Verdict::Pass, pass_detail};
    return {name_, Verdict::Fail, std::to_string(count_) + " violation(s); first: " + first_};
  }
  std::size_t observed() const { return observed_; }

 private:
  std::string name_;
  std::size_t count_ = 0;
  std::size_t observed_ = 0;
  std::string first_;
};

std::string mask_string(Mask m, const std::vector<ProcessId>& ids) {
  ProcessSet s;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (m >> k & 1) s.insert(ids[k]);
  }
  return to_string(s);
}

class Analyzer {
 public:
  Analyzer(const OracleContext& ctx, const OracleOptions& options) : ctx_(ctx), options_(options) {
    for (const auto& e : ctx.epochs) {
      for (ProcessId p : e.processes()) {
        if (index_.count(p)) throw std::invalid_argument("process " + std::to_string(p) + " in two epochs");
        index_[p] = ids_.size();
        ids_.push_back(p);
        epoch_of_.push_back(e.id);
      }
    }
    if (ids_.size() > 64) throw std::invalid_argument("the oracle supports at most 64 processes");
    for (const auto& e : ctx.epochs) {
      EpochInfo info;
      for (ProcessId p : e.processes()) info.members |= bit(p);
      info.size = e.processes().size();
      info.majority = e.quorums.kind() == QuorumSystem::Kind::Majority;
      for (const auto& q : e.quorums.quorums()) {
        Mask m = 0;
        for (ProcessId p : q) m |= bit(p);
        info.quorums.push_back(m);
      }
      epochs_.push_back(info);
    }
    for (ProcessId p : ids_) {
      auto snap = initial_snapshot(p);
      current_.push_back(make_record(p, 0, snap.assignee, snap.finish, snap.expiration));
    }
    terminated_.assign(epochs_.size(), false);
  }

  Report run(const Trace& trace) {
    for (std::size_t k = 0; k < trace.size(); ++k) {
      const TraceEvent& ev = trace[k];
      const RealTime* t = event_time(ev);
      if (!t) continue;
      drain_crossings(*t, false);
      std::visit([&](const auto& e) { on_event(e); }, ev);
    }
    drain_crossings(ctx_.horizon, true);
    close_timeline(ctx_.horizon);
    return finish();
  }

 private:
  Mask bit(ProcessId p) const { return Mask(1) << index_.at(p); }

  Record make_record(ProcessId p, const RealTime& t, std::optional<ProcessId> a, const ClockValue& f,
                     const ClockValue& e) {
    const ClockSchedule& clock = ctx_.clocks.at(p);
    Record r{t, a, f, e, std::nullopt, until(clock, e)};
    if (!f.is_infinite()) r.finish_until = until(clock, f);
    return r;
  }

  static const RealTime* event_time(const TraceEvent& ev) {
    return std::visit(
        [](const auto& e) -> const RealTime* {
          if constexpr (std::is_same_v<std::decay_t<decltype(e)>, VerdictEvent>) {
            return nullptr;
          } else {
            return &e.t;
          }
        },
        ev);
  }

  // Evaluates the crossings strictly before t, or up to and including t
  // when `inclusive`. A crossing at the same real time as an event is
  // evaluated after it, with the event's effect applied: a grant renewed at
  // the very instant it would have run out never lapses.
  void drain_crossings(const RealTime& t, bool inclusive) {
    while (!crossings_.empty()) {
      int c = cmp(crossings_.top().when, t);
      if (c > 0 || (c == 0 && !inclusive)) break;
      Crossing x = crossings_.top();
      crossings_.pop();
      if (generation_[index_.at(x.p)] == x.gen && x.when <= ctx_.horizon) evaluate(x.when);
    }
  }

  // Grant sets per candidate, the leaders among them and epoch statuses at t.
  struct Eval {
    std::vector<ProcessId> leaders;
    std::map<ProcessId, Mask> granting;
  };

  Eval leaders_at(const RealTime& t) const {
    Eval out;
    for (std::size_t k = 0; k < ids_.size(); ++k) {
      const Record& r = current_[k];
      if (!r.assignee) continue;
      if (r.finish_until && !(t < *r.finish_until)) continue;
      out.granting[*r.assignee] |= Mask(1) << k;
    }
    for (const auto& [p, m] : out.granting) {
      auto it = index_.find(p);
      if (it == index_.end()) continue;
      if (epochs_[epoch_of_[it->second]].is_quorum(m)) out.leaders.push_back(p);
    }
    return out;
  }

  void evaluate(const RealTime& t) {
    ++checkpoints_;
    Eval ev = leaders_at(t);

    uniqueness_.observe();
    if (ev.leaders.size() > 1) {
      std::ostringstream w;
      w << "t=" << to_string(t) << " leaders";
      for (ProcessId p : ev.leaders) w << ' ' << p << " granted by " << mask_string(ev.granting[p], ids_);
      uniqueness_.note(w.str());
    }

    core_.observe();
    for (std::size_t k = 0; k < ids_.size(); ++k) {
      const Record& r = current_[k];
      if (!(t < r.expiration_until)) continue;
      ProcessId p = ids_[k];
      if (std::find(ev.leaders.begin(), ev.leaders.end(), p) == ev.leaders.end()) {
        std::ostringstream w;
        w << "t=" << to_string(t) << " process " << p << " has E=" << to_string(r.expiration)
          << " (C=" << to_string(ctx_.clocks.at(p).value_at(t)) << ") but only "
          << mask_string(ev.granting[p], ids_) << " grant to it";
        core_.note(w.str());
      }
    }

    // Epoch statuses.
    epochs_check_.observe();
    for (std::size_t e = 0; e < epochs_.size(); ++e) {
      Mask wedged = 0;
      for (std::size_t k = 0; k < ids_.size(); ++k) {
        const Record& r = current_[k];
        if (epoch_of_[k] == e && !r.assignee && r.finish.is_infinite()) wedged |= Mask(1) << k;
      }
      bool now_terminated = epochs_[e].is_quorum(wedged);
      if (terminated_[e] && !now_terminated) {
        epochs_check_.note("t=" + to_string(t) + " epoch " + std::to_string(e) + " left TERMINATED");
      }
      terminated_[e] = now_terminated;
    }
    std::size_t running = 0;
    std::optional<std::size_t> running_epoch;
    for (std::size_t e = 0; e < epochs_.size(); ++e) {
      bool prior = std::all_of(terminated_.begin(), terminated_.begin() + static_cast<long>(e), [](bool b) { return b; });
      if (prior && !terminated_[e]) {
        ++running;
        running_epoch = e;
      }
    }
    if (running > 1) epochs_check_.note("t=" + to_string(t) + " " + std::to_string(running) + " epochs RUNNING");
    for (ProcessId p : ev.leaders) {
      std::size_t e = epoch_of_[index_.at(p)];
      if (!running_epoch || *running_epoch != e) {
        epochs_check_.note("t=" + to_string(t) + " process " + std::to_string(p) + " of epoch " +
                           std::to_string(e) + " is leader outside the RUNNING epoch");
      }
    }

    std::optional<ProcessId> leader;
    if (!ev.leaders.empty()) leader = ev.leaders.front();
    extend_timeline(t, leader);
  }

  void extend_timeline(const RealTime& t, std::optional<ProcessId> leader) {
    if (t > ctx_.horizon) return;
    if (!timeline_.empty() && timeline_.back().leader == leader) return;
    if (!timeline_.empty()) {
      if (timeline_.back().from == t) {
        timeline_.back().leader = leader;
        if (timeline_.size() > 1 && timeline_[timeline_.size() - 2].leader == leader) timeline_.pop_back();
        return;
      }
      timeline_.back().to = t;
    }
    timeline_.push_back(LeaderInterval{t, ctx_.horizon, leader});
  }

  void close_timeline(const RealTime& horizon) {
    if (timeline_.empty()) timeline_.push_back(LeaderInterval{0, horizon, std::nullopt});
    timeline_.back().to = horizon;
  }

  void on_event(const StateEvent& e) {
    auto it = index_.find(e.at);
    if (it == index_.end()) throw std::invalid_argument("state event for unknown process " + std::to_string(e.at));
    std::size_t k = it->second;
    Record r = make_record(e.at, e.t, e.assignee, e.finish, e.expiration);
    if (r.assignee && r.finish_until && e.t <= ctx_.gst + ctx_.latency_bound / 2) {
      early_grants_.emplace_back(*r.assignee, *r.finish_until);
    }
    current_[k] = r;
    ++generation_[k];
    if (r.finish_until && *r.finish_until > e.t) crossings_.push({*r.finish_until, e.at, generation_[k]});
    if (r.expiration_until > e.t) crossings_.push({r.expiration_until, e.at, generation_[k]});
    evaluate(e.t);
  }

  void on_event(const CompleteEvent& e) {
    ++completions_;
    grant_cover_.observe();
    const ClockSchedule& mine = ctx_.clocks.at(e.at);
    RealTime lease_end = until(mine, e.expiration);
    for (const auto& [q, sample] : e.qt.entries) {
      auto it = index_.find(q);
      if (it == index_.end()) {
        grant_cover_.note("unknown responder " + std::to_string(q));
        continue;
      }
      const Record& r = current_[it->second];
      bool ok = r.assignee == e.at && (!r.finish_until || lease_end <= *r.finish_until);
      if (!ok) {
        std::ostringstream w;
        w << "t=" << to_string(e.t) << " process " << e.at << " holds its lease until real "
          << to_string(lease_end) << " but responder " << q << " has A="
          << (r.assignee ? std::to_string(*r.assignee) : "_") << " F=" << to_string(r.finish)
          << " ending at real " << (r.finish_until ? to_string(*r.finish_until) : "inf");
        grant_cover_.note(w.str());
      }
    }
    qt_order_.observe();
    for (const auto& prev : completions_seen_) {
      if (prev.epoch != e.epoch) continue;
      Order o = compare_qt(prev.qt, e.qt);
      if (o != Order::Less) {
        qt_order_.note("completion by " + std::to_string(prev.at) + " at " + to_string(prev.t) +
                       " and by " + std::to_string(e.at) + " at " + to_string(e.t) + " compare " + to_string(o) +
                       ": " + to_string(prev.qt) + " vs " + to_string(e.qt));
      }
    }
    completions_seen_.push_back({e.t, e.at, e.epoch, e.qt});
  }

  void on_event(const EdictEvent& e) {
    ++edicts_;
    edict_validity_.observe();
    Eval ev = leaders_at(e.t);
    if (std::find(ev.leaders.begin(), ev.leaders.end(), e.creator) == ev.leaders.end()) {
      edict_validity_.note("t=" + to_string(e.t) + " process " + std::to_string(e.creator) +
                           " created an edict without being leader");
    }
    edict_order_.observe();
    EdictTimestamp ts{e.epoch, e.qt, e.ec};
    for (const auto& prev : edicts_seen_) {
      Order o = compare_edicts(prev.ts, ts);
      if (o != Order::Less) {
        edict_order_.note("edict of " + std::to_string(prev.creator) + " at " + to_string(prev.t) + " (ec " +
                          std::to_string(prev.ts.ec) + ") and of " + std::to_string(e.creator) + " at " +
                          to_string(e.t) + " (ec " + std::to_string(e.ec) + ") compare " + to_string(o));
      }
    }
    edicts_seen_.push_back({e.t, e.creator, ts});
  }

  void on_event(const SendEvent& e) {
    if (const auto* r = std::get_if<Remainder>(&e.msg)) {
      remainder_sent_[{e.from, e.to, to_string(r->start)}] = e.t;
    } else if (std::holds_alternative<Release>(e.msg) || std::holds_alternative<Revoke>(e.msg)) {
      last_release_[e.from] = e.t;
    }
  }

  void on_event(const ReleaseEvent& e) { last_release_[e.at] = e.t; }

  void on_event(const VerifiedEvent& e) {
    ++verifications_;
    verification_.observe();
    auto it = remainder_sent_.find({e.target, e.at, to_string(e.start)});
    if (it == remainder_sent_.end()) {
      verification_.note("t=" + to_string(e.t) + " process " + std::to_string(e.at) +
                         " verified a leader that sent no matching remainder");
      return;
    }
    auto rel = last_release_.find(e.target);
    if (rel != last_release_.end() && rel->second >= it->second) return;  // leadership given up meanwhile
    Eval ev = leaders_at(e.t);
    if (std::find(ev.leaders.begin(), ev.leaders.end(), e.target) == ev.leaders.end()) {
      verification_.note("t=" + to_string(e.t) + " process " + std::to_string(e.at) + " verified " +
                         std::to_string(e.target) + " which is not leader");
    }
  }

  void on_event(const CrashEvent& e) { crashed_.insert(e.at); }

  template <class E>
  void on_event(const E&) {}

  CheckResult stability_check(const RealTime& from) const {
    const LeaderInterval* first = nullptr;
    for (const auto& iv : timeline_) {
      if (iv.leader && iv.to > from) {
        first = &iv;
        break;
      }
    }
    if (!first) return {"stability", Verdict::Inconclusive, "no leader after " + to_string(from)};
    ProcessId p = *first->leader;
    for (const LeaderInterval* iv = first + 1; iv != timeline_.data() + timeline_.size(); ++iv) {
      if (iv->from >= ctx_.horizon) break;
      if (!iv->leader) {
        return {"stability", Verdict::Fail,
                "leaderless gap at t=" + to_string(iv->from) + " after process " + std::to_string(p) + " led"};
      }
      if (*iv->leader != p) {
        return {"stability", Verdict::Fail,
                "different leader " + std::to_string(*iv->leader) + " at t=" + to_string(iv->from) +
                    " after process " + std::to_string(p)};
      }
    }
    RealTime since = first->from > from ? first->from : from;
    return {"stability", Verdict::Pass, "process " + std::to_string(p) + " led from t=" + to_string(since)};
  }

  bool electable() const {
    // The newest epoch decides.
    const EpochConfig& e = ctx_.epochs.back();
    ProcessSet alive;
    for (ProcessId p : e.processes()) {
      if (!crashed_.count(p)) alive.insert(p);
    }
    return e.quorums.find_quorum(alive).has_value();
  }

  CheckResult election_check(std::optional<RealTime>& elected) const {
    for (const auto& iv : timeline_) {
      if (iv.leader && iv.to > ctx_.gst && iv.from <= ctx_.horizon) {
        elected = iv.from > ctx_.gst ? iv.from : ctx_.gst;
        break;
      }
    }
    if (elected) {
      std::string detail = "leader at t=" + to_string(*elected) + ", " + to_string(*elected - ctx_.gst) + " after gst";
      if (options_.election_deadline && *elected > *options_.election_deadline) {
        return {"eventual_election", Verdict::Fail,
                detail + ", later than the bound " + to_string(*options_.election_deadline)};
      }
      return {"eventual_election", Verdict::Pass, detail};
    }
    if (!electable()) return {"eventual_election", Verdict::Inconclusive, "expected-unelectable: no live quorum"};
    if (options_.election_deadline && *options_.election_deadline <= ctx_.horizon) {
      return {"eventual_election", Verdict::Fail,
              "no leader by the bound " + to_string(*options_.election_deadline)};
    }
    return {"eventual_election", Verdict::Inconclusive, "no leader before the horizon (horizon too short)"};
  }

  Report finish() {
    Report rep;
    rep.checks.push_back(uniqueness_.result(std::to_string(uniqueness_.observed()) + " checkpoints"));
    rep.checks.push_back(core_.result(std::to_string(core_.observed()) + " checkpoints"));
    rep.checks.push_back(grant_cover_.result(std::to_string(grant_cover_.observed()) + " completions"));
    rep.checks.push_back(qt_order_.result(std::to_string(qt_order_.observed()) + " completions"));
    rep.checks.push_back(edict_validity_.result(std::to_string(edict_validity_.observed()) + " edicts"));
    rep.checks.push_back(edict_order_.result(std::to_string(edict_order_.observed()) + " edicts"));
    rep.checks.push_back(verification_.result(std::to_string(verification_.observed()) + " verifications"));
    rep.checks.push_back(epochs_check_.result(std::to_string(epochs_.size()) + " epoch(s)"));
    rep.checks.push_back(stability_check(options_.stability_from ? *options_.stability_from : ctx_.gst));
    std::optional<RealTime> elected;
    rep.checks.push_back(election_check(elected));
    rep.first_election_after_gst = elected;
    rep.leaders = timeline_;
    std::optional<ProcessId> winner;
    if (elected) {
      for (const auto& iv : timeline_) {
        if (iv.leader && iv.to > ctx_.gst) {
          winner = iv.leader;
          break;
        }
      }
    }
    rep.latest_conflicting_expiry = 0;
    for (const auto& [a, end] : early_grants_) {
      if (winner && a == *winner) continue;
      if (end > rep.latest_conflicting_expiry) rep.latest_conflicting_expiry = end;
    }
    rep.checkpoints = checkpoints_;
    rep.completions = completions_;
    rep.edicts = edicts_;
    rep.verifications = verifications_;
    return rep;
  }

  struct Crossing {
    RealTime when;
    ProcessId p;
    std::uint64_t gen;
  };
  struct CrossingLater {
    bool operator()(const Crossing& a, const Crossing& b) const {
      int c = cmp(a.when, b.when);
      if (c != 0) return c > 0;
      return a.p > b.p;
    }
  };

  const OracleContext& ctx_;
  OracleOptions options_;
  std::map<ProcessId, std::size_t> index_;
  std::vector<ProcessId> ids_;
  std::vector<std::size_t> epoch_of_;
  std::vector<EpochInfo> epochs_;
  std::vector<Record> current_;
  std::vector<std::uint64_t> generation_ = std::vector<std::uint64_t>(64, 0);
  std::priority_queue<Crossing, std::vector<Crossing>, CrossingLater> crossings_;
  std::vector<bool> terminated_;
  std::vector<LeaderInterval> timeline_;
  std::vector<Completion> completions_seen_;
  std::vector<EdictSeen> edicts_seen_;
  std::map<std::tuple<ProcessId, ProcessId, std::string>, RealTime> remainder_sent_;
  std::map<ProcessId, RealTime> last_release_;
  std::set<ProcessId> crashed_;
  std::vector<std::pair<ProcessId, RealTime>> early_grants_;

  Failure uniqueness_{"uniqueness"};
  Failure core_{"core_invariant"};
  Failure grant_cover_{"grant_cover"};
  Failure qt_order_{"qt_order"};
  Failure edict_validity_{"edict_validity"};
  Failure edict_order_{"edict_order"};
  Failure verification_{"verification"};
  Failure epochs_check_{"epochs"};

  std::size_t checkpoints_ = 0;
  std::size_t completions_ = 0;
  std::size_t edicts_ = 0;
  std::size_t verifications_ = 0;
};

}  // namespace

Report analyze(const OracleContext& ctx, const Trace& trace, const OracleOptions& options) {
  return Analyzer(ctx, options).run(trace);
}

namespace {

CheckResult pick(const Report& rep, const std::string& name) { return *rep.find(name); }

}  // namespace

CheckResult check_uniqueness(const OracleContext& ctx, const Trace& trace) {
  return pick(analyze(ctx, trace), "uniqueness");
}

CheckResult check_core_invariant(const OracleContext& ctx, const Trace& trace) {
  return pick(analyze(ctx, trace), "core_invariant");
}

CheckResult check_edict_properties(const OracleContext& ctx, const Trace& trace) {
  Report rep = analyze(ctx, trace);
  CheckResult out{"edict_properties", Verdict::Pass, ""};
  for (const char* name : {"edict_validity", "edict_order", "qt_order"}) {
    const CheckResult& c = *rep.find(name);
    if (!out.detail.empty()) out.detail += "; ";
    out.detail += std::string(name) + ": " + c.detail;
    if (c.verdict == Verdict::Fail) out.verdict = Verdict::Fail;
  }
  return out;
}

CheckResult check_stability(const OracleContext& ctx, const Trace& trace, const RealTime& from) {
  if (from < ctx.gst) throw std::invalid_argument("stability is only defined from gst on");
  OracleOptions opts;
  opts.stability_from = from;
  return pick(analyze(ctx, trace, opts), "stability");
}

CheckResult check_eventual_election(const OracleContext& ctx, const Trace& trace,
                                    const std::optional<RealTime>& deadline) {
  OracleOptions opts;
  opts.election_deadline = deadline;
  return pick(analyze(ctx, trace, opts), "eventual_election");
}

std::vector<VerdictEvent> verdict_events(const Report& report) {
  std::vector<VerdictEvent> out;
  for (const auto& c : report.checks) out.push_back(VerdictEvent{c.name, to_string(c.verdict), c.detail});
  return out;
}

}  // namespace nerio
