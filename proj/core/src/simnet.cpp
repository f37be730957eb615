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

#include "nerio/simnet.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <stdexcept>
#include <string_view>
#include <utility>

#include "nerio/membership.hpp"
#include "nerio/weak_election.hpp"

namespace nerio {

namespace {

// Every event happens at a multiple of 1/kTimeGrid. Latencies and acquisition
// periods are kept on coarse grids as well so that exact clock arithmetic
// does not accumulate ever larger denominators.
constexpr unsigned long kTimeGrid = 1000000;
constexpr unsigned long kLatencyGrid = 1000;
constexpr unsigned long kDeltaGrid = 1000000;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

enum class TimerKind { Ping, Campaign, Renew, Deadline, WedgeExpiry, Edict };

const char* timer_name(TimerKind kind) {
  switch (kind) {
    case TimerKind::Ping: return "ping";
    case TimerKind::Campaign: return "campaign";
    case TimerKind::Renew: return "renew";
    case TimerKind::Deadline: return "deadline";
    case TimerKind::WedgeExpiry: return "wedge_expiry";
    case TimerKind::Edict: return "edict";
  }
  return "?";
}

struct Delivery {
  Message msg;
};
struct Timer {
  TimerKind kind;
  std::uint64_t generation = 0;
};
struct CrashAt {};
struct ReleaseAt {
  Duration quiet;
};
struct AcquireAt {};
struct ReconfigureAt {
  std::size_t epoch = 0;
};
using Action = std::variant<Delivery, Timer, CrashAt, ReleaseAt, AcquireAt, ReconfigureAt>;

struct Item {
  RealTime t;
  ProcessId process = 0;
  std::uint64_t seq = 0;
  Action action;
};

struct Later {
  bool operator()(const Item& a, const Item& b) const {
    int c = cmp(a.t, b.t);
    if (c != 0) return c > 0;
    if (a.process != b.process) return a.process > b.process;
    return a.seq > b.seq;
  }
};

struct Node {
  Node(ProcessId id, const EpochConfig* own, const EpochConfig* prev, const ProtocolConfig& cfg,
       const ClockSchedule* schedule, const Duration& timeout)
      : id(id),
        epoch(own),
        previous(prev),
        state(id, own->id, cfg),
        ring(make_ring_view(id, own->processes(), timeout)),
        clock(schedule) {
    state.active = prev == nullptr;
  }

  ProcessId id;
  const EpochConfig* epoch;
  const EpochConfig* previous;  // null in epoch 0
  ProcessState state;
  RingView ring;
  const ClockSchedule* clock;
  std::optional<ClockValue> last_sample;

  bool started = false;
  bool crashed = false;
  std::optional<ClockValue> last_attempt;
  std::optional<ClockValue> quiet_until;
  std::optional<WedgeCampaign> campaign;
  ProcessSet wedged_peers;
  std::uint64_t nonce = 0;
  std::uint64_t renew_generation = 0;
  std::uint64_t deadline_generation = 0;
  std::uint64_t wedge_generation = 0;

  bool shown = false;
  std::optional<ProcessId> shown_assignee;
  ClockValue shown_finish;
  ClockValue shown_expiration;
};

class Simulation {
 public:
  explicit Simulation(const Scenario& scenario)
      : s_(scenario),
        epochs_(scenario.epochs()),
        clocks_(build_schedules(scenario)),
        rng_(scenario.seed * 0xD1B54A32D192ED03ull + 0x2545F4914F6CDD1Dull) {
    const ProtocolConfig cfg = scenario.protocol_config();
    for (std::size_t e = 0; e < epochs_.size(); ++e) {
      const EpochConfig* prev = e == 0 ? nullptr : &epochs_[e - 1];
      for (ProcessId p : epochs_[e].processes()) {
        nodes_.try_emplace(p, p, &epochs_[e], prev, cfg, &clocks_.at(p), scenario.protocol.timeout);
      }
    }
  }

  Trace run() {
    now_ = 0;
    for (auto& [_, n] : nodes_) record_state(n);
    // Scheduled actions go first so that they precede the node's own events
    // at the same instant; a process crashing at t does nothing at t.
    for (const auto& c : s_.crashes) push(c.at, c.process, CrashAt{});
    for (const auto& r : s_.releases) push(r.at, r.process, ReleaseAt{r.quiet});
    for (const auto& a : s_.acquires) push(a.at, a.process, AcquireAt{});
    for (std::size_t k = 0; k < s_.reconfigurations.size(); ++k) {
      push(s_.reconfigurations[k].at, s_.reconfigurations[k].initiator, ReconfigureAt{k + 1});
    }
    for (ProcessId p : epochs_[0].processes()) start_node(nodes_.at(p));

    while (!queue_.empty()) {
      Item item = queue_.top();
      queue_.pop();
      if (item.t > s_.horizon) break;
      now_ = item.t;
      Node& n = nodes_.at(item.process);
      std::visit(overloaded{
                     [&](const Delivery& d) { deliver(n, d.msg); },
                     [&](const Timer& tm) { on_timer(n, tm); },
                     [&](const CrashAt&) { crash(n); },
                     [&](const ReleaseAt& r) { release_now(n, r.quiet); },
                     [&](const AcquireAt&) { acquire_now(n); },
                     [&](const ReconfigureAt& r) { reconfigure(r.epoch); },
                 },
                 item.action);
      if (n.started && !n.crashed) try_buffered_wedge(n);
      record_state(n);
    }
    return std::move(trace_);
  }

 private:
  void push(const RealTime& t, ProcessId p, Action action) {
    queue_.push(Item{t, p, seq_++, std::move(action)});
  }

  ClockValue sample_clock(Node& n) {
    n.last_sample = sample(*n.clock, now_, n.last_sample);
    return *n.last_sample;
  }

  // Arms a timer for the first grid instant at which n's clock reads at
  // least `target`.
  void schedule_local(Node& n, TimerKind kind, const Rational& target, std::uint64_t generation = 0) {
    RealTime at = target <= n.clock->initial() ? now_ : ceil_to_grid(n.clock->inverse_at(target), kTimeGrid);
    if (at < now_) at = now_;
    if (at > s_.horizon) return;
    push(at, n.id, Timer{kind, generation});
  }

  void start_node(Node& n) {
    n.started = true;
    push(now_, n.id, Timer{TimerKind::Ping, 0});
    push(now_, n.id, Timer{TimerKind::Campaign, 0});
    if (s_.protocol.edict > 0) {
      schedule_local(n, TimerKind::Edict, n.clock->value_at(now_) + s_.protocol.edict);
    }
  }

  void record_state(Node& n) {
    const auto& st = n.state;
    if (n.shown && n.shown_assignee == st.assignee && n.shown_finish == st.finish &&
        n.shown_expiration == st.expiration) {
      return;
    }
    n.shown = true;
    n.shown_assignee = st.assignee;
    n.shown_finish = st.finish;
    n.shown_expiration = st.expiration;
    trace_.push_back(StateEvent{now_, n.id, n.epoch->id, st.assignee, st.finish, st.expiration});
  }

  bool partitioned(ProcessId a, ProcessId b) const {
    for (const auto& part : s_.partitions) {
      if (now_ < part.from || now_ >= part.to) continue;
      auto block_of = [&](ProcessId p) -> long {
        for (std::size_t k = 0; k < part.blocks.size(); ++k) {
          if (part.blocks[k].count(p)) return static_cast<long>(k);
        }
        return -1 - static_cast<long>(p);
      };
      if (block_of(a) != block_of(b)) return true;
    }
    return false;
  }

  void send(Node& from, ProcessId to, Payload payload) {
    Message m{from.id, to, from.epoch->id, std::move(payload)};
    trace_.push_back(SendEvent{now_, m.src, m.dst, m.epoch, m.payload});
    // Two draws per send, always, so later draws do not depend on which
    // branch is taken.
    const std::uint64_t loss_draw = rng_();
    const bool stable = now_ >= s_.gst;
    const Duration leg = s_.latency.bound / 2;
    Duration latency = stable ? random_on_grid(rng_, s_.latency.min < leg ? s_.latency.min : leg, leg, kLatencyGrid)
                              : random_on_grid(rng_, s_.latency.min, s_.latency.max, kLatencyGrid);
    if (partitioned(m.src, m.dst)) {
      trace_.push_back(DropEvent{now_, m.src, m.dst, m.epoch, "partition", m.payload});
      return;
    }
    if (!stable && s_.loss > 0 && Rational(static_cast<unsigned long>(loss_draw % 1000000), 1000000) < s_.loss) {
      trace_.push_back(DropEvent{now_, m.src, m.dst, m.epoch, "loss", m.payload});
      return;
    }
    RealTime at = now_ + latency;
    RealTime cap = (stable ? now_ : s_.gst) + leg;
    if (at > cap) at = cap;
    if (is_fifo_class(m.payload)) {
      auto [it, fresh] = fifo_last_.try_emplace({m.src, m.dst}, at);
      if (!fresh) {
        if (at < it->second) at = it->second;
        it->second = at;
      }
    }
    if (at > s_.horizon) return;
    push(at, m.dst, Delivery{std::move(m)});
  }

  // Self-addressed copies are handled synchronously, after the network
  // copies, so that a self-inflicted failure's Revoke trails the requests.
  void broadcast_grant(Node& n, const GrantRequest& request) {
    for (ProcessId q : n.epoch->processes()) {
      if (q != n.id) send(n, q, request);
    }
    trace_.push_back(SendEvent{now_, n.id, n.id, n.epoch->id, request});
    trace_.push_back(RecvEvent{now_, n.id, n.id, n.epoch->id, request});
    Payload response = handle_grant_request(n.state, sample_clock(n), request);
    trace_.push_back(SendEvent{now_, n.id, n.id, n.epoch->id, response});
    trace_.push_back(RecvEvent{now_, n.id, n.id, n.epoch->id, response});
    handle_response(n, response);
  }

  void broadcast_fifo(Node& n, const Payload& payload) {
    for (ProcessId q : n.epoch->processes()) {
      if (q != n.id) send(n, q, payload);
    }
    ClockValue now = sample_clock(n);
    if (auto* r = std::get_if<Release>(&payload)) handle_release(n.state, now, *r);
    if (auto* r = std::get_if<Revoke>(&payload)) handle_revoke(n.state, now, *r);
  }

  Duration fresh_delta(Node& n, const ClockValue& now) {
    const auto& p = s_.protocol;
    Duration delta;
    if (p.delta == DeltaMode::Random) {
      delta = random_on_grid(rng_, p.d / 4, 3 * (p.d + p.i), kLatencyGrid);
    } else {
      Duration left = (1 + s_.rho) * (n.state.expiration.tick() - now.tick());
      delta = p.d + (left > p.i ? left : p.i);
      if (p.jitter > 0) delta += random_on_grid(rng_, 0, p.jitter, kLatencyGrid);
    }
    return ceil_to_grid(delta, kDeltaGrid);
  }

  void begin_attempt(Node& n, const Duration& delta) {
    ClockValue now = sample_clock(n);
    GrantRequest request = start_acquire(n.state, now, delta);
    n.last_attempt = now;
    ++n.deadline_generation;
    schedule_local(n, TimerKind::Deadline, n.state.pending->deadline.tick(), n.deadline_generation);
    broadcast_grant(n, request);
  }

  void maybe_renew(Node& n, const ClockValue& now) {
    if (!s_.protocol.renew || n.state.pending) return;
    auto delta = renewal_policy(n.state, now, s_.protocol.d, s_.protocol.i);
    if (!delta) return;
    Duration chosen = s_.protocol.delta == DeltaMode::Random ? fresh_delta(n, now) : ceil_to_grid(*delta, kDeltaGrid);
    begin_attempt(n, chosen);
  }

  void after_outcome(Node& n, AcquireOutcome outcome, const ClockValue& start, const char* reason) {
    if (outcome == AcquireOutcome::Completed) {
      ++n.deadline_generation;
      record_state(n);  // the oracle checks the completion against current grants
      trace_.push_back(CompleteEvent{now_, n.id, n.epoch->id, start, n.state.expiration, *n.state.last_qt});
      if (s_.protocol.renew) {
        ++n.renew_generation;
        schedule_local(n, TimerKind::Renew, renewal_threshold(n.state, s_.protocol.d), n.renew_generation);
      }
    } else if (outcome == AcquireOutcome::Failed) {
      ++n.deadline_generation;
      trace_.push_back(FailEvent{now_, n.id, start, reason});
      // Revoke only when refused: someone else is competing. An attempt that
      // merely ran out of time leaves its grants to the next retry.
      ClockValue now = sample_clock(n);
      if (std::string_view(reason) == "refused" && !is_leader_local(n.state, now)) {
        broadcast_fifo(n, revoke(n.state, now));
      }
    }
  }

  void handle_response(Node& n, const Payload& response) {
    std::optional<ClockValue> start;
    if (n.state.pending) start = n.state.pending->start;
    if (auto* ok = std::get_if<Ok>(&response)) {
      AcquireOutcome o = handle_ok(n.state, sample_clock(n), *ok, n.epoch->quorums);
      if (start) after_outcome(n, o, *start, "late");
    } else if (auto* err = std::get_if<GrantError>(&response)) {
      AcquireOutcome o = handle_grant_error(n.state, sample_clock(n), *err, n.epoch->quorums);
      if (start) after_outcome(n, o, *start, "refused");
    }
  }

  void unblock_if(Node& n, bool was_active) {
    if (!was_active && n.state.active) trace_.push_back(UnblockEvent{now_, n.id, n.epoch->id});
  }

  void deliver(Node& n, const Message& m) {
    const char* reason = nullptr;
    if (!n.started) {
      reason = "inactive";
    } else if (n.crashed) {
      reason = "crashed";
    } else if (m.epoch != n.epoch->id && !is_cross_epoch_class(m.payload)) {
      reason = "epoch";
    }
    if (reason) {
      trace_.push_back(DropEvent{now_, m.src, m.dst, m.epoch, reason, m.payload});
      return;
    }
    trace_.push_back(RecvEvent{now_, n.id, m.src, m.epoch, m.payload});
    ClockValue now = sample_clock(n);
    std::visit(overloaded{
                   [&](const GrantRequest& req) {
                     if (req.is_wedge()) {
                       if (m.epoch != n.epoch->id + 1) return;
                       if (auto ok = handle_wedge(n.state, now, req, m.src)) send(n, m.src, *ok);
                       return;
                     }
                     if (!n.state.active) {
                       bool was = n.state.active;
                       learn_terminated(n.state, *n.epoch, *n.previous, PeerGrantRequest{m.src});
                       unblock_if(n, was);
                       if (!n.state.active) return;
                     }
                     send(n, m.src, handle_grant_request(n.state, now, req));
                   },
                   [&](const Ok& ok) {
                     if (m.epoch != n.epoch->id) {
                       if (n.campaign && record_wedge_confirmation(*n.campaign, ok)) {
                         bool was = n.state.active;
                         learn_terminated(n.state, *n.epoch, *n.previous, WedgedQuorum{n.campaign->confirmed});
                         unblock_if(n, was);
                         if (n.state.active) begin_attempt(n, fresh_delta(n, now));
                       }
                       return;
                     }
                     handle_response(n, ok);
                   },
                   [&](const GrantError& err) { handle_response(n, err); },
                   [&](const Release& r) { handle_release(n.state, now, r); },
                   [&](const Revoke& r) { handle_revoke(n.state, now, r); },
                   [&](const VerifyLeadership& v) {
                     if (n.state.active) send(n, m.src, handle_verify(n.state, now, v));
                   },
                   [&](const Remainder& r) {
                     if (interpret_remainder(n.state, now, r)) {
                       trace_.push_back(VerifiedEvent{now_, n.id, m.src, r.start});
                     }
                   },
                   [&](const Forward&) {},
                   [&](const Ping& p) { send(n, m.src, Pong{n.id, p.nonce}); },
                   [&](const Pong&) { on_pong(n.ring, m.src); },
                   [&](const WedgeQuery&) {
                     if (m.epoch == n.epoch->id + 1) send(n, m.src, WedgeStatus{n.id, is_wedged(n.state)});
                   },
                   [&](const WedgeStatus& ws) {
                     if (!ws.wedged || n.state.active || !n.previous) return;
                     n.wedged_peers.insert(ws.from);
                     bool was = n.state.active;
                     learn_terminated(n.state, *n.epoch, *n.previous, WedgedQuorum{n.wedged_peers});
                     unblock_if(n, was);
                   },
               },
               m.payload);
  }

  bool quiet(const Node& n, const ClockValue& now) const { return n.quiet_until && now < *n.quiet_until; }

  void on_timer(Node& n, const Timer& tm) {
    if (!n.started || n.crashed) return;
    switch (tm.kind) {
      case TimerKind::Renew:
        if (tm.generation != n.renew_generation) return;
        break;
      case TimerKind::Deadline:
        if (tm.generation != n.deadline_generation) return;
        break;
      case TimerKind::WedgeExpiry:
        if (tm.generation != n.wedge_generation) return;
        break;
      default:
        break;
    }
    trace_.push_back(TimerEvent{now_, n.id, timer_name(tm.kind)});
    ClockValue now = sample_clock(n);
    switch (tm.kind) {
      case TimerKind::Ping: ping_tick(n, now); break;
      case TimerKind::Campaign: campaign_tick(n, now); break;
      case TimerKind::Renew:
        if (n.state.active && !quiet(n, now) && is_leader_local(n.state, now)) maybe_renew(n, now);
        break;
      case TimerKind::Deadline:
        if (n.state.pending) {
          ClockValue start = n.state.pending->start;
          after_outcome(n, check_deadline(n.state, now), start, "deadline");
        }
        break;
      case TimerKind::WedgeExpiry: break;  // handled after every event
      case TimerKind::Edict:
        if (n.state.active) {
          if (auto e = create_edict(n.state, now, "edict")) {
            trace_.push_back(EdictEvent{now_, n.id, e->ts.epoch, e->ts.ec, e->ts.qt});
          }
        }
        schedule_local(n, TimerKind::Edict, now.tick() + s_.protocol.edict);
        break;
    }
  }

  void ping_tick(Node& n, const ClockValue& now) {
    for (ProcessId peer : expired_pings(n.ring, now)) on_ping_timeout(n.ring, peer);
    auto monitored = monitored_peers(n.ring);
    for (ProcessId peer : ping_targets(n.ring)) {
      send(n, peer, Ping{n.id, n.nonce++});
      if (std::find(monitored.begin(), monitored.end(), peer) != monitored.end()) {
        arm_ping(n.ring, peer, now + s_.protocol.timeout);
      }
    }
    schedule_local(n, TimerKind::Ping, now.tick() + s_.protocol.timeout / 2);
  }

  void campaign_tick(Node& n, const ClockValue& now) {
    if (!n.state.active) {
      for (ProcessId q : n.previous->processes()) {
        if (n.campaign && !n.campaign->done) {
          send(n, q, GrantRequest{std::nullopt, n.campaign->start, std::nullopt});
        } else {
          send(n, q, WedgeQuery{n.id});
        }
      }
    } else if (!is_wedged(n.state) && !quiet(n, now)) {
      const auto& st = n.state;
      if (is_leader_local(st, now)) {
        maybe_renew(n, now);
      } else if (!st.pending && weak_leader_tick(n.ring, st, now, s_.protocol.retry, n.last_attempt)) {
        begin_attempt(n, fresh_delta(n, now));
      } else if (s_.protocol.verify && st.assignee && *st.assignee != n.id && now < st.finish) {
        ProcessId target = *st.assignee;
        send(n, target, verify_leadership_request(n.state, now));
      }
    }
    schedule_local(n, TimerKind::Campaign, now.tick() + s_.protocol.retry);
  }

  void try_buffered_wedge(Node& n) {
    if (!n.state.wedge_buffer) return;
    if (auto applied = apply_buffered_wedge(n.state, sample_clock(n))) {
      send(n, applied->first, applied->second);
      return;
    }
    ++n.wedge_generation;
    schedule_local(n, TimerKind::WedgeExpiry, n.state.finish.tick(), n.wedge_generation);
  }

  void crash(Node& n) {
    if (n.crashed) return;
    n.crashed = true;
    trace_.push_back(CrashEvent{now_, n.id});
  }

  void release_now(Node& n, const Duration& quiet_period) {
    if (!n.started || n.crashed || !n.state.active) return;
    ClockValue now = sample_clock(n);
    Release r = release(n.state, now);
    ++n.deadline_generation;
    trace_.push_back(ReleaseEvent{now_, n.id});
    broadcast_fifo(n, r);
    n.quiet_until = now + quiet_period;
  }

  void acquire_now(Node& n) {
    if (!n.started || n.crashed || !n.state.active) return;
    begin_attempt(n, fresh_delta(n, sample_clock(n)));
  }

  void reconfigure(std::size_t index) {
    const EpochConfig& next = epochs_[index];
    const Reconfiguration& r = s_.reconfigurations[index - 1];
    trace_.push_back(ReconfigureEvent{now_, next.id, r.initiator});
    for (ProcessId p : next.processes()) start_node(nodes_.at(p));
    Node& init = nodes_.at(r.initiator);
    ClockValue now = sample_clock(init);
    GrantRequest wedge = send_wedge(init.id, next, now);
    init.campaign = WedgeCampaign{epochs_[index - 1], now, {}, false};
    for (ProcessId q : epochs_[index - 1].processes()) send(init, q, wedge);
  }

  const Scenario& s_;
  std::vector<EpochConfig> epochs_;
  std::map<ProcessId, ClockSchedule> clocks_;
  std::map<ProcessId, Node> nodes_;
  std::priority_queue<Item, std::vector<Item>, Later> queue_;
  std::uint64_t seq_ = 0;
  std::mt19937_64 rng_;
  std::map<std::pair<ProcessId, ProcessId>, RealTime> fifo_last_;
  RealTime now_;
  Trace trace_;
};

}  // namespace

Trace simulate(const Scenario& scenario) {
  if (auto err = validation_error(scenario); !err.empty()) throw std::invalid_argument(err);
  return Simulation(scenario).run();
}

RunResult run(const Scenario& scenario, const OracleOptions& options) {
  RunResult result;
  result.trace = simulate(scenario);
  result.report = analyze(OracleContext::from(scenario), result.trace, options);
  for (auto& v : verdict_events(result.report)) result.trace.push_back(std::move(v));
  return result;
}

}  // namespace nerio
