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

#include "nerio/fuzz.hpp"

#include <algorithm>
#include <random>

#include "nerio/simnet.hpp"

namespace nerio {

Scenario default_fuzz_base() {
  Scenario s;
  s.seed = 1;
  s.horizon = 120;
  s.quorums = QuorumSystem::majority({1, 2, 3, 4, 5});
  s.latency = LatencyModel{ratio(1, 20), 3, 1};
  s.protocol.d = 1;
  s.protocol.i = 2;
  s.protocol.retry = 2;
  s.protocol.timeout = 3;
  s.protocol.edict = 3;
  s.auto_clocks = AutoClocks{10, 5, ClockMode::Random};
  return s;
}

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

Scenario fuzz_scenario(const Scenario& base, std::uint64_t master_seed, std::size_t index,
                       std::optional<Mutation> mutation) {
  std::mt19937_64 rng(mix(master_seed ^ mix(index)));
  auto pick = [&](std::uint64_t n) { return rng() % n; };
  auto between = [&](const Rational& lo, const Rational& hi, unsigned long grid = 1000) {
    return random_on_grid(rng, lo, hi, grid);
  };

  Scenario s = base;
  s.seed = rng();
  const auto n = static_cast<ProcessId>(5 + pick(3));
  ProcessSet procs;
  for (ProcessId p = 1; p <= n; ++p) procs.insert(p);
  s.quorums = QuorumSystem::majority(procs);
  s.clocks.clear();
  s.variant = pick(2) ? Variant::BoundedSkew : Variant::BoundedDrift;
  s.rho = between(ratio(1, 10000), ratio(1, 100), 1000000);
  const Duration bound = base.latency.bound;
  s.skew = s.variant == Variant::BoundedSkew ? between(0, 2 * bound) : Rational(0);
  s.gst = between(0, s.horizon / 2);
  s.latency.bound = bound;
  s.latency.min = between(ratio(1, 100), bound / 4);
  s.latency.max = between(bound / 2, 4 * bound);
  s.loss = between(0, ratio(1, 2));
  s.auto_clocks.mode = pick(2) ? ClockMode::Extreme : ClockMode::Random;
  s.auto_clocks.initial_max = between(0, 5);
  s.protocol.delta = pick(2) ? DeltaMode::Random : DeltaMode::Policy;
  s.protocol.jitter = between(0, base.protocol.d);
  s.protocol.renew = pick(4) != 0;
  s.mutation = mutation ? *mutation : base.mutation;

  std::vector<ProcessId> order(procs.begin(), procs.end());
  s.crashes.clear();
  const std::size_t crashes = pick(4);
  for (std::size_t k = 0; k < crashes; ++k) {
    std::swap(order[k], order[k + pick(order.size() - k)]);
    s.crashes.push_back({order[k], between(0, s.gst)});
  }

  s.partitions.clear();
  const std::size_t partitions = s.gst > 0 ? pick(3) : 0;
  for (std::size_t k = 0; k < partitions; ++k) {
    RealTime a = between(0, s.gst);
    RealTime b = between(0, s.gst);
    if (a > b) std::swap(a, b);
    if (a == b) continue;
    ProcessSet left, right;
    for (ProcessId p : procs) (pick(2) ? left : right).insert(p);
    std::vector<ProcessSet> blocks;
    if (!left.empty()) blocks.push_back(left);
    if (!right.empty()) blocks.push_back(right);
    s.partitions.push_back({a, b, blocks});
  }

  s.releases.clear();
  if (pick(3) == 0) s.releases.push_back({between(0, s.horizon), 1 + static_cast<ProcessId>(pick(n)), between(0, 10)});
  s.acquires.clear();
  for (std::size_t k = pick(3); k > 0; --k) {
    s.acquires.push_back({between(0, s.horizon), 1 + static_cast<ProcessId>(pick(n))});
  }

  s.reconfigurations.clear();
  if (pick(5) == 0) {
    ProcessSet next;
    for (ProcessId p = n + 1; p <= n + 3; ++p) next.insert(p);
    Reconfiguration r;
    r.at = between(0, s.horizon * 3 / 4);
    r.next = EpochConfig{1, QuorumSystem::majority(next)};
    r.initiator = n + 1 + static_cast<ProcessId>(pick(3));
    s.reconfigurations.push_back(r);
  }
  return s;
}

FuzzSummary run_fuzz(const Scenario& base, const FuzzOptions& options, const FuzzObserver& observer) {
  FuzzSummary summary;
  for (std::size_t k = 0; k < options.count; ++k) {
    Scenario s = fuzz_scenario(base, options.master_seed, k, options.mutation);
    RunResult r = run(s);
    ++summary.runs;
    if (r.report.safety_violation()) ++summary.safety_violations;
    if (r.report.liveness_shortfall()) ++summary.liveness_shortfalls;
    for (const auto& c : r.report.checks) {
      if (c.verdict != Verdict::Fail) continue;
      ++summary.failing_runs_by_check[c.name];
      if (!is_liveness_check(c.name) && summary.first_failures.size() < 10) {
        summary.first_failures.push_back({k, c.name, c.detail});
      }
    }
    if (observer) observer(k, s, r.trace, r.report);
  }
  return summary;
}

}  // namespace nerio
