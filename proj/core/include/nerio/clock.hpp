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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nerio/rational.hpp"
#include "nerio/types.hpp"

namespace nerio {

// Composite clock reading: the hardware clock value plus a counter that
// is reset whenever the hardware value advances and bumped on every sample
// that observes the same value. Ordered lexicographically. Values derived
// by arithmetic (deadlines, F, E) carry seq 0.
//
// The infinite value is above every finite value and is the F of a wedged
// process. It does not take part in arithmetic.
class ClockValue {
 public:
  ClockValue() = default;
  explicit ClockValue(Rational tick, std::uint64_t seq = 0)
      : tick_(std::move(tick)), seq_(seq) {}

  static ClockValue infinity();

  const Rational& tick() const;
  std::uint64_t seq() const { return seq_; }
  bool is_infinite() const { return infinite_; }

  // Finite values only; the result has seq 0.
  ClockValue operator+(const Rational& amount) const;

  friend bool operator==(const ClockValue& a, const ClockValue& b);
  friend bool operator<(const ClockValue& a, const ClockValue& b);
  friend bool operator>(const ClockValue& a, const ClockValue& b) { return b < a; }
  friend bool operator<=(const ClockValue& a, const ClockValue& b) { return !(b < a); }
  friend bool operator>=(const ClockValue& a, const ClockValue& b) { return !(a < b); }

 private:
  Rational tick_;
  std::uint64_t seq_ = 0;
  bool infinite_ = false;
};

// "(tick,seq)" or "inf".
std::string to_string(const ClockValue& value);
ClockValue parse_clock_value(std::string_view text);

// Difference of two finite clock values in clock units; seq is ignored.
Rational tick_difference(const ClockValue& a, const ClockValue& b);

struct ClockSegment {
  RealTime real_start;
  Rational rate;

  friend bool operator==(const ClockSegment&, const ClockSegment&) = default;
};

// Piecewise-linear clock of one process. The final segment extends forever,
// so the clock is defined (and keeps growing) for every real time, also
// after the owning process has crashed.
class ClockSchedule {
 public:
  // Throws std::invalid_argument if the segments are empty, do not start at
  // real time 0, are not strictly ordered, or have a rate outside
  // [1 - rho, 1 + rho] or <= 0.
  ClockSchedule(ProcessId process, Rational initial, std::vector<ClockSegment> segments,
                Rational rho);

  ProcessId process() const { return process_; }
  const Rational& initial() const { return initial_; }
  const Rational& rho() const { return rho_; }
  const std::vector<ClockSegment>& segments() const { return segments_; }

  Rational value_at(const RealTime& t) const;

  // Earliest real time at which the clock reads at least `target`.
  // Throws std::domain_error if target < initial().
  RealTime inverse_at(const Rational& target) const;

 private:
  std::size_t segment_for_time(const RealTime& t) const;

  ProcessId process_;
  Rational initial_;
  std::vector<ClockSegment> segments_;
  std::vector<Rational> start_values_;
  Rational rho_;
};

Rational value_at(const ClockSchedule& schedule, const RealTime& t);
RealTime inverse_at(const ClockSchedule& schedule, const Rational& target);

// Samples the composite clock at real time t. `last` is the previous sample
// returned for the same process; t must not precede its real time.
ClockValue sample(const ClockSchedule& schedule, const RealTime& t,
                  const std::optional<ClockValue>& last);

struct SkewOptions {
  // Initial clock value per process, in the same order as `processes`.
  std::vector<Rational> initials;
  RealTime horizon = 100;
  Duration segment_length = 10;
  std::uint64_t seed = 0;
};

// Random piecewise-linear schedules whose pairwise difference never exceeds
// `skew` and whose rates stay within [1 - rho, 1 + rho]. The last segment of
// every schedule runs at rate 1 so the bound also holds past the horizon.
// Throws std::invalid_argument when the initial values already differ by more
// than `skew`.
std::vector<ClockSchedule> make_skew_bounded(const std::vector<ProcessId>& processes,
                                             const Rational& skew, const Rational& rho,
                                             const SkewOptions& options);

// Largest |C_p(t) - C_q(t)| over all pairs and t in [0, horizon].
Rational max_pairwise_skew(const std::vector<ClockSchedule>& schedules, const RealTime& horizon);

}  // namespace nerio
