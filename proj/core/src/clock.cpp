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

#include "nerio/clock.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace nerio {

ClockValue ClockValue::infinity() {
  ClockValue v;
  v.infinite_ = true;
  return v;
}

const Rational& ClockValue::tick() const {
  if (infinite_) {
    throw std::domain_error("infinite clock value has no tick");
  }
  return tick_;
}

ClockValue ClockValue::operator+(const Rational& amount) const {
  if (infinite_) {
    throw std::domain_error("arithmetic on infinite clock value");
  }
  return ClockValue(tick_ + amount, 0);
}

bool operator==(const ClockValue& a, const ClockValue& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.seq_ == b.seq_ && a.tick_ == b.tick_;
}

bool operator<(const ClockValue& a, const ClockValue& b) {
  if (a.infinite_) return false;
  if (b.infinite_) return true;
  int c = cmp(a.tick_, b.tick_);
  if (c != 0) return c < 0;
  return a.seq_ < b.seq_;
}

std::string to_string(const ClockValue& value) {
  if (value.is_infinite()) return "inf";
  return "(" + to_string(value.tick()) + "," + std::to_string(value.seq()) + ")";
}

ClockValue parse_clock_value(std::string_view text) {
  if (text == "inf") return ClockValue::infinity();
  if (text.size() < 5 || text.front() != '(' || text.back() != ')') {
    throw std::invalid_argument("bad clock value '" + std::string(text) + "'");
  }
  auto inner = text.substr(1, text.size() - 2);
  auto comma = inner.find(',');
  if (comma == std::string_view::npos) {
    throw std::invalid_argument("bad clock value '" + std::string(text) + "'");
  }
  Rational tick = parse_rational(inner.substr(0, comma));
  auto seq_text = std::string(inner.substr(comma + 1));
  if (seq_text.empty() || seq_text.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("bad clock sequence '" + std::string(text) + "'");
  }
  return ClockValue(std::move(tick), std::stoull(seq_text));
}

Rational tick_difference(const ClockValue& a, const ClockValue& b) { return a.tick() - b.tick(); }

ClockSchedule::ClockSchedule(ProcessId process, Rational initial,
                             std::vector<ClockSegment> segments, Rational rho)
    : process_(process),
      initial_(std::move(initial)),
      segments_(std::move(segments)),
      rho_(std::move(rho)) {
  if (segments_.empty()) {
    throw std::invalid_argument("clock schedule needs at least one segment");
  }
  if (segments_.front().real_start != 0) {
    throw std::invalid_argument("first clock segment must start at real time 0");
  }
  if (rho_ < 0 || rho_ >= 1) {
    throw std::invalid_argument("drift bound must lie in [0, 1)");
  }
  const Rational lo = 1 - rho_;
  const Rational hi = 1 + rho_;
  start_values_.reserve(segments_.size());
  Rational value = initial_;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& seg = segments_[i];
    if (seg.rate <= 0 || seg.rate < lo || seg.rate > hi) {
      throw std::invalid_argument("clock rate " + to_string(seg.rate) + " of process " +
                                  std::to_string(process_) + " outside drift envelope");
    }
    if (i > 0) {
      const auto& prev = segments_[i - 1];
      if (seg.real_start <= prev.real_start) {
        throw std::invalid_argument("clock segments must be strictly ordered");
      }
      value += prev.rate * (seg.real_start - prev.real_start);
    }
    start_values_.push_back(value);
  }
}

std::size_t ClockSchedule::segment_for_time(const RealTime& t) const {
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](const RealTime& x, const ClockSegment& s) { return x < s.real_start; });
  return static_cast<std::size_t>(std::distance(segments_.begin(), it)) - 1;
}

Rational ClockSchedule::value_at(const RealTime& t) const {
  if (t < 0) {
    throw std::domain_error("clock evaluated before real time 0");
  }
  std::size_t i = segment_for_time(t);
  return start_values_[i] + segments_[i].rate * (t - segments_[i].real_start);
}

RealTime ClockSchedule::inverse_at(const Rational& target) const {
  if (target < initial_) {
    throw std::domain_error("clock value " + to_string(target) + " precedes initial value of process " +
                            std::to_string(process_));
  }
  auto it = std::upper_bound(start_values_.begin(), start_values_.end(), target);
  std::size_t i = static_cast<std::size_t>(std::distance(start_values_.begin(), it)) - 1;
  return segments_[i].real_start + (target - start_values_[i]) / segments_[i].rate;
}

Rational value_at(const ClockSchedule& schedule, const RealTime& t) { return schedule.value_at(t); }

RealTime inverse_at(const ClockSchedule& schedule, const Rational& target) {
  return schedule.inverse_at(target);
}

ClockValue sample(const ClockSchedule& schedule, const RealTime& t, const std::optional<ClockValue>& last) {
  Rational tick = schedule.value_at(t);
  if (!last) return ClockValue(std::move(tick), 0);
  int c = cmp(tick, last->tick());
  if (c < 0) {
    throw std::invalid_argument("clock sampled at a real time preceding the previous sample");
  }
  if (c == 0) return ClockValue(std::move(tick), last->seq() + 1);
  return ClockValue(std::move(tick), 0);
}

std::vector<ClockSchedule> make_skew_bounded(const std::vector<ProcessId>& processes,
                                             const Rational& skew, const Rational& rho,
                                             const SkewOptions& options) {
  if (skew < 0) throw std::invalid_argument("skew bound must be non-negative");
  if (options.segment_length <= 0) throw std::invalid_argument("segment length must be positive");
  std::vector<Rational> initials = options.initials;
  if (initials.empty()) initials.assign(processes.size(), Rational(0));
  if (initials.size() != processes.size()) {
    throw std::invalid_argument("one initial clock value per process required");
  }
  const Rational lo = *std::min_element(initials.begin(), initials.end());
  const Rational hi = lo + skew;
  for (std::size_t i = 0; i < initials.size(); ++i) {
    if (initials[i] > hi) {
      throw std::invalid_argument("initial clocks of processes " + std::to_string(processes.front()) +
                                  " and " + std::to_string(processes[i]) + " already differ by more than " +
                                  to_string(skew));
    }
  }

  std::mt19937_64 rng(options.seed);
  const Rational& len = options.segment_length;
  std::vector<ClockSchedule> out;
  out.reserve(processes.size());
  for (std::size_t i = 0; i < processes.size(); ++i) {
    std::vector<ClockSegment> segs;
    Rational deviation = initials[i];  // C(t) - t
    RealTime start = 0;
    while (start < options.horizon) {
      // Rate window that keeps the deviation inside [lo, hi] at the segment end.
      Rational rmin = std::max(Rational(1 - rho), Rational(1 + (lo - deviation) / len));
      Rational rmax = std::min(Rational(1 + rho), Rational(1 + (hi - deviation) / len));
      // Rates live on a 1e-6 grid so clock values keep small denominators.
      // Rate 1 is always admissible because the deviation is inside the band.
      Rational rate = random_on_grid(rng, rmin, rmax, 1000000);
      segs.push_back({start, rate});
      deviation += (rate - 1) * len;
      start += len;
    }
    segs.push_back({start, Rational(1)});
    out.emplace_back(processes[i], initials[i], std::move(segs), rho);
  }
  return out;
}

Rational max_pairwise_skew(const std::vector<ClockSchedule>& schedules, const RealTime& horizon) {
  std::vector<RealTime> points{RealTime(0), horizon};
  for (const auto& s : schedules) {
    for (const auto& seg : s.segments()) {
      if (seg.real_start <= horizon) points.push_back(seg.real_start);
    }
  }
  Rational worst = 0;
  for (const auto& t : points) {
    if (schedules.empty()) break;
    Rational mn = schedules.front().value_at(t);
    Rational mx = mn;
    for (const auto& s : schedules) {
      Rational v = s.value_at(t);
      if (v < mn) mn = v;
      if (v > mx) mx = v;
    }
    if (mx - mn > worst) worst = mx - mn;
  }
  return worst;
}

}  // namespace nerio
