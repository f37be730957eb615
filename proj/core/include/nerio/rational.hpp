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

#include <gmpxx.h>

#include <random>
#include <string>
#include <string_view>

namespace nerio {

// Exact arithmetic for everything that can influence a safety verdict:
// real times, clock values, rates and durations.
using Rational = mpq_class;
using RealTime = Rational;
using Duration = Rational;

// Canonical num/den. Denominator must be non-zero.
Rational ratio(long numerator, long denominator = 1);

// Accepts "7", "-3/4" and plain decimals such as "0.0125".
// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

// Integers print without a denominator; everything else as num/den.
std::string to_string(const Rational& value);

// Smallest multiple of 1/resolution that is >= value.
Rational ceil_to_grid(const Rational& value, unsigned long resolution);

// Uniform pick among the multiples of 1/resolution in [lo, hi]; lo itself
// when the interval holds none. Uses plain modulo reduction so the sequence
// only depends on the generator, not on the standard library.
Rational random_on_grid(std::mt19937_64& rng, const Rational& lo, const Rational& hi, unsigned long resolution);

// Lossy, for reporting only.
double to_double(const Rational& value);

}  // namespace nerio
