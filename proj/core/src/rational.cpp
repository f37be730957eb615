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

#include "nerio/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace nerio {

Rational ratio(long numerator, long denominator) {
  if (denominator == 0) {
    throw std::invalid_argument("ratio: zero denominator");
  }
  Rational r(numerator, denominator);
  r.canonicalize();
  return r;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    }
    mpz_class d(std::string(den), 10);
    if (d == 0) {
      throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    }
    result = Rational(mpz_class(std::string(num), 10), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) {
      throw std::invalid_argument("not a decimal: '" + std::string(text) + "'");
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class w = whole.empty() ? mpz_class(0) : mpz_class(std::string(whole), 10);
    result = Rational(w * scale + mpz_class(std::string(frac), 10), scale);
  } else {
    if (!all_digits(body)) {
      throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    result = Rational(mpz_class(std::string(body), 10));
  }
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& value) { return value.get_str(); }

Rational ceil_to_grid(const Rational& value, unsigned long resolution) {
  mpz_class scaled_num = value.get_num() * resolution;
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), value.get_den_mpz_t());
  Rational r(q, mpz_class(resolution));
  r.canonicalize();
  return r;
}

double to_double(const Rational& value) { return value.get_d(); }

Rational random_on_grid(std::mt19937_64& rng, const Rational& lo, const Rational& hi, unsigned long resolution) {
  Rational a = lo * resolution;
  Rational b = hi * resolution;
  mpz_class kmin, kmax;
  mpz_cdiv_q(kmin.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
  mpz_fdiv_q(kmax.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
  if (kmax < kmin) return lo;
  mpz_class span = kmax - kmin + 1;
  if (!span.fits_ulong_p()) throw std::domain_error("random_on_grid: interval too wide");
  mpz_class pick = kmin + mpz_class(static_cast<unsigned long>(rng() % span.get_ui()));
  Rational r(pick, mpz_class(resolution));
  r.canonicalize();
  return r;
}

}  // namespace nerio
