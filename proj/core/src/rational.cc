// Copyright 2026 The matchmarket Authors.
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

#include "matchmarket/rational.h"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "matchmarket/errors.h"

namespace matchmarket {
namespace {

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Optional sign followed by digits.
mpz_class ParseInteger(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!AllDigits(s)) {
    throw ParseError("malformed rational literal \"" + std::string(whole) +
                     "\"");
  }
  mpz_class z(std::string(s), 10);
  return negative ? mpz_class(-z) : z;
}

Rational ParseDecimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    const mpz_class exp_value = ParseInteger(s.substr(e + 1), text);
    if (!exp_value.fits_slong_p() || abs(exp_value) > 100000) {
      throw ParseError("exponent out of range in \"" + std::string(text) +
                       "\"");
    }
    exponent = exp_value.get_si();
    s = s.substr(0, e);
  }
  std::string digits;
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const std::string_view int_part = s.substr(0, dot);
    const std::string_view frac_part = s.substr(dot + 1);
    if ((int_part.empty() && frac_part.empty()) ||
        (!int_part.empty() && !AllDigits(int_part)) ||
        (!frac_part.empty() && !AllDigits(frac_part))) {
      throw ParseError("malformed rational literal \"" + std::string(text) +
                       "\"");
    }
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!AllDigits(s)) {
      throw ParseError("malformed rational literal \"" + std::string(text) +
                       "\"");
    }
    digits = std::string(s);
  }
  if (digits.empty()) digits = "0";
  mpz_class num(digits, 10);
  if (negative) num = -num;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(
                                           exponent < 0 ? -exponent
                                                        : exponent));
  mpq_class q;
  if (exponent >= 0) {
    q = mpq_class(num * scale, 1);
  } else {
    q = mpq_class(num, scale);
  }
  return Rational(std::move(q));
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("zero denominator");
  value_ = mpq_class(numerator, 1);
  value_ /= denominator;
  value_.canonicalize();
}

Rational Rational::FromString(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational literal");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const mpz_class num = ParseInteger(text.substr(0, slash), text);
    const mpz_class den = ParseInteger(text.substr(slash + 1), text);
    if (den == 0) {
      throw ParseError("zero denominator in \"" + std::string(text) + "\"");
    }
    return Rational(mpq_class(num, den));
  }
  return ParseDecimal(text);
}

Rational Rational::FromDouble(double value) {
  if (!std::isfinite(value)) {
    throw std::domain_error("cannot convert non-finite double to Rational");
  }
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), value);
  return Rational(std::move(q));
}

Rational Rational::RoundToGrid(double value, std::int64_t denominator) {
  if (denominator <= 0) throw std::domain_error("grid denominator must be > 0");
  const double scaled = std::round(value * static_cast<double>(denominator));
  mpz_class num;
  mpz_set_d(num.get_mpz_t(), scaled);
  return Rational(mpq_class(num, mpz_class(static_cast<long>(denominator))));
}

Rational& Rational::operator/=(const Rational& other) {
  if (other.is_zero()) throw std::domain_error("division by zero");
  mpq_div(value_.get_mpq_t(), value_.get_mpq_t(), other.value_.get_mpq_t());
  return *this;
}

Rational Abs(Rational r) {
  if (r.sign() < 0) return -r;
  return r;
}

Rational Min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational Max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace matchmarket
