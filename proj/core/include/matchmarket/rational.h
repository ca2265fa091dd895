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

#ifndef MATCHMARKET_RATIONAL_H_
#define MATCHMARKET_RATIONAL_H_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace matchmarket {

// Exact arbitrary-precision fraction. Always stored in lowest terms with a
// positive denominator; zero is 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(runtime/explicit)
  Rational(int value) : value_(value) {}   // NOLINT(runtime/explicit)
  Rational(long numerator, long denominator);
  explicit Rational(const mpq_class& value) : value_(value) {
    value_.canonicalize();
  }
  explicit Rational(mpq_class&& value) : value_(std::move(value)) {
    value_.canonicalize();
  }

  // Accepts "p", "p/q", and decimal literals such as "0.5", "-1.25e-3".
  // Throws ParseError on malformed text or a zero denominator.
  static Rational FromString(std::string_view text);

  // Exact binary value of `value` (every finite double is a dyadic rational).
  static Rational FromDouble(double value);

  // Closest fraction with denominator exactly `denominator`, ties rounded
  // away from zero.
  static Rational RoundToGrid(double value, std::int64_t denominator);

  double ToDouble() const { return value_.get_d(); }
  // "p/q", or "p" when the denominator is 1.
  std::string ToString() const { return value_.get_str(); }

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  int sign() const { return sgn(value_); }
  bool is_zero() const { return sgn(value_) == 0; }

  const mpq_class& mpq() const { return value_; }
  mpq_class& mutable_mpq() { return value_; }

  Rational& operator+=(const Rational& other) {
    mpq_add(value_.get_mpq_t(), value_.get_mpq_t(), other.value_.get_mpq_t());
    return *this;
  }
  Rational& operator-=(const Rational& other) {
    mpq_sub(value_.get_mpq_t(), value_.get_mpq_t(), other.value_.get_mpq_t());
    return *this;
  }
  Rational& operator*=(const Rational& other) {
    mpq_mul(value_.get_mpq_t(), value_.get_mpq_t(), other.value_.get_mpq_t());
    return *this;
  }
  // Division by zero throws std::domain_error.
  Rational& operator/=(const Rational& other);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(Rational a) {
    mpq_neg(a.value_.get_mpq_t(), a.value_.get_mpq_t());
    return a;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.value_.get_mpq_t(), b.value_.get_mpq_t()) != 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = mpq_cmp(a.value_.get_mpq_t(), b.value_.get_mpq_t());
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.ToString();
  }

 private:
  mpq_class value_;
};

Rational Abs(Rational r);
Rational Min(const Rational& a, const Rational& b);
Rational Max(const Rational& a, const Rational& b);

}  // namespace matchmarket

#endif  // MATCHMARKET_RATIONAL_H_
