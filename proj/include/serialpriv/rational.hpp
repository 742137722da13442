//
// Copyright 2026 The serialpriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef SERIALPRIV_RATIONAL_HPP_
#define SERIALPRIV_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace serialpriv {

using BigInt = mpz_class;

// Exact rational number over arbitrary-precision integers. All linkage
// probabilities and group-size ratios are carried in this type; floating
// point appears only when rendering reports. Values are kept canonical:
// denominator > 0, numerator and denominator coprime.
class Rational {
 public:
  Rational() : value_(0) {}
  Rational(long v) : value_(v) {}          // NOLINT(google-explicit-constructor)
  Rational(int v) : value_(v) {}           // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);
  Rational(const BigInt& num, const BigInt& den);

  // Exact conversion; every finite double is a dyadic rational.
  static Rational from_double(double v);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }

  double to_double() const { return value_.get_d(); }
  // "3/4", or just "3" for integers.
  std::string to_string() const;

  bool is_integer() const { return value_.get_den() == 1; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.value_ + b.value_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.value_ - b.value_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.value_ * b.value_);
  }
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return a.value_ != b.value_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.value_ < b.value_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.value_ <= b.value_;
  }
  friend bool operator>(const Rational& a, const Rational& b) {
    return a.value_ > b.value_;
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return a.value_ >= b.value_;
  }

 private:
  explicit Rational(mpq_class v) : value_(std::move(v)) {}

  mpq_class value_;
};

// r^n for n >= 0.
Rational pow(const Rational& base, unsigned exponent);

// Smallest integer >= r.
BigInt ceil_to_int(const Rational& r);

}  // namespace serialpriv

#endif  // SERIALPRIV_RATIONAL_HPP_
