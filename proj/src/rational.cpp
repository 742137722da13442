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

#include "serialpriv/rational.hpp"

#include <cmath>

namespace serialpriv {

Rational::Rational(std::int64_t num, std::int64_t den)
    : Rational(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den))) {}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) {
    throw std::invalid_argument("rational with zero denominator");
  }
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::from_double(double v) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument("rational from non-finite double");
  }
  mpq_class q(v);
  q.canonicalize();
  return Rational(std::move(q));
}

std::string Rational::to_string() const {
  if (is_integer()) {
    return value_.get_num().get_str();
  }
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.value_ == 0) {
    throw std::invalid_argument("rational division by zero");
  }
  return Rational(mpq_class(a.value_ / b.value_));
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational acc = base;
  while (exponent > 0) {
    if (exponent & 1u) {
      result = result * acc;
    }
    acc = acc * acc;
    exponent >>= 1u;
  }
  return result;
}

BigInt ceil_to_int(const Rational& r) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), r.numerator().get_mpz_t(), r.denominator().get_mpz_t());
  return q;
}

}  // namespace serialpriv
