// Copyright 2026 The pvcsp Authors
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

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace pvcsp {

// GMP keeps mpq_class values canonical (lowest terms, positive denominator)
// after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

// Accepts an optional '-', digits, and an optional '/' followed by digits.
// Throws Error(kParse) on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);

Rational make_rational(long numerator, long denominator = 1);

// A cost value: a rational or +inf.
class ExtendedRational {
 public:
  ExtendedRational() : infinite_(false), value_(0) {}
  ExtendedRational(Rational value) : infinite_(false), value_(std::move(value)) {}  // NOLINT
  ExtendedRational(long value) : infinite_(false), value_(value) {}  // NOLINT

  static ExtendedRational infinity() {
    ExtendedRational result;
    result.infinite_ = true;
    return result;
  }

  bool is_finite() const { return !infinite_; }
  bool is_infinite() const { return infinite_; }

  // Throws Error(kInvalidArgument) on +inf.
  const Rational& value() const;

  ExtendedRational& operator+=(const ExtendedRational& other);
  friend ExtendedRational operator+(ExtendedRational lhs, const ExtendedRational& rhs) {
    lhs += rhs;
    return lhs;
  }

  // Scaling by a nonnegative rational; 0 * inf is left to the caller.
  ExtendedRational scaled(const Rational& factor) const;

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b);
  friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b);

 private:
  bool infinite_;
  Rational value_;
};

// "inf" or the canonical rational text.
std::string to_string(const ExtendedRational& value);
ExtendedRational parse_extended_rational(std::string_view text);
std::ostream& operator<<(std::ostream& os, const ExtendedRational& value);

// The value of a relaxation program: -inf, a rational, or +inf.
class ExtendedValue {
 public:
  enum class Kind { kMinusInfinity, kFinite, kPlusInfinity };

  ExtendedValue() : kind_(Kind::kFinite), value_(0) {}
  ExtendedValue(Rational value) : kind_(Kind::kFinite), value_(std::move(value)) {}  // NOLINT
  ExtendedValue(const ExtendedRational& value);  // NOLINT

  static ExtendedValue plus_infinity() { return ExtendedValue(Kind::kPlusInfinity); }
  static ExtendedValue minus_infinity() { return ExtendedValue(Kind::kMinusInfinity); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::kFinite; }
  const Rational& value() const;

  friend bool operator==(const ExtendedValue& a, const ExtendedValue& b);
  friend std::strong_ordering operator<=>(const ExtendedValue& a, const ExtendedValue& b);

 private:
  explicit ExtendedValue(Kind kind) : kind_(kind), value_(0) {}

  Kind kind_;
  Rational value_;
};

// "-inf", "inf", or the canonical rational text.
std::string to_string(const ExtendedValue& value);
std::ostream& operator<<(std::ostream& os, const ExtendedValue& value);

}  // namespace pvcsp
