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

#include "pvcsp/rational.hpp"

#include <cctype>

#include "pvcsp/error.hpp"

namespace pvcsp {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kUnknownSymbol: return "UnknownSymbol";
    case ErrorKind::kArityMismatch: return "ArityMismatch";
    case ErrorKind::kUnknownVariable: return "UnknownVariable";
    case ErrorKind::kUnassignedVariable: return "UnassignedVariable";
    case ErrorKind::kUnknownLabel: return "UnknownLabel";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kDomainMismatch: return "DomainMismatch";
    case ErrorKind::kInfeasibleRegion: return "InfeasibleRegion";
    case ErrorKind::kUnboundedObjective: return "UnboundedObjective";
    case ErrorKind::kPreconditionViolated: return "PreconditionViolated";
    case ErrorKind::kIndexMisalignment: return "IndexMisalignment";
    case ErrorKind::kSamplerSignatureMismatch: return "SamplerSignatureMismatch";
    case ErrorKind::kResourceGuard: return "ResourceGuard";
    case ErrorKind::kBadArity: return "BadArity";
    case ErrorKind::kInternalInvariant: return "InternalInvariant";
  }
  return "Error";
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
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                                : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw Error(ErrorKind::kParse, "malformed rational '" + std::string(text) + "'");
  }
  Integer denominator(std::string(den), 10);
  if (denominator == 0) {
    throw Error(ErrorKind::kParse, "zero denominator in '" + std::string(text) + "'");
  }
  Integer numerator(std::string(num), 10);
  if (text.front() == '-') numerator = -numerator;
  Rational result(numerator, denominator);
  result.canonicalize();
  return result;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

Rational make_rational(long numerator, long denominator) {
  if (denominator == 0) throw Error(ErrorKind::kInvalidArgument, "zero denominator");
  Rational result(numerator, denominator);
  result.canonicalize();
  return result;
}

const Rational& ExtendedRational::value() const {
  if (infinite_) throw Error(ErrorKind::kInvalidArgument, "value() of +inf");
  return value_;
}

ExtendedRational& ExtendedRational::operator+=(const ExtendedRational& other) {
  if (infinite_) return *this;
  if (other.infinite_) {
    infinite_ = true;
    value_ = 0;
    return *this;
  }
  value_ += other.value_;
  return *this;
}

ExtendedRational ExtendedRational::scaled(const Rational& factor) const {
  if (infinite_) return *this;
  return ExtendedRational(Rational(value_ * factor));
}

bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.infinite_ || b.infinite_) {
    return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
  }
  return cmp(a.value_, b.value_) <=> 0;
}

std::string to_string(const ExtendedRational& value) {
  return value.is_infinite() ? std::string("inf") : to_string(value.value());
}

ExtendedRational parse_extended_rational(std::string_view text) {
  if (text == "inf" || text == "+inf") return ExtendedRational::infinity();
  return ExtendedRational(parse_rational(text));
}

std::ostream& operator<<(std::ostream& os, const ExtendedRational& value) {
  return os << to_string(value);
}

ExtendedValue::ExtendedValue(const ExtendedRational& value)
    : kind_(value.is_finite() ? Kind::kFinite : Kind::kPlusInfinity),
      value_(value.is_finite() ? value.value() : Rational(0)) {}

const Rational& ExtendedValue::value() const {
  if (kind_ != Kind::kFinite) throw Error(ErrorKind::kInvalidArgument, "value() of an infinity");
  return value_;
}

bool operator==(const ExtendedValue& a, const ExtendedValue& b) {
  if (a.kind_ != b.kind_) return false;
  return a.kind_ != ExtendedValue::Kind::kFinite || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtendedValue& a, const ExtendedValue& b) {
  if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
  if (a.kind_ != ExtendedValue::Kind::kFinite) return std::strong_ordering::equal;
  return cmp(a.value_, b.value_) <=> 0;
}

std::string to_string(const ExtendedValue& value) {
  switch (value.kind()) {
    case ExtendedValue::Kind::kMinusInfinity: return "-inf";
    case ExtendedValue::Kind::kPlusInfinity: return "inf";
    case ExtendedValue::Kind::kFinite: break;
  }
  return to_string(value.value());
}

std::ostream& operator<<(std::ostream& os, const ExtendedValue& value) {
  return os << to_string(value);
}

}  // namespace pvcsp
