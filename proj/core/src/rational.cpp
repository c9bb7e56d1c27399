/*
 * Copyright 2026 The elmatch Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "elmatch/rational.hpp"

#include <cctype>
#include <ostream>

#include "elmatch/error.hpp"

namespace elmatch {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::TooFewPoints: return "TooFewPoints";
  case ErrorKind::DegenerateSample: return "DegenerateSample";
  case ErrorKind::OutOfRange: return "OutOfRange";
  case ErrorKind::NoDensity: return "NoDensity";
  case ErrorKind::PreconditionViolated: return "PreconditionViolated";
  case ErrorKind::UnsupportedPriorClass: return "UnsupportedPriorClass";
  case ErrorKind::ParseError: return "ParseError";
  case ErrorKind::InvalidArgument: return "InvalidArgument";
  case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Rational::Rational(long num, long den) : value_(num, den) {
  if (den == 0) {
    throw Error(ErrorKind::InvalidArgument, "rational with zero denominator");
  }
  value_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den)
    : value_(num, den) {
  if (den == 0) {
    throw Error(ErrorKind::InvalidArgument, "rational with zero denominator");
  }
  value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) {
    throw Error(ErrorKind::InvalidArgument, "division by zero rational");
  }
  value_ /= o.value_;
  return *this;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s, std::size_t& offset) {
  offset = 0;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
    ++offset;
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

} // namespace

Rational Rational::parse(std::string_view text) {
  std::size_t offset = 0;
  std::string_view s = trim(text, offset);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
    ++offset;
  }
  const auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!all_digits(num)) {
    throw ParseError("expected integer numerator in rational '" +
                         std::string(text) + "'",
                     offset);
  }
  if (!all_digits(den)) {
    throw ParseError("expected integer denominator in rational '" +
                         std::string(text) + "'",
                     offset + num.size() + 1);
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) {
    throw ParseError("zero denominator in rational '" + std::string(text) + "'",
                     offset + num.size() + 1);
  }
  if (negative) n = -n;
  return Rational(n, d);
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

} // namespace elmatch
