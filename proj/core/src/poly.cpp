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

#include "elmatch/poly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <ostream>
#include <vector>

#include "elmatch/error.hpp"

namespace elmatch {

Poly2::Poly2(const Rational& constant) {
  add_term({0, 0}, constant);
}

Poly2::Poly2(std::initializer_list<std::pair<Monomial, Rational>> terms) {
  for (const auto& [m, c] : terms) add_term(m, c);
}

Poly2 Poly2::s() { return term(1, 1, 0); }
Poly2 Poly2::k() { return term(1, 0, 1); }

Poly2 Poly2::term(const Rational& coeff, unsigned s_pow, unsigned k_pow) {
  Poly2 p;
  p.add_term({s_pow, k_pow}, coeff);
  return p;
}

void Poly2::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool Poly2::is_univariate_s() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.first.k == 0; });
}

unsigned Poly2::total_degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.s + m.k);
  return d;
}

Rational Poly2::coeff(unsigned s_pow, unsigned k_pow) const {
  auto it = terms_.find({s_pow, k_pow});
  return it == terms_.end() ? Rational(0) : it->second;
}

namespace {

double ipow(double x, unsigned e) {
  double r = 1.0;
  while (e != 0) {
    if (e & 1U) r *= x;
    x *= x;
    e >>= 1U;
  }
  return r;
}

} // namespace

double Poly2::eval(double s, double k) const {
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    sum += c.to_double() * ipow(s, m.s) * ipow(k, m.k);
  }
  return sum;
}

Poly2 Poly2::deriv_s() const {
  Poly2 d;
  for (const auto& [m, c] : terms_) {
    if (m.s == 0) continue;
    d.add_term({m.s - 1, m.k}, c * Rational(static_cast<long>(m.s)));
  }
  return d;
}

Poly2 Poly2::operator-() const {
  Poly2 r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly2& Poly2::operator+=(const Poly2& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly2& Poly2::operator*=(const Poly2& o) {
  *this = *this * o;
  return *this;
}

Poly2& Poly2::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      r.add_term({ma.s + mb.s, ma.k + mb.k}, ca * cb);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Text form

namespace {

std::string monomial_text(const Monomial& m) {
  std::string out;
  auto factor = [&out](char var, unsigned e) {
    if (e == 0) return;
    if (!out.empty()) out += '*';
    out += var;
    if (e > 1) out += '^' + std::to_string(e);
  };
  factor('s', m.s);
  factor('k', m.k);
  return out;
}

} // namespace

std::string Poly2::to_string() const {
  if (terms_.empty()) return "0";

  std::vector<std::pair<Monomial, Rational>> ordered(terms_.begin(), terms_.end());
  // k-power first, then s-power, both descending; constant last.
  std::sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
    if (x.first.k != y.first.k) return x.first.k > y.first.k;
    return x.first.s > y.first.s;
  });

  std::string out;
  bool first = true;
  for (const auto& [m, c] : ordered) {
    const bool negative = c.sign() < 0;
    const Rational mag = negative ? -c : c;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;

    const std::string mono = monomial_text(m);
    if (mono.empty()) {
      out += mag.to_string();
    } else if (mag.is_one()) {
      out += mono;
    } else {
      out += mag.to_string() + "*" + mono;
    }
  }
  return out;
}

namespace {

/// Recursive-descent parser over the text form.
class PolyParser {
public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  Poly2 parse() {
    skip_ws();
    if (at_end()) fail("empty polynomial");
    Poly2 result;
    bool first = true;
    while (true) {
      skip_ws();
      if (at_end()) break;
      Rational sign(1);
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') sign = Rational(-1);
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      result += parse_product() * sign;
      first = false;
    }
    return result;
  }

private:
  Poly2 parse_product() {
    Poly2 p = parse_factor();
    while (true) {
      skip_ws();
      if (at_end() || peek() != '*') break;
      ++pos_;
      skip_ws();
      p *= parse_factor();
    }
    return p;
  }

  Poly2 parse_factor() {
    if (at_end()) fail("unexpected end of input");
    const char c = peek();
    if (c == 's' || c == 'k') {
      ++pos_;
      unsigned e = 1;
      skip_ws();
      if (!at_end() && peek() == '^') {
        ++pos_;
        skip_ws();
        e = parse_exponent();
      }
      return c == 's' ? Poly2::term(1, e, 0) : Poly2::term(1, 0, e);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      read_digits();
      skip_ws();
      if (!at_end() && peek() == '/') {
        ++pos_;
        skip_ws();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
          fail("expected denominator");
        }
        read_digits();
      }
      std::string literal;
      for (char ch : text_.substr(start, pos_ - start)) {
        if (!std::isspace(static_cast<unsigned char>(ch))) literal += ch;
      }
      try {
        return Poly2(Rational::parse(literal));
      } catch (const ParseError&) {
        pos_ = start;
        fail("invalid rational literal");
      }
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  unsigned parse_exponent() {
    const std::size_t start = pos_;
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
      fail("expected exponent");
    }
    read_digits();
    const auto digits = text_.substr(start, pos_ - start);
    if (digits.size() > 4) fail("exponent too large");
    return static_cast<unsigned>(std::stoul(std::string(digits)));
  }

  void read_digits() {
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
  }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " in polynomial '" + std::string(text_) + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

nlohmann::json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

mpz_class integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()), 10);
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    mpz_class z;
    if (z.set_str(s, 10) != 0) {
      throw Error(ErrorKind::ParseError, "invalid integer string '" + s + "'");
    }
    return z;
  }
  throw Error(ErrorKind::ParseError, "expected integer in polynomial JSON");
}

} // namespace

Poly2 Poly2::parse(std::string_view text) { return PolyParser(text).parse(); }

nlohmann::json Poly2::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [m, c] : terms_) {
    arr.push_back({{"i", m.s},
                   {"j", m.k},
                   {"num", integer_json(c.numerator())},
                   {"den", integer_json(c.denominator())}});
  }
  return {{"terms", arr}};
}

Poly2 Poly2::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array()) {
    throw Error(ErrorKind::ParseError, "polynomial JSON must be {\"terms\": [...]}");
  }
  Poly2 p;
  for (const auto& t : j.at("terms")) {
    if (!t.is_object() || !t.contains("i") || !t.contains("j") ||
        !t.contains("num") || !t.contains("den")) {
      throw Error(ErrorKind::ParseError,
                  "polynomial term needs integer fields i, j, num, den");
    }
    const auto i = t.at("i").get<long long>();
    const auto jj = t.at("j").get<long long>();
    if (i < 0 || jj < 0) {
      throw Error(ErrorKind::ParseError, "negative exponent in polynomial JSON");
    }
    const mpz_class den = integer_from_json(t.at("den"));
    if (den <= 0) {
      throw Error(ErrorKind::ParseError, "denominator must be positive");
    }
    p.add_term({static_cast<unsigned>(i), static_cast<unsigned>(jj)},
               Rational(integer_from_json(t.at("num")), den));
  }
  return p;
}

std::ostream& operator<<(std::ostream& os, const Poly2& p) {
  return os << p.to_string();
}

} // namespace elmatch
