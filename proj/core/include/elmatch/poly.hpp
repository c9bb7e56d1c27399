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

#ifndef ELMATCH_POLY_HPP
#define ELMATCH_POLY_HPP

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include <nlohmann/json.hpp>

#include "elmatch/rational.hpp"

namespace elmatch {

/// Exponent pair (power of s, power of k).
struct Monomial {
  unsigned s = 0;
  unsigned k = 0;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/**
 * Sparse polynomial with exact rational coefficients in two slots, s and k.
 *
 * The slots are formal: s stands for the skewness (g3 or beta3) and k for
 * the kurtosis (g4 or beta4). Zero coefficients are never stored, so two
 * polynomials are equal exactly when their term maps are equal.
 */
class Poly2 {
public:
  using TermMap = std::map<Monomial, Rational>;

  Poly2() = default;
  Poly2(const Rational& constant); // NOLINT(google-explicit-constructor)
  Poly2(int constant) : Poly2(Rational(constant)) {} // NOLINT

  /// Builds from (s-power, k-power, coefficient) triples; duplicates add.
  Poly2(std::initializer_list<std::pair<Monomial, Rational>> terms);

  static Poly2 s();
  static Poly2 k();
  static Poly2 term(const Rational& coeff, unsigned s_pow, unsigned k_pow = 0);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True when no term carries a positive power of k.
  bool is_univariate_s() const;
  unsigned total_degree() const;
  /// Coefficient of s^i k^j (zero when absent).
  Rational coeff(unsigned s_pow, unsigned k_pow = 0) const;

  double eval(double s, double k = 0.0) const;
  Poly2 deriv_s() const;

  Poly2 operator-() const;
  Poly2& operator+=(const Poly2& o);
  Poly2& operator-=(const Poly2& o);
  Poly2& operator*=(const Poly2& o);
  Poly2& operator*=(const Rational& c);

  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  friend Poly2 operator*(Poly2 a, const Rational& c) { return a *= c; }
  friend Poly2 operator*(const Rational& c, Poly2 a) { return a *= c; }
  friend bool operator==(const Poly2& a, const Poly2& b) {
    return a.terms_ == b.terms_;
  }

  /// Text form such as `1/8*k - 3/8*s^2 - 3/8`; `0` for the zero polynomial.
  std::string to_string() const;
  /// Parses the text form: sums of products of rationals, `s`, `k`, `s^n`, `k^n`.
  static Poly2 parse(std::string_view text);

  nlohmann::json to_json() const;
  static Poly2 from_json(const nlohmann::json& j);

private:
  void add_term(const Monomial& m, const Rational& c);
  TermMap terms_;
};

// Free-function names used throughout the symbolic code.
inline Poly2 poly_add(const Poly2& p, const Poly2& q) { return p + q; }
inline Poly2 poly_mul(const Poly2& p, const Poly2& q) { return p * q; }
inline double poly_eval(const Poly2& p, double s, double k) { return p.eval(s, k); }
inline Poly2 poly_deriv_s(const Poly2& p) { return p.deriv_s(); }
inline bool poly_is_zero(const Poly2& p) { return p.is_zero(); }

std::ostream& operator<<(std::ostream& os, const Poly2& p);

} // namespace elmatch

#endif
