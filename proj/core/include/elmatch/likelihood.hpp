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

#ifndef ELMATCH_LIKELIHOOD_HPP
#define ELMATCH_LIKELIHOOD_HPP

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "elmatch/moments.hpp"
#include "elmatch/poly.hpp"

namespace elmatch {

/**
 * An empirical-type likelihood for a mean, described by the coefficient
 * polynomials of its expansion around the normal kernel:
 *
 *   L(theta) ~ phi(y) [1 + n^{-1/2}(a1 y + a3 y^3)
 *                      + n^{-1}(b0 + b2 y^2 + b4 y^4 + b6 y^6)]
 *
 * a1 and a3 are polynomials in s (skewness); the b's are polynomials in
 * (s, k) = (skewness, kurtosis). Equality ignores the name.
 */
struct LikelihoodFamily {
  std::string name;
  Poly2 a1;
  Poly2 a3;
  Poly2 b0;
  Poly2 b2;
  Poly2 b4;
  Poly2 b6;

  friend bool operator==(const LikelihoodFamily& x, const LikelihoodFamily& y) {
    return x.a1 == y.a1 && x.a3 == y.a3 && x.b0 == y.b0 && x.b2 == y.b2 &&
           x.b4 == y.b4 && x.b6 == y.b6;
  }

  nlohmann::json to_json() const;
  static LikelihoodFamily from_json(const nlohmann::json& j);
};

/// Validating constructor: a1 and a3 must not involve k.
LikelihoodFamily make_family(std::string name, Poly2 a1, Poly2 a3, Poly2 b0,
                             Poly2 b2, Poly2 b4, Poly2 b6);

/// Discrepancy-statistic (Cressie-Read type) subclass.
LikelihoodFamily family_cressie_read(const Rational& tau3, const Rational& tau4);
/// Generalized empirical likelihood subclass.
LikelihoodFamily family_gel(const Rational& gamma3, const Rational& gamma4);
/// Generalized empirical exponential family subclass.
LikelihoodFamily family_geef(const Rational& mu);
/// The usual empirical likelihood; a member of all three subclasses.
LikelihoodFamily family_el();
/// Exponentially tilted empirical likelihood: geef with mu = 1/8.
LikelihoodFamily family_schennach();
/// The unique family for which the flat (data-free) prior matches to o(1/n).
LikelihoodFamily family_data_free_matching();

/// Truncated likelihood kernel at theta. Unnormalized, may dip below zero in
/// the far tails because the expansion is truncated.
double likelihood_kernel(const LikelihoodFamily& family,
                         const SampleSummary& summary, double theta);

/**
 * Parses a family spec: `el`, `schennach`, `fm-matching`,
 * `cressie-read:tau3=<r>,tau4=<r>`, `gel:gamma3=<r>,gamma4=<r>`,
 * `geef:mu=<r>` or `file:<path>` (JSON with the six polynomials).
 */
LikelihoodFamily parse_family_spec(std::string_view spec);

/// Names and one-line descriptions of the presets, for `families list`.
std::vector<std::pair<std::string, std::string>> family_presets();

namespace detail {
/// Splits `key=value,key=value` into pairs; positions are relative to `base`.
std::vector<std::pair<std::string, std::string>>
parse_params(std::string_view params, std::size_t base);
} // namespace detail

} // namespace elmatch

#endif
