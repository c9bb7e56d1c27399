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

#include "elmatch/likelihood.hpp"

#include <cmath>
#include <fstream>
#include <map>

#include "elmatch/error.hpp"
#include "elmatch/normal.hpp"

namespace elmatch {

namespace {

const Poly2 kS = Poly2::s();
const Poly2 kK = Poly2::k();

Rational r(long p, long q = 1) { return Rational(p, q); }

} // namespace

LikelihoodFamily make_family(std::string name, Poly2 a1, Poly2 a3, Poly2 b0,
                             Poly2 b2, Poly2 b4, Poly2 b6) {
  if (!a1.is_univariate_s() || !a3.is_univariate_s()) {
    throw Error(ErrorKind::InvalidArgument,
                "family '" + name + "': a1 and a3 must be polynomials in s only");
  }
  return {std::move(name), std::move(a1), std::move(a3), std::move(b0),
          std::move(b2),   std::move(b4), std::move(b6)};
}

LikelihoodFamily family_cressie_read(const Rational& tau3, const Rational& tau4) {
  const Rational t3sq = tau3 * tau3;
  const Poly2 s2 = kS * kS;
  return make_family("cressie-read(" + tau3.to_string() + "," + tau4.to_string() + ")",
                     Poly2(), tau3 * kS, Poly2(), Poly2(),
                     tau4 * kK - r(9, 2) * t3sq * (s2 + Poly2(1)),
                     r(1, 2) * t3sq * s2);
}

LikelihoodFamily family_gel(const Rational& gamma3, const Rational& gamma4) {
  const Rational g3sq = gamma3 * gamma3;
  const Poly2 s2 = kS * kS;
  return make_family("gel(" + gamma3.to_string() + "," + gamma4.to_string() + ")",
                     Poly2(), gamma3 * kS, Poly2(), Poly2(),
                     gamma4 * kK - r(9, 2) * g3sq * s2 - Poly2(r(3) * gamma3) +
                         Poly2(r(1, 2)),
                     r(1, 2) * g3sq * s2);
}

LikelihoodFamily family_geef(const Rational& mu) {
  const Poly2 s2 = kS * kS;
  return make_family("geef(" + mu.to_string() + ")", Poly2(), r(1, 3) * kS,
                     Poly2(), Poly2(),
                     mu * kK - (mu + r(1, 4)) * (s2 + Poly2(1)),
                     r(1, 18) * s2);
}

LikelihoodFamily family_el() {
  const Poly2 s2 = kS * kS;
  return make_family("el", Poly2(), r(1, 3) * kS, Poly2(), Poly2(),
                     r(1, 4) * kK - r(1, 2) * (s2 + Poly2(1)), r(1, 18) * s2);
}

LikelihoodFamily family_schennach() {
  auto f = family_geef(r(1, 8));
  f.name = "schennach";
  return f;
}

LikelihoodFamily family_data_free_matching() {
  const Poly2 s2 = kS * kS;
  return make_family("fm-matching", r(-1, 2) * kS, r(1, 3) * kS, Poly2(),
                     r(3, 4) * s2 - r(1, 3) * kK + Poly2(1),
                     r(1, 4) * kK - r(2, 3) * s2 - Poly2(r(1, 2)),
                     r(1, 18) * s2);
}

double likelihood_kernel(const LikelihoodFamily& family,
                         const SampleSummary& summary, double theta) {
  if (summary.m2 <= 0.0) {
    throw Error(ErrorKind::DegenerateSample, "summary has m2 <= 0");
  }
  const double y = pivot_y(summary, theta);
  const double g3 = summary.g3;
  const double g4 = summary.g4;
  const double n = static_cast<double>(summary.n);
  const double y2 = y * y;
  const double odd = family.a1.eval(g3) * y + family.a3.eval(g3) * y2 * y;
  const double even = family.b0.eval(g3, g4) + family.b2.eval(g3, g4) * y2 +
                      family.b4.eval(g3, g4) * y2 * y2 +
                      family.b6.eval(g3, g4) * y2 * y2 * y2;
  return normal_pdf(y) * (1.0 + odd / std::sqrt(n) + even / n);
}

nlohmann::json LikelihoodFamily::to_json() const {
  return {{"name", name},         {"a1", a1.to_json()}, {"a3", a3.to_json()},
          {"b0", b0.to_json()},   {"b2", b2.to_json()}, {"b4", b4.to_json()},
          {"b6", b6.to_json()}};
}

LikelihoodFamily LikelihoodFamily::from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw Error(ErrorKind::ParseError, "family JSON must be an object");
  }
  auto poly = [&j](const char* key) {
    if (!j.contains(key)) {
      throw Error(ErrorKind::ParseError,
                  std::string("family JSON is missing '") + key + "'");
    }
    return Poly2::from_json(j.at(key));
  };
  std::string name = j.value("name", std::string("custom"));
  return make_family(std::move(name), poly("a1"), poly("a3"), poly("b0"),
                     poly("b2"), poly("b4"), poly("b6"));
}

namespace detail {

std::vector<std::pair<std::string, std::string>>
parse_params(std::string_view params, std::size_t base) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t pos = 0;
  while (pos <= params.size()) {
    const auto comma = params.find(',', pos);
    const auto item =
        params.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                           : comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ParseError("expected key=value, got '" + std::string(item) + "'",
                       base + pos);
    }
    out.emplace_back(std::string(item.substr(0, eq)),
                     std::string(item.substr(eq + 1)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

} // namespace detail

namespace {

/// Resolves exactly the named rational parameters of a spec.
std::map<std::string, Rational>
rational_params(std::string_view spec, std::size_t colon,
                std::initializer_list<const char*> required) {
  const auto params = spec.substr(colon + 1);
  std::map<std::string, Rational> values;
  std::size_t offset = colon + 1;
  for (auto& [key, text] : detail::parse_params(params, colon + 1)) {
    bool known = false;
    for (const char* want : required) known = known || key == want;
    if (!known) {
      throw ParseError("unknown parameter '" + key + "' in family spec '" +
                           std::string(spec) + "'",
                       offset);
    }
    try {
      values.insert_or_assign(key, Rational::parse(text));
    } catch (const ParseError& e) {
      throw ParseError("bad value for '" + key + "' in family spec '" +
                           std::string(spec) + "': " + e.what(),
                       offset + key.size() + 1);
    }
    offset += key.size() + text.size() + 2;
  }
  for (const char* want : required) {
    if (!values.count(want)) {
      throw ParseError("family spec '" + std::string(spec) + "' is missing '" +
                           want + "'",
                       spec.size());
    }
  }
  return values;
}

} // namespace

LikelihoodFamily parse_family_spec(std::string_view spec) {
  if (spec == "el") return family_el();
  if (spec == "schennach") return family_schennach();
  if (spec == "fm-matching") return family_data_free_matching();

  const auto colon = spec.find(':');
  const auto head = spec.substr(0, colon);
  if (colon != std::string_view::npos) {
    if (head == "file") {
      const std::string path(spec.substr(colon + 1));
      std::ifstream in(path);
      if (!in) throw Error(ErrorKind::Io, "cannot open family file '" + path + "'");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError,
                    "family file '" + path + "' is not valid JSON: " + e.what());
      }
      // Saved reports nest the family under "family" or "result.family".
      try {
        if (j.contains("result") && j.at("result").contains("family")) {
          return LikelihoodFamily::from_json(j.at("result").at("family"));
        }
        if (j.contains("family")) return LikelihoodFamily::from_json(j.at("family"));
        return LikelihoodFamily::from_json(j);
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError,
                    "family file '" + path + "' is malformed: " + e.what());
      }
    }
    if (head == "cressie-read") {
      auto p = rational_params(spec, colon, {"tau3", "tau4"});
      return family_cressie_read(p.at("tau3"), p.at("tau4"));
    }
    if (head == "gel") {
      auto p = rational_params(spec, colon, {"gamma3", "gamma4"});
      return family_gel(p.at("gamma3"), p.at("gamma4"));
    }
    if (head == "geef") {
      auto p = rational_params(spec, colon, {"mu"});
      return family_geef(p.at("mu"));
    }
  }
  throw ParseError("unknown family spec '" + std::string(spec) +
                       "' (try `families list`)",
                   0);
}

std::vector<std::pair<std::string, std::string>> family_presets() {
  return {
      {"el", "usual empirical likelihood"},
      {"schennach", "exponentially tilted empirical likelihood (geef, mu = 1/8)"},
      {"fm-matching", "family admitting the flat prior as an o(1/n) matching prior"},
      {"cressie-read:tau3=<r>,tau4=<r>", "discrepancy-statistic subclass"},
      {"gel:gamma3=<r>,gamma4=<r>", "generalized empirical likelihood subclass"},
      {"geef:mu=<r>", "generalized empirical exponential family subclass"},
      {"file:<path>", "JSON document with polynomials a1, a3, b0, b2, b4, b6"},
  };
}

} // namespace elmatch
