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

#include "elmatch/prior.hpp"

#include <cmath>
#include <fstream>

#include "elmatch/error.hpp"

namespace elmatch {

namespace {

void require_univariate(const Poly2& chi, const std::string& name) {
  if (!chi.is_univariate_s()) {
    throw Error(ErrorKind::InvalidArgument,
                "prior '" + name + "': chi must be a polynomial in s only");
  }
}

} // namespace

PriorSpec flat_prior() { return {FlatPrior{}, "flat"}; }

PriorSpec simple_prior(Poly2 chi, std::string name) {
  require_univariate(chi, name);
  return {SimplePrior{std::move(chi)}, std::move(name)};
}

PriorSpec elaborate_prior(Poly2 chi, Poly2 lambda, std::string name) {
  require_univariate(chi, name);
  return {ElaboratePrior{std::move(chi), std::move(lambda)}, std::move(name)};
}

PriorSpec custom_prior(std::function<double(const SampleSummary&)> psi1,
                       std::function<double(const SampleSummary&)> psi11,
                       std::string name) {
  if (!psi1 || !psi11) {
    throw Error(ErrorKind::InvalidArgument, "custom prior needs psi1 and psi11");
  }
  return {CustomPrior{std::move(psi1), std::move(psi11)}, std::move(name)};
}

PriorSpec derived_simple_prior(const LikelihoodFamily& family) {
  return simple_prior(-(family.a1 + Rational(1, 2) * Poly2::s()), "eq26");
}

PriorSpec skewness_adjusted_prior() {
  return simple_prior(Rational(-1, 2) * Poly2::s(), "eq29");
}

PriorSpec kurtosis_adjusted_prior() {
  const Poly2 s = Poly2::s();
  return elaborate_prior(Rational(-1, 2) * s,
                         Rational(5, 4) * s * s - Rational(2, 3) * Poly2::k() +
                             Poly2(2),
                         "eq34");
}

LogPriorDerivs log_prior_derivs(const PriorSpec& prior, const SampleSummary& summary) {
  struct Visitor {
    const SampleSummary& s;
    LogPriorDerivs operator()(const FlatPrior&) const { return {}; }
    LogPriorDerivs operator()(const SimplePrior& p) const {
      return {p.chi.eval(s.g3) / std::sqrt(s.m2), 0.0};
    }
    LogPriorDerivs operator()(const ElaboratePrior& p) const {
      return {p.chi.eval(s.g3) / std::sqrt(s.m2), p.lambda.eval(s.g3, s.g4) / s.m2};
    }
    LogPriorDerivs operator()(const CustomPrior& p) const {
      return {p.psi1(s), p.psi11(s)};
    }
  };
  return std::visit(Visitor{summary}, prior.form);
}

double log_prior(const PriorSpec& prior, const SampleSummary& summary, double theta) {
  const double d = theta - summary.mean;
  struct Visitor {
    const SampleSummary& s;
    double d;
    double operator()(const FlatPrior&) const { return 0.0; }
    double operator()(const SimplePrior& p) const {
      return d / std::sqrt(s.m2) * p.chi.eval(s.g3);
    }
    double operator()(const ElaboratePrior& p) const {
      return d / std::sqrt(s.m2) * p.chi.eval(s.g3) +
             0.5 * d * d / s.m2 * p.lambda.eval(s.g3, s.g4);
    }
    double operator()(const CustomPrior&) const {
      throw Error(ErrorKind::NoDensity,
                  "custom prior is given by derivatives only; it has no density");
    }
  };
  return std::visit(Visitor{summary, d}, prior.form);
}

double prior_density(const PriorSpec& prior, const SampleSummary& summary, double theta) {
  return std::exp(log_prior(prior, summary, theta));
}

nlohmann::json PriorSpec::to_json() const {
  struct Visitor {
    nlohmann::json operator()(const FlatPrior&) const { return {{"kind", "flat"}}; }
    nlohmann::json operator()(const SimplePrior& p) const {
      return {{"kind", "simple"}, {"chi", p.chi.to_json()}};
    }
    nlohmann::json operator()(const ElaboratePrior& p) const {
      return {{"kind", "elaborate"},
              {"chi", p.chi.to_json()},
              {"lambda", p.lambda.to_json()}};
    }
    nlohmann::json operator()(const CustomPrior&) const {
      throw Error(ErrorKind::InvalidArgument, "custom priors cannot be serialized");
    }
  };
  auto j = std::visit(Visitor{}, form);
  j["name"] = name;
  return j;
}

PriorSpec PriorSpec::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw Error(ErrorKind::ParseError, "prior JSON needs a 'kind' field");
  }
  const auto kind = j.at("kind").get<std::string>();
  const auto name = j.value("name", kind);
  if (kind == "flat") {
    auto p = flat_prior();
    p.name = name;
    return p;
  }
  if (kind == "simple") return simple_prior(Poly2::from_json(j.at("chi")), name);
  if (kind == "elaborate") {
    return elaborate_prior(Poly2::from_json(j.at("chi")),
                           Poly2::from_json(j.at("lambda")), name);
  }
  throw Error(ErrorKind::ParseError, "unknown prior kind '" + kind + "'");
}

PriorSpec parse_prior_spec(std::string_view spec, const LikelihoodFamily* family) {
  if (spec == "flat") return flat_prior();
  if (spec == "eq29") return skewness_adjusted_prior();
  if (spec == "eq34") return kurtosis_adjusted_prior();
  if (spec == "eq26") {
    if (family == nullptr) {
      throw ParseError("prior 'eq26' is derived from a family; pass --family", 0);
    }
    return derived_simple_prior(*family);
  }

  const auto colon = spec.find(':');
  if (colon != std::string_view::npos) {
    const auto head = spec.substr(0, colon);
    if (head == "file") {
      const std::string path(spec.substr(colon + 1));
      std::ifstream in(path);
      if (!in) throw Error(ErrorKind::Io, "cannot open prior file '" + path + "'");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError,
                    "prior file '" + path + "' is not valid JSON: " + e.what());
      }
      try {
        if (j.contains("result") && j.at("result").contains("prior")) {
          return PriorSpec::from_json(j.at("result").at("prior"));
        }
        if (j.contains("prior")) return PriorSpec::from_json(j.at("prior"));
        return PriorSpec::from_json(j);
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, "prior file '" + path + "' is malformed: " + e.what());
      }
    }
    if (head == "simple" || head == "elaborate") {
      Poly2 chi;
      Poly2 lambda;
      bool have_chi = false;
      bool have_lambda = false;
      for (auto& [key, text] : detail::parse_params(spec.substr(colon + 1), colon + 1)) {
        if (key == "chi") {
          chi = Poly2::parse(text);
          have_chi = true;
        } else if (key == "lambda" && head == "elaborate") {
          lambda = Poly2::parse(text);
          have_lambda = true;
        } else {
          throw ParseError("unknown parameter '" + key + "' in prior spec '" +
                               std::string(spec) + "'",
                           colon + 1);
        }
      }
      if (!have_chi) {
        throw ParseError("prior spec '" + std::string(spec) + "' is missing chi",
                         spec.size());
      }
      if (head == "simple") return simple_prior(std::move(chi));
      if (!have_lambda) {
        throw ParseError("prior spec '" + std::string(spec) + "' is missing lambda",
                         spec.size());
      }
      return elaborate_prior(std::move(chi), std::move(lambda));
    }
  }
  throw ParseError("unknown prior spec '" + std::string(spec) +
                       "' (expected flat, eq26, eq29, eq34, simple:..., "
                       "elaborate:..., file:...)",
                   0);
}

} // namespace elmatch
