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

#ifndef ELMATCH_PRIOR_HPP
#define ELMATCH_PRIOR_HPP

#include <functional>
#include <string>
#include <string_view>
#include <variant>

#include <nlohmann/json.hpp>

#include "elmatch/likelihood.hpp"
#include "elmatch/moments.hpp"
#include "elmatch/poly.hpp"

namespace elmatch {

/// pi(theta) = 1.
struct FlatPrior {};

/// log pi(theta) = (theta - mean) m2^{-1/2} chi(g3).
struct SimplePrior {
  Poly2 chi;
};

/// log pi(theta) = (theta - mean) m2^{-1/2} chi(g3)
///               + 1/2 (theta - mean)^2 m2^{-1} lambda(g3, g4).
struct ElaboratePrior {
  Poly2 chi;
  Poly2 lambda;
};

/// Arbitrary data-dependent prior given only through the first two
/// theta-derivatives of log pi at theta = mean. Both callables must be pure.
struct CustomPrior {
  std::function<double(const SampleSummary&)> psi1;
  std::function<double(const SampleSummary&)> psi11;
};

struct PriorSpec {
  std::variant<FlatPrior, SimplePrior, ElaboratePrior, CustomPrior> form;
  std::string name;

  bool is_flat() const { return std::holds_alternative<FlatPrior>(form); }
  bool is_custom() const { return std::holds_alternative<CustomPrior>(form); }

  /// Custom priors are not serializable and throw InvalidArgument.
  nlohmann::json to_json() const;
  static PriorSpec from_json(const nlohmann::json& j);
};

PriorSpec flat_prior();
/// Throws InvalidArgument when chi involves k.
PriorSpec simple_prior(Poly2 chi, std::string name = "simple");
PriorSpec elaborate_prior(Poly2 chi, Poly2 lambda, std::string name = "elaborate");
PriorSpec custom_prior(std::function<double(const SampleSummary&)> psi1,
                       std::function<double(const SampleSummary&)> psi11,
                       std::string name = "custom");

/// Simple prior with chi = -(a1 + s/2): the o(n^{-1/2}) matching prior for
/// any family whose a3 equals s/3.
PriorSpec derived_simple_prior(const LikelihoodFamily& family);

/// chi = -s/2; the matching prior for every family with a1 = 0.
PriorSpec skewness_adjusted_prior();

/// chi = -s/2, lambda = 5/4 s^2 - 2/3 k + 2; matches the usual empirical
/// likelihood to o(1/n).
PriorSpec kurtosis_adjusted_prior();

/// First and second theta-derivatives of log pi at theta = mean.
struct LogPriorDerivs {
  double psi1 = 0.0;
  double psi11 = 0.0;
};

LogPriorDerivs log_prior_derivs(const PriorSpec& prior, const SampleSummary& summary);

/// log pi(theta), normalised so that it is zero at theta = mean.
double log_prior(const PriorSpec& prior, const SampleSummary& summary, double theta);

/// exp(log_prior). Throws NoDensity for custom priors.
double prior_density(const PriorSpec& prior, const SampleSummary& summary, double theta);

/**
 * Parses `flat`, `eq26` (needs `family`), `eq29`, `eq34`,
 * `simple:chi=<poly>`, `elaborate:chi=<poly>,lambda=<poly>` or `file:<path>`.
 */
PriorSpec parse_prior_spec(std::string_view spec, const LikelihoodFamily* family = nullptr);

} // namespace elmatch

#endif
