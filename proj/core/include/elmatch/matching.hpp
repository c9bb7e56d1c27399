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

#ifndef ELMATCH_MATCHING_HPP
#define ELMATCH_MATCHING_HPP

#include <optional>
#include <string>
#include <vector>

#include "elmatch/likelihood.hpp"
#include "elmatch/poly.hpp"

namespace elmatch {

/// Margin of error targeted: o(n^{-1/2}) or o(n^{-1}).
enum class MatchOrder { Half, One };
enum class PriorClass { Simple, Elaborate };

const char* to_string(MatchOrder order);
const char* to_string(PriorClass cls);

/// One polynomial identity; it holds iff the residual is the zero polynomial.
struct ConditionResult {
  std::string name;        // "a3", "b2", "b4", "b6"
  std::string description; // the required form, in poly text
  bool pass = false;
  Poly2 residual;
};

struct MatchingReport {
  MatchOrder order = MatchOrder::Half;
  PriorClass prior_class = PriorClass::Simple;
  std::vector<ConditionResult> conditions;
  bool feasible = false;
  std::optional<Poly2> derived_chi;
  std::optional<Poly2> derived_lambda;

  /// The first failing condition, or nullptr.
  const ConditionResult* first_failure() const;
};

/// The a3 = s/3 condition; on success derives chi = -(a1 + s/2).
MatchingReport check_order_half(const LikelihoodFamily& family,
                                PriorClass prior_class = PriorClass::Simple);

/// o(1/n) matching with a simple prior: a3, b2, b4 and b6 conditions.
MatchingReport check_order_one_simple(const LikelihoodFamily& family);

/// o(1/n) matching with an elaborate prior: a3, b4 and b6 conditions; on
/// success also derives lambda = a1^2 - 2 b2 + 5/4 s^2 - 2/3 k + 2.
MatchingReport check_order_one_elaborate(const LikelihoodFamily& family);

MatchingReport check_matching(const LikelihoodFamily& family, MatchOrder order,
                              PriorClass prior_class);

/// z^0 and z^2 coefficients of the n^{-1/2} coverage error for a simple
/// prior with slope chi (chi stands for sigma * psi1 at the population).
struct Delta1Poly {
  Poly2 coeff_z0;
  Poly2 coeff_z2;
};

Delta1Poly symbolic_delta1(const LikelihoodFamily& family, const Poly2& chi);

/// n^{-1} coverage error C1 z + C3 z^3 + C5 z^5 under the derived simple
/// prior. Requires a3 = s/3 (PreconditionViolated otherwise).
struct CPolys {
  Poly2 c1;
  Poly2 c3;
  Poly2 c5;
};

CPolys symbolic_C(const LikelihoodFamily& family);

} // namespace elmatch

#endif
