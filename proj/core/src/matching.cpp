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

#include "elmatch/matching.hpp"

#include "elmatch/error.hpp"

namespace elmatch {

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

const Poly2& S() {
  static const Poly2 s = Poly2::s();
  return s;
}
const Poly2& K() {
  static const Poly2 k = Poly2::k();
  return k;
}

// Required forms of the likelihood coefficients.
Poly2 required_a3() { return q(1, 3) * S(); }

Poly2 required_b2_simple(const Poly2& a1) {
  return q(1, 2) * a1 * a1 + q(5, 8) * S() * S() - q(1, 3) * K() + Poly2(1);
}

Poly2 required_b4(const Poly2& a1) {
  return q(1, 3) * S() * a1 - q(1, 2) * S() * S() + q(1, 4) * K() - Poly2(q(1, 2));
}

Poly2 required_b6() { return q(1, 18) * S() * S(); }

ConditionResult condition(std::string name, const Poly2& actual, const Poly2& required) {
  ConditionResult c;
  c.name = std::move(name);
  c.description = required.to_string();
  c.residual = actual - required;
  c.pass = c.residual.is_zero();
  return c;
}

Poly2 chi_for(const LikelihoodFamily& family) {
  return -(family.a1 + q(1, 2) * S());
}

void finish(MatchingReport& report) {
  report.feasible = true;
  for (const auto& c : report.conditions) report.feasible = report.feasible && c.pass;
}

} // namespace

const char* to_string(MatchOrder order) {
  return order == MatchOrder::Half ? "half" : "one";
}

const char* to_string(PriorClass cls) {
  return cls == PriorClass::Simple ? "simple" : "elaborate";
}

const ConditionResult* MatchingReport::first_failure() const {
  for (const auto& c : conditions) {
    if (!c.pass) return &c;
  }
  return nullptr;
}

MatchingReport check_order_half(const LikelihoodFamily& family, PriorClass prior_class) {
  MatchingReport r;
  r.order = MatchOrder::Half;
  r.prior_class = prior_class;
  r.conditions.push_back(condition("a3", family.a3, required_a3()));
  finish(r);
  if (r.conditions.front().pass) r.derived_chi = chi_for(family);
  return r;
}

MatchingReport check_order_one_simple(const LikelihoodFamily& family) {
  MatchingReport r;
  r.order = MatchOrder::One;
  r.prior_class = PriorClass::Simple;
  r.conditions.push_back(condition("a3", family.a3, required_a3()));
  r.conditions.push_back(condition("b2", family.b2, required_b2_simple(family.a1)));
  r.conditions.push_back(condition("b4", family.b4, required_b4(family.a1)));
  r.conditions.push_back(condition("b6", family.b6, required_b6()));
  finish(r);
  if (r.conditions.front().pass) r.derived_chi = chi_for(family);
  return r;
}

MatchingReport check_order_one_elaborate(const LikelihoodFamily& family) {
  MatchingReport r;
  r.order = MatchOrder::One;
  r.prior_class = PriorClass::Elaborate;
  r.conditions.push_back(condition("a3", family.a3, required_a3()));
  r.conditions.push_back(condition("b4", family.b4, required_b4(family.a1)));
  r.conditions.push_back(condition("b6", family.b6, required_b6()));
  finish(r);
  if (r.conditions.front().pass) r.derived_chi = chi_for(family);
  if (r.feasible) {
    r.derived_lambda = family.a1 * family.a1 - q(2) * family.b2 +
                       q(5, 4) * S() * S() - q(2, 3) * K() + Poly2(2);
  }
  return r;
}

MatchingReport check_matching(const LikelihoodFamily& family, MatchOrder order,
                              PriorClass prior_class) {
  if (order == MatchOrder::Half) return check_order_half(family, prior_class);
  return prior_class == PriorClass::Simple ? check_order_one_simple(family)
                                           : check_order_one_elaborate(family);
}

Delta1Poly symbolic_delta1(const LikelihoodFamily& family, const Poly2& chi) {
  return {family.a1 + q(2) * family.a3 + chi - q(1, 6) * S(),
          family.a3 - q(1, 3) * S()};
}

CPolys symbolic_C(const LikelihoodFamily& family) {
  if (family.a3 != required_a3()) {
    throw Error(ErrorKind::PreconditionViolated,
                "the C1/C3/C5 form needs a3 = 1/3*s; family '" + family.name +
                    "' has a3 = " + family.a3.to_string());
  }
  const Poly2& a1 = family.a1;
  const Poly2 s2 = S() * S();
  CPolys c;
  c.c1 = family.b2 + q(3) * family.b4 + q(15) * family.b6 - q(1, 2) * a1 * a1 -
         S() * a1 + q(1, 24) * s2 - q(5, 12) * K() + Poly2(q(1, 2));
  c.c3 = family.b4 + q(5) * family.b6 - q(1, 3) * S() * a1 + q(2, 9) * s2 -
         q(1, 4) * K() + Poly2(q(1, 2));
  c.c5 = family.b6 - q(1, 18) * s2;
  return c;
}

} // namespace elmatch
