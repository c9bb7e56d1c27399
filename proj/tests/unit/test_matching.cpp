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

#include <doctest.h>

#include <random>
#include <vector>

#include "elmatch/error.hpp"
#include "elmatch/likelihood.hpp"
#include "elmatch/matching.hpp"
#include "elmatch/prior.hpp"

using namespace elmatch;

namespace {
const Poly2 s = Poly2::s();
const Poly2 k = Poly2::k();
const Poly2 one = Poly2(1);
Rational q(long p, long d = 1) { return Rational(p, d); }

const ConditionResult& cond(const MatchingReport& r, const std::string& name) {
  for (const auto& c : r.conditions) {
    if (c.name == name) return c;
  }
  FAIL("no condition " << name);
  throw 0;
}

Poly2 random_univariate(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-4, 4);
  std::uniform_int_distribution<long> den(1, 6);
  Poly2 p;
  for (unsigned i = 0; i <= 2; ++i) p += Poly2::term(q(num(rng), den(rng)), i);
  return p;
}

Poly2 random_bivariate(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-4, 4);
  std::uniform_int_distribution<long> den(1, 6);
  Poly2 p;
  for (unsigned i = 0; i <= 2; ++i) {
    for (unsigned j = 0; i + j <= 2; ++j) p += Poly2::term(q(num(rng), den(rng)), i, j);
  }
  return p;
}

// Families near the matching manifold so both outcomes occur: start from
// one that satisfies every condition and perturb a random subset.
LikelihoodFamily random_family(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  const Poly2 a1 = random_univariate(rng);
  Poly2 a3 = q(1, 3) * s;
  Poly2 b2 = q(1, 2) * a1 * a1 + q(5, 8) * s * s - q(1, 3) * k + one;
  Poly2 b4 = q(1, 3) * s * a1 - q(1, 2) * s * s + q(1, 4) * k - Poly2(q(1, 2));
  Poly2 b6 = q(1, 18) * s * s;
  if (coin(rng)) a3 += random_univariate(rng);
  if (coin(rng)) b2 += random_bivariate(rng);
  if (coin(rng)) b4 += random_bivariate(rng);
  if (coin(rng)) b6 += random_bivariate(rng);
  return make_family("random", a1, a3, random_bivariate(rng), b2, b4, b6);
}
} // namespace

TEST_CASE("order one-half condition") {
  const auto el = check_order_half(family_el());
  CHECK(el.feasible);
  REQUIRE(el.derived_chi);
  CHECK(*el.derived_chi == q(-1, 2) * s);

  const auto cr = check_order_half(family_cressie_read(q(1, 2), q(1, 4)));
  CHECK_FALSE(cr.feasible);
  CHECK_FALSE(cr.derived_chi);
  CHECK(cond(cr, "a3").residual == q(1, 6) * s);
  REQUIRE(cr.first_failure() != nullptr);
  CHECK(cr.first_failure()->name == "a3");

  const auto fm = check_order_half(family_data_free_matching());
  CHECK(fm.feasible);
  REQUIRE(fm.derived_chi);
  CHECK(fm.derived_chi->is_zero());
}

TEST_CASE("order one, simple prior") {
  const auto fm = check_order_one_simple(family_data_free_matching());
  CHECK(fm.feasible);
  CHECK(fm.conditions.size() == 4);
  CHECK(fm.first_failure() == nullptr);

  const auto el = check_order_one_simple(family_el());
  CHECK_FALSE(el.feasible);
  CHECK(cond(el, "a3").pass);
  CHECK_FALSE(cond(el, "b2").pass);
  CHECK(cond(el, "b2").residual == -(q(5, 8) * s * s - q(1, 3) * k + one));

  CHECK_FALSE(check_order_one_simple(family_schennach()).feasible);
}

TEST_CASE("order one, elaborate prior") {
  const auto el = check_order_one_elaborate(family_el());
  CHECK(el.feasible);
  CHECK(el.conditions.size() == 3);
  REQUIRE(el.derived_lambda);
  CHECK(*el.derived_lambda == q(5, 4) * s * s - q(2, 3) * k + Poly2(2));
  CHECK(el.derived_lambda->to_string() == "-2/3*k + 5/4*s^2 + 2");
  REQUIRE(el.derived_chi);
  CHECK(*el.derived_chi == q(-1, 2) * s);

  const auto sch = check_order_one_elaborate(family_schennach());
  CHECK_FALSE(sch.feasible);
  CHECK_FALSE(sch.derived_lambda);
  CHECK(cond(sch, "b4").residual == q(-1, 8) * k + q(1, 8) * s * s + Poly2(q(1, 8)));
  CHECK(cond(sch, "b4").residual.to_string() == "-1/8*k + 1/8*s^2 + 1/8");

  const auto fm = check_order_one_elaborate(family_data_free_matching());
  CHECK(fm.feasible);
  REQUIRE(fm.derived_chi);
  REQUIRE(fm.derived_lambda);
  CHECK(fm.derived_chi->is_zero());
  CHECK(fm.derived_lambda->is_zero());

  CHECK(check_matching(family_el(), MatchOrder::One, PriorClass::Elaborate).feasible);
  CHECK_FALSE(check_matching(family_el(), MatchOrder::One, PriorClass::Simple).feasible);
}

TEST_CASE("symbolic delta1") {
  const auto matched = symbolic_delta1(family_el(), q(-1, 2) * s);
  CHECK(matched.coeff_z0.is_zero());
  CHECK(matched.coeff_z2.is_zero());

  const auto flat = symbolic_delta1(family_el(), Poly2());
  CHECK(flat.coeff_z0 == q(1, 2) * s);
  CHECK(flat.coeff_z2.is_zero());

  const auto cr = symbolic_delta1(family_cressie_read(q(1, 2), q(1, 4)), q(-1, 2) * s);
  CHECK(cr.coeff_z2 == q(1, 6) * s);

  // Every preset that passes the a3 condition has delta1 = 0 under its chi.
  for (const auto& f : {family_el(), family_schennach(), family_data_free_matching(),
                        family_geef(q(-3, 2)), family_cressie_read(q(1, 3), q(7))}) {
    const auto r = check_order_half(f);
    REQUIRE(r.derived_chi);
    const auto d = symbolic_delta1(f, *r.derived_chi);
    CHECK(d.coeff_z0.is_zero());
    CHECK(d.coeff_z2.is_zero());
  }
}

TEST_CASE("symbolic C") {
  const auto c = symbolic_C(family_el());
  CHECK(c.c5.is_zero());
  CHECK(c.c1.eval(0, 3) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(c.c3.eval(0, 3) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(c.c1.eval(2, 9) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(c.c3.eval(2, 9) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));

  const auto fm = symbolic_C(family_data_free_matching());
  CHECK(fm.c1.is_zero());
  CHECK(fm.c3.is_zero());
  CHECK(fm.c5.is_zero());

  try {
    symbolic_C(family_cressie_read(q(1, 2), q(1, 4)));
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionViolated);
  }
}

TEST_CASE("property: the condition form and the C form agree on random families") {
  std::mt19937_64 rng(2718);
  int feasible = 0;
  for (int t = 0; t < 50; ++t) {
    const auto f = random_family(rng);
    const bool conditions = check_order_one_simple(f).feasible;
    const Poly2 chi = -(f.a1 + q(1, 2) * s);
    const auto d1 = symbolic_delta1(f, chi);
    bool c_form = d1.coeff_z0.is_zero() && d1.coeff_z2.is_zero();
    if (c_form) {
      const auto c = symbolic_C(f);
      c_form = c.c1.is_zero() && c.c3.is_zero() && c.c5.is_zero();
    }
    CHECK(conditions == c_form);
    feasible += conditions ? 1 : 0;
  }
  // Both branches of the equivalence are exercised.
  CHECK(feasible > 0);
  CHECK(feasible < 50);
}

TEST_CASE("property: derived chi equals the family-derived prior") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 50; ++t) {
    const auto f = random_family(rng);
    const auto r = check_order_half(f);
    if (!r.derived_chi) continue;
    const auto prior = derived_simple_prior(f);
    CHECK(std::get<SimplePrior>(prior.form).chi == *r.derived_chi);
  }
}

TEST_CASE("elaborate matching within the subclasses singles out the usual EL") {
  // The residuals solve by hand: a3 forces tau3 (gamma3) = 1/3, then b4
  // forces tau4 (gamma4) = 1/4; for geef, b4 forces mu = 1/4. 1/3 is not on
  // the quarter grid, so it is added explicitly.
  std::vector<Rational> grid;
  for (long i = -8; i <= 8; ++i) grid.emplace_back(i, 4);
  grid.emplace_back(1, 3);

  int cr_hits = 0;
  int gel_hits = 0;
  int geef_hits = 0;
  for (const auto& a : grid) {
    for (const auto& b : grid) {
      const auto cr = family_cressie_read(a, b);
      const bool cr_ok = check_order_one_elaborate(cr).feasible;
      CHECK(cr_ok == (cr == family_el()));
      CHECK(cr_ok == (a == Rational(1, 3) && b == Rational(1, 4)));
      cr_hits += cr_ok;

      const auto gel = family_gel(a, b);
      const bool gel_ok = check_order_one_elaborate(gel).feasible;
      CHECK(gel_ok == (gel == family_el()));
      CHECK(gel_ok == (a == Rational(1, 3) && b == Rational(1, 4)));
      gel_hits += gel_ok;
    }
    const auto geef = family_geef(a);
    const bool geef_ok = check_order_one_elaborate(geef).feasible;
    CHECK(geef_ok == (geef == family_el()));
    geef_hits += geef_ok;
  }
  CHECK(cr_hits == 1);
  CHECK(gel_hits == 1);
  CHECK(geef_hits == 1);
}
