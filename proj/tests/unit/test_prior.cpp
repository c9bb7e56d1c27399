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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "elmatch/error.hpp"
#include "elmatch/moments.hpp"
#include "elmatch/posterior.hpp"
#include "elmatch/prior.hpp"
#include "elmatch/rng.hpp"
#include "elmatch/simulate.hpp"

using namespace elmatch;

namespace {
const Poly2 s = Poly2::s();
const Poly2 k = Poly2::k();
Rational q(long p, long d = 1) { return Rational(p, d); }

const Poly2& chi_of(const PriorSpec& p) {
  if (const auto* sp = std::get_if<SimplePrior>(&p.form)) return sp->chi;
  return std::get<ElaboratePrior>(p.form).chi;
}
} // namespace

TEST_CASE("log prior derivatives") {
  const SampleSummary any{10, 3.0, 2.5, 0.4, 4.0};
  const auto flat = log_prior_derivs(flat_prior(), any);
  CHECK(flat.psi1 == 0.0);
  CHECK(flat.psi11 == 0.0);

  const auto d29 = log_prior_derivs(skewness_adjusted_prior(), {10, 0.0, 1.0, 0.6, 3.0});
  CHECK(d29.psi1 == doctest::Approx(-0.3).epsilon(1e-15));
  CHECK(d29.psi11 == 0.0);

  const auto d34 = log_prior_derivs(kurtosis_adjusted_prior(), {10, 0.0, 1.0, 0.0, 3.0});
  CHECK(d34.psi1 == 0.0);
  CHECK(std::abs(d34.psi11) < 1e-15);

  const auto d34b = log_prior_derivs(kurtosis_adjusted_prior(), {10, 0.0, 4.0, 2.0, 9.0});
  CHECK(d34b.psi1 == doctest::Approx(-0.5));
  CHECK(d34b.psi11 == doctest::Approx(0.25));

  const auto custom = custom_prior([](const SampleSummary& x) { return x.g3; },
                                   [](const SampleSummary& x) { return -x.g4; });
  const auto dc = log_prior_derivs(custom, any);
  CHECK(dc.psi1 == 0.4);
  CHECK(dc.psi11 == -4.0);
}

TEST_CASE("prior derived from a family") {
  CHECK(chi_of(derived_simple_prior(family_el())) == q(-1, 2) * s);
  CHECK(chi_of(derived_simple_prior(family_el())) == chi_of(skewness_adjusted_prior()));
  CHECK(chi_of(derived_simple_prior(family_data_free_matching())).is_zero());
  for (long num = -8; num <= 8; ++num) {
    CHECK(chi_of(derived_simple_prior(family_geef(q(num, 4)))) ==
          chi_of(skewness_adjusted_prior()));
    CHECK(chi_of(derived_simple_prior(family_cressie_read(q(num, 3), q(1)))) == q(-1, 2) * s);
  }
}

TEST_CASE("preset priors") {
  const auto p29 = skewness_adjusted_prior();
  const Poly2& chi = chi_of(p29);
  CHECK(chi.eval(0.0) == 0.0);
  CHECK(chi.eval(2.0) == -1.0);

  const auto p34 = kurtosis_adjusted_prior();
  const auto& el = std::get<ElaboratePrior>(p34.form);
  CHECK(el.lambda == q(5, 4) * s * s - q(2, 3) * k + Poly2(2));
  CHECK(std::abs(el.lambda.eval(0, 3)) < 1e-15);
  CHECK(el.lambda.eval(2, 9) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(el.chi == chi);
}

TEST_CASE("prior density") {
  const SampleSummary sum{10, 0.0, 1.0, 2.0, 9.0};
  for (const auto& p : {flat_prior(), skewness_adjusted_prior(), kurtosis_adjusted_prior()}) {
    CHECK(prior_density(p, sum, sum.mean) == 1.0);
  }
  CHECK(prior_density(skewness_adjusted_prior(), sum, 1.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(prior_density(flat_prior(), sum, 1e6) == 1.0);
  CHECK(prior_density(kurtosis_adjusted_prior(), sum, 1.0) ==
        doctest::Approx(std::exp(-1.0 + 0.5)).epsilon(1e-14));
  try {
    prior_density(custom_prior([](const SampleSummary&) { return 0.0; },
                               [](const SampleSummary&) { return 0.0; }),
                  sum, 0.0);
    FAIL("expected NoDensity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoDensity);
  }
}

TEST_CASE("flat, simple(0) and elaborate(0,0) are interchangeable downstream") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  const auto fam = family_schennach();
  for (int t = 0; t < 50; ++t) {
    const double g3 = u(rng);
    const SampleSummary sum{15, u(rng), 1.0 + std::abs(u(rng)), g3, 1.5 + g3 * g3};
    const auto a = quantile(fam, flat_prior(), sum, 0.1);
    const auto b = quantile(fam, simple_prior(Poly2()), sum, 0.1);
    const auto c = quantile(fam, elaborate_prior(Poly2(), Poly2()), sum, 0.1);
    CHECK(a.theta2 == b.theta2);
    CHECK(a.theta2 == c.theta2);
  }
}

TEST_CASE("a theta-free constant in log pi changes nothing downstream") {
  // Anchoring the linear term at theta or at theta - mean differs by the
  // constant -mean * m2^{-1/2} chi(g3). A custom prior carrying the same two
  // derivatives stands in for the theta-anchored form.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2, 2);
  const auto p29 = skewness_adjusted_prior();
  const auto anchored = custom_prior(
      [](const SampleSummary& x) { return -0.5 * x.g3 / std::sqrt(x.m2); },
      [](const SampleSummary&) { return 0.0; });
  for (const auto& fam : {family_el(), family_data_free_matching()}) {
    for (int t = 0; t < 30; ++t) {
      const double g3 = u(rng);
      const SampleSummary sum{20, 10.0 * u(rng), 0.5 + std::abs(u(rng)), g3, 2.0 + g3 * g3};
      const auto a = quantile(fam, p29, sum, 0.05, QuantileOrder::Second);
      const auto b = quantile(fam, anchored, sum, 0.05, QuantileOrder::Second);
      CHECK(a.theta1 == b.theta1);
      CHECK(a.theta2 == b.theta2);
    }
  }
}

TEST_CASE("property: the kurtosis-adjusted prior flattens as n grows") {
  for (const auto& dist : builtin_distributions()) {
    CAPTURE(dist.name);
    double prev = INFINITY;
    for (std::size_t n : {50u, 200u, 800u}) {
      std::vector<double> logs;
      std::vector<double> x(n);
      for (std::uint64_t r = 0; r < 1000; ++r) {
        CounterRng rng(substream_key(777 + n, r));
        for (auto& v : x) v = sample(dist, rng.next_uniform());
        const auto sum = summarize(x);
        // theta two standard errors above the true mean. At a theta fixed in
        // absolute terms log pi tends to a nonzero population limit instead.
        const double theta = dist.moments.theta +
                             2.0 * std::sqrt(dist.moments.sigma2 / static_cast<double>(n));
        logs.push_back(
            std::abs(std::log(prior_density(kurtosis_adjusted_prior(), sum, theta))));
      }
      std::nth_element(logs.begin(), logs.begin() + 500, logs.end());
      const double median = logs[500];
      CHECK(median < prev);
      prev = median;
    }
  }
}

TEST_CASE("prior spec strings and JSON") {
  const auto el = family_el();
  CHECK(parse_prior_spec("flat").is_flat());
  CHECK(chi_of(parse_prior_spec("eq26", &el)) == q(-1, 2) * s);
  CHECK_THROWS_AS(parse_prior_spec("eq26"), Error);
  CHECK(chi_of(parse_prior_spec("eq29")) == q(-1, 2) * s);
  CHECK(std::holds_alternative<ElaboratePrior>(parse_prior_spec("eq34").form));
  CHECK(chi_of(parse_prior_spec("simple:chi=-1/2*s")) == q(-1, 2) * s);
  const auto e = parse_prior_spec("elaborate:chi=0,lambda=5/4*s^2 - 2/3*k + 2");
  CHECK(std::get<ElaboratePrior>(e.form).lambda ==
        std::get<ElaboratePrior>(kurtosis_adjusted_prior().form).lambda);
  CHECK_THROWS_AS(parse_prior_spec("simple:chi=k"), Error);
  CHECK_THROWS_AS(parse_prior_spec("simple:chi=s+"), ParseError);
  CHECK_THROWS_AS(parse_prior_spec("nope"), ParseError);

  for (const auto& p : {flat_prior(), skewness_adjusted_prior(), kurtosis_adjusted_prior()}) {
    const auto back = PriorSpec::from_json(p.to_json());
    CHECK(back.name == p.name);
    CHECK(back.form.index() == p.form.index());
    CHECK(back.to_json() == p.to_json());
  }
  CHECK_THROWS_AS(custom_prior([](const SampleSummary&) { return 0.0; },
                               [](const SampleSummary&) { return 0.0; })
                      .to_json(),
                  Error);
}
