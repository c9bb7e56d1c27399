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

#include "elmatch/edgeworth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elmatch/error.hpp"
#include "elmatch/normal.hpp"

namespace elmatch {

namespace {

/// chi of a prior that the population-side formulas can handle.
Poly2 supported_chi(const PriorSpec& prior) {
  if (std::holds_alternative<FlatPrior>(prior.form)) return Poly2();
  if (const auto* p = std::get_if<SimplePrior>(&prior.form)) return p->chi;
  if (const auto* p = std::get_if<ElaboratePrior>(&prior.form)) {
    if (p->lambda.is_zero()) return p->chi;
  }
  throw Error(ErrorKind::UnsupportedPriorClass,
              "prior '" + prior.name +
                  "': coverage expansions are available for flat and simple "
                  "priors only; assess elaborate or custom priors by simulation");
}

} // namespace

PriorPopulationDerivs population_prior_derivs(const PriorSpec& prior,
                                              const PopulationMoments& pop) {
  const Poly2 chi = supported_chi(prior);
  const double sigma = std::sqrt(pop.sigma2);
  const double chi_b = chi.eval(pop.beta3);
  PriorPopulationDerivs d;
  d.psi1_0 = chi_b / sigma;
  d.psi11_0 = 0.0;
  d.psi12_0 = -0.5 * chi_b / (sigma * pop.sigma2);
  d.psi13_0 = chi.deriv_s().eval(pop.beta3) / sigma;
  return d;
}

ApproxCumulants cumulants(const LikelihoodFamily& family, const PriorSpec& prior,
                          const PopulationMoments& pop, double z) {
  const auto d = population_prior_derivs(prior, pop);
  const double b3 = pop.beta3;
  const double b4 = pop.beta4;
  const double sigma = std::sqrt(pop.sigma2);
  const double a1p = family.a1.deriv_s().eval(b3);
  const double a3p = family.a3.deriv_s().eval(b3);

  ApproxCumulants k;
  k.k1 = 0.5 * b3;
  k.k3 = 2.0 * b3;
  k.k4 = 12.0 + 12.0 * b3 * b3 - 2.0 * b4;
  k.k2 = 3.0 + 1.75 * b3 * b3 +
         2.0 * (a1p + a3p * (z * z + 2.0) + sigma * d.psi13_0) *
             (b4 - 3.0 - 1.5 * b3 * b3) +
         2.0 * pop.sigma2 * d.psi11_0 +
         2.0 * b3 * sigma * (0.5 * d.psi1_0 + pop.sigma2 * d.psi12_0);
  return k;
}

WTerms w_terms(const LikelihoodFamily& family, const PriorSpec& prior,
               const PopulationMoments& pop, double a1s, double a2s, double a3s) {
  const auto d = population_prior_derivs(prior, pop);
  const double b3 = pop.beta3;
  const double sigma = std::sqrt(pop.sigma2);
  const double skew_fluct = a3s - 3.0 * a1s - 1.5 * b3 * a2s;
  WTerms w;
  w.w1 = pop.sigma2 * d.psi11_0 * a1s +
         sigma * (0.5 * d.psi1_0 + pop.sigma2 * d.psi12_0) * a2s +
         (family.a1.deriv_s().eval(b3) + sigma * d.psi13_0) * skew_fluct;
  w.w3 = family.a3.deriv_s().eval(b3) * skew_fluct;
  return w;
}

PopulationTerms population_terms(const LikelihoodFamily& family, const PriorSpec& prior,
                                 const PopulationMoments& pop, double z) {
  const auto d = population_prior_derivs(prior, pop);
  const double b3 = pop.beta3;
  const double b4 = pop.beta4;
  const double sigma = std::sqrt(pop.sigma2);
  const double a1 = family.a1.eval(b3);
  const double a3 = family.a3.eval(b3);

  PopulationTerms t;
  t.r10 = a1 + sigma * d.psi1_0;
  t.r20 = family.b2.eval(b3, b4) + sigma * a1 * d.psi1_0 +
          0.5 * pop.sigma2 * (d.psi11_0 + d.psi1_0 * d.psi1_0);
  t.r30 = a3;
  t.r40 = family.b4.eval(b3, b4) + sigma * a3 * d.psi1_0;
  t.r60 = family.b6.eval(b3, b4);

  const double z2 = z * z;
  const double z3 = z2 * z;
  const double z5 = z3 * z2;
  t.u10 = t.r10 + t.r30 * (z2 + 2.0);
  t.u20 = 2.0 * t.u10 * z * t.r30 - 0.5 * t.u10 * t.u10 * z + t.r20 * z +
          t.r40 * (z3 + 3.0 * z) + t.r60 * (z5 + 5.0 * z3 + 15.0 * z);
  return t;
}

namespace {

DeltaTerms deltas(const PopulationTerms& t, const ApproxCumulants& k, double z) {
  const double z2 = z * z;
  const double z3 = z2 * z;
  const double z5 = z3 * z2;
  DeltaTerms d;
  d.delta1 = t.u10 - k.k1 - k.k3 * (z2 - 1.0) / 6.0;
  d.delta2 = t.u20 - 0.5 * t.u10 * t.u10 * z +
             z * t.u10 * (k.k1 + k.k3 * (z2 - 3.0) / 6.0) -
             0.5 * (k.k2 + k.k1 * k.k1) * z -
             (k.k4 / 24.0 + k.k1 * k.k3 / 6.0) * (z3 - 3.0 * z) -
             k.k3 * k.k3 / 72.0 * (z5 - 10.0 * z3 + 15.0 * z);
  return d;
}

} // namespace

DeltaTerms delta_terms(const LikelihoodFamily& family, const PriorSpec& prior,
                       const PopulationMoments& pop, double z) {
  return deltas(population_terms(family, prior, pop, z),
                cumulants(family, prior, pop, z), z);
}

EdgeworthReport predict_coverage(const LikelihoodFamily& family, const PriorSpec& prior,
                                 const PopulationMoments& pop, std::size_t n,
                                 double alpha, MatchOrder order) {
  if (n < kMinSampleSize) {
    throw Error(ErrorKind::OutOfRange, "n must be at least 4, got " + std::to_string(n));
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::OutOfRange,
                "alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
  if (!(pop.sigma2 > 0.0)) {
    throw Error(ErrorKind::OutOfRange, "population variance must be positive");
  }

  EdgeworthReport rep;
  rep.alpha = alpha;
  rep.n = n;
  rep.order = order;
  rep.z = inverse_normal_cdf(1.0 - alpha);
  rep.terms = population_terms(family, prior, pop, rep.z);
  rep.k = cumulants(family, prior, pop, rep.z);
  const auto d = deltas(rep.terms, rep.k, rep.z);
  rep.delta1 = d.delta1;
  rep.delta2 = d.delta2;

  const double nn = static_cast<double>(n);
  double correction = rep.delta1 / std::sqrt(nn);
  if (order == MatchOrder::One) correction += rep.delta2 / nn;
  rep.raw_coverage = 1.0 - alpha + correction * normal_pdf(rep.z);
  rep.predicted_coverage = std::clamp(rep.raw_coverage, 0.0, 1.0);
  rep.clamped = rep.predicted_coverage != rep.raw_coverage;
  return rep;
}

} // namespace elmatch
