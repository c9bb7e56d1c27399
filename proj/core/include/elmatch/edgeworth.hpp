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

#ifndef ELMATCH_EDGEWORTH_HPP
#define ELMATCH_EDGEWORTH_HPP

#include <cstddef>

#include "elmatch/likelihood.hpp"
#include "elmatch/matching.hpp"
#include "elmatch/moments.hpp"
#include "elmatch/prior.hpp"

namespace elmatch {

/**
 * Derivatives of psi(t1, t2, t3) = t1 t2^{-1/2} chi(t3) at the population
 * point (theta, sigma^2, beta3). Index 1 is theta, 2 is the variance slot,
 * 3 is the skewness slot.
 */
struct PriorPopulationDerivs {
  double psi1_0 = 0.0;
  double psi11_0 = 0.0;
  double psi12_0 = 0.0;
  double psi13_0 = 0.0;
};

/// Flat and simple priors only (an elaborate prior with lambda = 0 counts as
/// simple). Anything else throws UnsupportedPriorClass.
PriorPopulationDerivs population_prior_derivs(const PriorSpec& prior,
                                              const PopulationMoments& pop);

struct ApproxCumulants {
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  double k4 = 0.0;
};

/// Leading cumulant corrections of the W-adjusted pivot at quantile level z.
ApproxCumulants cumulants(const LikelihoodFamily& family, const PriorSpec& prior,
                          const PopulationMoments& pop, double z);

struct WTerms {
  double w1 = 0.0;
  double w3 = 0.0;
};

/// Linear stochastic corrections to R1 and R3, given the standardized
/// centred sums A1, A2, A3.
WTerms w_terms(const LikelihoodFamily& family, const PriorSpec& prior,
               const PopulationMoments& pop, double a1s, double a2s, double a3s);

/// Population versions of the posterior coefficients and u-terms.
struct PopulationTerms {
  double r10 = 0.0;
  double r20 = 0.0;
  double r30 = 0.0;
  double r40 = 0.0;
  double r60 = 0.0;
  double u10 = 0.0;
  double u20 = 0.0;
};

PopulationTerms population_terms(const LikelihoodFamily& family, const PriorSpec& prior,
                                 const PopulationMoments& pop, double z);

struct DeltaTerms {
  double delta1 = 0.0;
  double delta2 = 0.0;
};

DeltaTerms delta_terms(const LikelihoodFamily& family, const PriorSpec& prior,
                       const PopulationMoments& pop, double z);

struct EdgeworthReport {
  double alpha = 0.0;
  double z = 0.0;
  std::size_t n = 0;
  MatchOrder order = MatchOrder::One;
  PopulationTerms terms;
  ApproxCumulants k;
  double delta1 = 0.0;
  double delta2 = 0.0;
  /// 1 - alpha + (delta1/sqrt(n) + delta2/n) phi(z); delta2 dropped for Half.
  double raw_coverage = 0.0;
  /// raw_coverage clamped into [0, 1].
  double predicted_coverage = 0.0;
  bool clamped = false;
};

/// Predicted frequentist coverage of (-inf, theta2] (order One) or its
/// n^{-1/2} truncation (order Half).
EdgeworthReport predict_coverage(const LikelihoodFamily& family, const PriorSpec& prior,
                                 const PopulationMoments& pop, std::size_t n,
                                 double alpha, MatchOrder order);

} // namespace elmatch

#endif
