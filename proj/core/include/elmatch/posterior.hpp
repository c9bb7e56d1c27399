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

#ifndef ELMATCH_POSTERIOR_HPP
#define ELMATCH_POSTERIOR_HPP

#include "elmatch/likelihood.hpp"
#include "elmatch/moments.hpp"
#include "elmatch/normal.hpp"
#include "elmatch/prior.hpp"

namespace elmatch {

/**
 * Coefficients of the posterior density of y:
 *
 *   phi(y) [1 + n^{-1/2}(r1 y + r3 y^3)
 *             + n^{-1}(r2 (y^2-1) + r4 (y^4-3) + r6 (y^6-15))]
 *
 * r3 and r6 come from the likelihood alone.
 */
struct PosteriorCoeffs {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  double r4 = 0.0;
  double r6 = 0.0;
};

PosteriorCoeffs posterior_coeffs(const LikelihoodFamily& family,
                                 const PriorSpec& prior,
                                 const SampleSummary& summary);

/// Cornish-Fisher style corrections to the normal quantile z.
struct UCoeffs {
  double u1 = 0.0;
  double u2 = 0.0;
};

UCoeffs u_coeffs(const PosteriorCoeffs& c, double z);

enum class QuantileOrder { First, Second };

struct QuantileResult {
  double alpha = 0.0;
  double z = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;
  /// mean + sqrt(m2/n) (z + u1/sqrt(n)).
  double theta1 = 0.0;
  /// theta1 + sqrt(m2/n) u2 / n.
  double theta2 = 0.0;
  QuantileOrder order = QuantileOrder::First;

  double primary() const { return order == QuantileOrder::First ? theta1 : theta2; }
};

/// Approximate (1 - alpha) posterior quantile of theta. Both orders are
/// always filled in; `order` only selects `primary()`.
QuantileResult quantile(const LikelihoodFamily& family, const PriorSpec& prior,
                        const SampleSummary& summary, double alpha,
                        QuantileOrder order = QuantileOrder::First);

/// Same, from precomputed coefficients.
QuantileResult quantile(const PosteriorCoeffs& coeffs, const SampleSummary& summary,
                        double alpha, QuantileOrder order = QuantileOrder::First);

/// Posterior density of the pivot y. Returned as-is even where negative.
double posterior_density(const PosteriorCoeffs& coeffs, std::size_t n, double y);
double posterior_density(const LikelihoodFamily& family, const PriorSpec& prior,
                         const SampleSummary& summary, double y);

} // namespace elmatch

#endif
