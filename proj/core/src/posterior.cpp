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

#include "elmatch/posterior.hpp"

#include <cmath>
#include <string>

#include "elmatch/error.hpp"

namespace elmatch {

PosteriorCoeffs posterior_coeffs(const LikelihoodFamily& family,
                                 const PriorSpec& prior,
                                 const SampleSummary& summary) {
  const auto [psi1, psi11] = log_prior_derivs(prior, summary);
  const double g3 = summary.g3;
  const double g4 = summary.g4;
  const double sd = std::sqrt(summary.m2);
  const double a1 = family.a1.eval(g3);
  const double a3 = family.a3.eval(g3);

  PosteriorCoeffs c;
  c.r1 = a1 + sd * psi1;
  c.r2 = family.b2.eval(g3, g4) + sd * a1 * psi1 +
         0.5 * summary.m2 * (psi11 + psi1 * psi1);
  c.r3 = a3;
  c.r4 = family.b4.eval(g3, g4) + sd * a3 * psi1;
  c.r6 = family.b6.eval(g3, g4);
  return c;
}

UCoeffs u_coeffs(const PosteriorCoeffs& c, double z) {
  const double z2 = z * z;
  const double z3 = z2 * z;
  const double z5 = z3 * z2;
  const double u1 = c.r1 + c.r3 * (z2 + 2.0);
  const double u2 = 2.0 * u1 * z * c.r3 - 0.5 * u1 * u1 * z + c.r2 * z +
                    c.r4 * (z3 + 3.0 * z) + c.r6 * (z5 + 5.0 * z3 + 15.0 * z);
  return {u1, u2};
}

QuantileResult quantile(const PosteriorCoeffs& coeffs, const SampleSummary& summary,
                        double alpha, QuantileOrder order) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::OutOfRange,
                "alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
  QuantileResult q;
  q.alpha = alpha;
  q.order = order;
  q.z = inverse_normal_cdf(1.0 - alpha);
  const auto [u1, u2] = u_coeffs(coeffs, q.z);
  q.u1 = u1;
  q.u2 = u2;
  const double n = static_cast<double>(summary.n);
  const double scale = std::sqrt(summary.m2 / n);
  q.theta1 = summary.mean + scale * (q.z + u1 / std::sqrt(n));
  q.theta2 = q.theta1 + scale * u2 / n;
  return q;
}

QuantileResult quantile(const LikelihoodFamily& family, const PriorSpec& prior,
                        const SampleSummary& summary, double alpha,
                        QuantileOrder order) {
  return quantile(posterior_coeffs(family, prior, summary), summary, alpha, order);
}

double posterior_density(const PosteriorCoeffs& c, std::size_t n, double y) {
  const double nn = static_cast<double>(n);
  const double y2 = y * y;
  const double y4 = y2 * y2;
  const double odd = c.r1 * y + c.r3 * y2 * y;
  const double even = c.r2 * (y2 - 1.0) + c.r4 * (y4 - 3.0) + c.r6 * (y4 * y2 - 15.0);
  return normal_pdf(y) * (1.0 + odd / std::sqrt(nn) + even / nn);
}

double posterior_density(const LikelihoodFamily& family, const PriorSpec& prior,
                         const SampleSummary& summary, double y) {
  return posterior_density(posterior_coeffs(family, prior, summary), summary.n, y);
}

} // namespace elmatch
