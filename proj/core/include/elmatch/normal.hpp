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

#ifndef ELMATCH_NORMAL_HPP
#define ELMATCH_NORMAL_HPP

namespace elmatch {

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;

/// Standard normal density.
double normal_pdf(double x) noexcept;

/// Standard normal distribution function, via erfc for tail accuracy.
double normal_cdf(double x) noexcept;

/**
 * Standard normal quantile. Rational approximation followed by one Halley
 * step against erfc, which brings |normal_cdf(z) - p| to rounding level.
 * Throws Error(OutOfRange) unless 0 < p < 1.
 */
double inverse_normal_cdf(double p);

} // namespace elmatch

#endif
