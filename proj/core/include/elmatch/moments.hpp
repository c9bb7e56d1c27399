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

#ifndef ELMATCH_MOMENTS_HPP
#define ELMATCH_MOMENTS_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace elmatch {

inline constexpr std::size_t kMinSampleSize = 4;

/**
 * Sample summary used by every inference path. Central moments use the
 * divisor n:
 *   m_s = (1/n) sum (x_i - mean)^s,  g3 = m3 / m2^{3/2},  g4 = m4 / m2^2.
 */
struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 1.0;
  double g3 = 0.0;
  double g4 = 3.0;
};

/// Throws TooFewPoints for n < 4 and DegenerateSample when m2 is exactly 0.
SampleSummary summarize(std::span<const double> data);

/// Studentized pivot y(theta) = sqrt(n / m2) * (theta - mean).
double pivot_y(const SampleSummary& summary, double theta);

/// Population mean, variance, standardized third and fourth moments.
struct PopulationMoments {
  double theta = 0.0;
  double sigma2 = 1.0;
  double beta3 = 0.0;
  double beta4 = 3.0;
};

enum class Distribution { Normal, Uniform, Beta12, Exponential, Rayleigh };

/// One of the five built-in populations with closed-form moments.
struct DistributionSpec {
  Distribution kind;
  std::string_view name;
  PopulationMoments moments;

  /// Quantile function; strictly increasing on (0, 1). u is not range-checked.
  double inverse_cdf(double u) const;
  /// Density, used only for numerical cross-checks.
  double density(double x) const;
};

const DistributionSpec& distribution(Distribution kind);
std::span<const DistributionSpec> builtin_distributions();

/// Accepts the canonical names and the aliases `exp`, `beta`, `beta12`.
const DistributionSpec& distribution_by_name(std::string_view name);

PopulationMoments dist_moments(const DistributionSpec& dist);

/**
 * Reads one number per line. Blank lines are skipped and the first
 * non-blank line may be a header; any other non-numeric line is a
 * ParseError that names the line.
 */
std::vector<double> parse_data(std::istream& in);
std::vector<double> read_data_file(const std::string& path);

} // namespace elmatch

#endif
