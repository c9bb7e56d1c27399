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

#ifndef ELMATCH_SIMULATE_HPP
#define ELMATCH_SIMULATE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "elmatch/likelihood.hpp"
#include "elmatch/moments.hpp"
#include "elmatch/posterior.hpp"
#include "elmatch/prior.hpp"

namespace elmatch {

/// Inverse-transform draw. Throws OutOfRange unless 0 < u < 1.
double sample(const DistributionSpec& dist, double u);

struct SimConfig {
  Distribution dist = Distribution::Normal;
  std::size_t n = 8;
  double alpha = 0.05;
  std::size_t reps = 10000;
  LikelihoodFamily family = family_schennach();
  PriorSpec prior = skewness_adjusted_prior();
  QuantileOrder order = QuantileOrder::First;
  std::uint64_t master_seed = 42;
  /// 0 means one worker per hardware thread. Never affects results.
  unsigned workers = 1;

  /// Throws InvalidArgument / OutOfRange on bad fields.
  void validate() const;
};

struct CoverageReport {
  SimConfig config;
  std::size_t hits = 0;
  /// Replications that entered the denominator (reps - degenerate_skipped).
  std::size_t reps_used = 0;
  std::size_t degenerate_skipped = 0;
  double coverage = 0.0;
  double mc_stderr = 0.0;
  std::string generator;
};

/**
 * Frequentist coverage of (-inf, quantile]. Replication r draws from the
 * substream keyed by (master_seed, r), so hits do not depend on the worker
 * count or scheduling. Degenerate samples are skipped and counted.
 */
CoverageReport run_coverage(const SimConfig& config);

/// Reference coverage grid for the geef family with the skewness-adjusted
/// prior and first-order quantiles (10000 replications per cell).
struct ReferenceCell {
  Distribution dist;
  double level; // 1 - alpha
  std::size_t n;
  double coverage;
};

const std::vector<ReferenceCell>& reference_coverage_table();
inline constexpr std::array<double, 4> kReferenceLevels = {0.95, 0.90, 0.10, 0.05};
inline constexpr std::array<std::size_t, 4> kReferenceSizes = {8, 12, 16, 20};

struct TableCell {
  ReferenceCell reference;
  CoverageReport report;
  double abs_diff = 0.0;
};

/// Recomputes every cell of the reference grid.
std::vector<TableCell> reproduce_coverage_table(std::uint64_t master_seed,
                                                std::size_t reps = 10000,
                                                unsigned workers = 1,
                                                const LikelihoodFamily& family =
                                                    family_schennach());

struct CumulantConfig {
  Distribution dist = Distribution::Normal;
  std::size_t n = 400;
  std::size_t reps = 1000000;
  std::uint64_t master_seed = 42;
  LikelihoodFamily family = family_el();
  PriorSpec prior = skewness_adjusted_prior();
  /// Sets z = inverse_normal_cdf(1 - alpha) in the W-correction and in k2.
  double alpha = 0.05;
  unsigned workers = 1;

  void validate() const;
};

struct CumulantEstimate {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double predicted = 0.0;

  double z_score() const { return (estimate - predicted) / std_error; }
};

/**
 * Monte Carlo check of the approximate cumulants of the W-corrected pivot
 * y - (W1 + W3 (z^2 + 2)) / n at the true mean. Reports
 * sqrt(n) mean, n (var - 1), sqrt(n) k3 and n k4 with delta-method
 * standard errors beside their predicted values.
 */
struct CumulantReport {
  CumulantConfig config;
  double z = 0.0;
  std::array<CumulantEstimate, 4> k;
  std::size_t degenerate_skipped = 0;
  std::string generator;
};

CumulantReport validate_cumulants(const CumulantConfig& config);

} // namespace elmatch

#endif
