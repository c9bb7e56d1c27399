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

#include "elmatch/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "elmatch/edgeworth.hpp"
#include "elmatch/error.hpp"
#include "elmatch/rng.hpp"

namespace elmatch {

namespace {

constexpr std::size_t kBlock = 256;

unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/**
 * Runs body(block_index, begin, end) over fixed-size blocks of [0, count).
 * Blocks are handed out dynamically; the block partition itself never
 * depends on the worker count.
 */
template <class Body>
void for_each_block(std::size_t count, unsigned workers, Body&& body) {
  const std::size_t blocks = (count + kBlock - 1) / kBlock;
  const unsigned nthreads =
      static_cast<unsigned>(std::min<std::size_t>(resolve_workers(workers), blocks));
  if (nthreads <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) {
      body(b, b * kBlock, std::min(count, (b + 1) * kBlock));
    }
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::size_t b = next++; b < blocks; b = next++) {
        body(b, b * kBlock, std::min(count, (b + 1) * kBlock));
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = blocks;
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

void draw_sample(const DistributionSpec& dist, std::uint64_t master_seed,
                 std::size_t rep, std::vector<double>& out) {
  CounterRng rng(substream_key(master_seed, rep));
  for (double& x : out) x = dist.inverse_cdf(rng.next_uniform());
}

} // namespace

double sample(const DistributionSpec& dist, double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw Error(ErrorKind::OutOfRange,
                "uniform draw must lie in (0, 1), got " + std::to_string(u));
  }
  return dist.inverse_cdf(u);
}

void SimConfig::validate() const {
  if (n < kMinSampleSize) {
    throw Error(ErrorKind::OutOfRange, "n must be at least 4, got " + std::to_string(n));
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::OutOfRange,
                "alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
  if (reps < 1) throw Error(ErrorKind::OutOfRange, "reps must be at least 1");
  if (static_cast<int>(dist) < 0 || static_cast<int>(dist) > 4) {
    throw Error(ErrorKind::InvalidArgument, "unknown distribution");
  }
}

CoverageReport run_coverage(const SimConfig& config) {
  config.validate();
  const DistributionSpec& dist = distribution(config.dist);
  const double theta = dist.moments.theta;

  const std::size_t blocks = (config.reps + kBlock - 1) / kBlock;
  std::vector<std::size_t> block_hits(blocks, 0);
  std::vector<std::size_t> block_skipped(blocks, 0);

  for_each_block(config.reps, config.workers,
                 [&](std::size_t b, std::size_t begin, std::size_t end) {
                   std::vector<double> x(config.n);
                   std::size_t hits = 0;
                   std::size_t skipped = 0;
                   for (std::size_t r = begin; r < end; ++r) {
                     draw_sample(dist, config.master_seed, r, x);
                     SampleSummary s;
                     try {
                       s = summarize(x);
                     } catch (const Error& e) {
                       if (e.kind() != ErrorKind::DegenerateSample) throw;
                       ++skipped;
                       continue;
                     }
                     const auto q = quantile(config.family, config.prior, s,
                                             config.alpha, config.order);
                     if (theta <= q.primary()) ++hits;
                   }
                   block_hits[b] = hits;
                   block_skipped[b] = skipped;
                 });

  CoverageReport rep;
  rep.config = config;
  rep.generator = generator_id();
  for (std::size_t b = 0; b < blocks; ++b) {
    rep.hits += block_hits[b];
    rep.degenerate_skipped += block_skipped[b];
  }
  rep.reps_used = config.reps - rep.degenerate_skipped;
  if (rep.reps_used > 0) {
    const double used = static_cast<double>(rep.reps_used);
    rep.coverage = static_cast<double>(rep.hits) / used;
    rep.mc_stderr = std::sqrt(rep.coverage * (1.0 - rep.coverage) / used);
  }
  return rep;
}

const std::vector<ReferenceCell>& reference_coverage_table() {
  using D = Distribution;
  // Rows: distribution; per level, coverage at n = 8, 12, 16, 20.
  struct Row {
    D dist;
    double level;
    std::array<double, 4> cov;
  };
  static const std::vector<ReferenceCell> cells = [] {
    const Row rows[] = {
        {D::Normal, 0.95, {0.912, 0.928, 0.933, 0.938}},
        {D::Normal, 0.90, {0.863, 0.877, 0.884, 0.886}},
        {D::Normal, 0.10, {0.138, 0.123, 0.119, 0.114}},
        {D::Normal, 0.05, {0.088, 0.074, 0.069, 0.064}},
        {D::Uniform, 0.95, {0.934, 0.944, 0.946, 0.949}},
        {D::Uniform, 0.90, {0.887, 0.896, 0.897, 0.898}},
        {D::Uniform, 0.10, {0.112, 0.106, 0.102, 0.102}},
        {D::Uniform, 0.05, {0.067, 0.056, 0.051, 0.051}},
        {D::Beta12, 0.95, {0.910, 0.928, 0.936, 0.938}},
        {D::Beta12, 0.90, {0.861, 0.880, 0.888, 0.890}},
        {D::Beta12, 0.10, {0.110, 0.108, 0.106, 0.104}},
        {D::Beta12, 0.05, {0.061, 0.055, 0.055, 0.054}},
        {D::Exponential, 0.95, {0.850, 0.878, 0.898, 0.906}},
        {D::Exponential, 0.90, {0.798, 0.827, 0.845, 0.854}},
        {D::Exponential, 0.10, {0.111, 0.113, 0.111, 0.111}},
        {D::Exponential, 0.05, {0.063, 0.064, 0.063, 0.061}},
        {D::Rayleigh, 0.95, {0.900, 0.918, 0.928, 0.931}},
        {D::Rayleigh, 0.90, {0.849, 0.868, 0.878, 0.880}},
        {D::Rayleigh, 0.10, {0.119, 0.113, 0.111, 0.108}},
        {D::Rayleigh, 0.05, {0.070, 0.064, 0.060, 0.056}},
    };
    std::vector<ReferenceCell> out;
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < kReferenceSizes.size(); ++i) {
        out.push_back({row.dist, row.level, kReferenceSizes[i], row.cov[i]});
      }
    }
    return out;
  }();
  return cells;
}

std::vector<TableCell> reproduce_coverage_table(std::uint64_t master_seed,
                                                std::size_t reps, unsigned workers,
                                                const LikelihoodFamily& family) {
  std::vector<TableCell> out;
  for (const auto& ref : reference_coverage_table()) {
    SimConfig cfg;
    cfg.dist = ref.dist;
    cfg.n = ref.n;
    cfg.alpha = 1.0 - ref.level;
    cfg.reps = reps;
    cfg.family = family;
    cfg.prior = skewness_adjusted_prior();
    cfg.order = QuantileOrder::First;
    cfg.master_seed = master_seed;
    cfg.workers = workers;
    TableCell cell{ref, run_coverage(cfg), 0.0};
    cell.abs_diff = std::abs(cell.report.coverage - ref.coverage);
    out.push_back(std::move(cell));
  }
  return out;
}

void CumulantConfig::validate() const {
  if (n < 20) {
    throw Error(ErrorKind::OutOfRange,
                "cumulant validation needs n >= 20, got " + std::to_string(n));
  }
  if (reps < 2) throw Error(ErrorKind::OutOfRange, "reps must be at least 2");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::OutOfRange, "alpha must lie in (0, 1)");
  }
}

CumulantReport validate_cumulants(const CumulantConfig& config) {
  config.validate();
  const DistributionSpec& dist = distribution(config.dist);
  const PopulationMoments& pop = dist.moments;
  const double z = inverse_normal_cdf(1.0 - config.alpha);
  const double zfac = z * z + 2.0;
  const double sigma = std::sqrt(pop.sigma2);
  const double nn = static_cast<double>(config.n);
  const double root_n = std::sqrt(nn);
  // Rejects unsupported priors before the simulation starts.
  const ApproxCumulants predicted = cumulants(config.family, config.prior, pop, z);
  // W1 and W3 are linear in (A1, A2, A3); evaluate the basis once.
  const WTerms wa1 = w_terms(config.family, config.prior, pop, 1.0, 0.0, 0.0);
  const WTerms wa2 = w_terms(config.family, config.prior, pop, 0.0, 1.0, 0.0);
  const WTerms wa3 = w_terms(config.family, config.prior, pop, 0.0, 0.0, 1.0);
  const double c_a1 = (wa1.w1 + wa1.w3 * zfac) / nn;
  const double c_a2 = (wa2.w1 + wa2.w3 * zfac) / nn;
  const double c_a3 = (wa3.w1 + wa3.w3 * zfac) / nn;

  std::vector<double> pivots(config.reps, 0.0);
  std::vector<unsigned char> valid(config.reps, 1);

  for_each_block(config.reps, config.workers,
                 [&](std::size_t, std::size_t begin, std::size_t end) {
                   std::vector<double> x(config.n);
                   for (std::size_t r = begin; r < end; ++r) {
                     draw_sample(dist, config.master_seed, r, x);
                     SampleSummary s;
                     try {
                       s = summarize(x);
                     } catch (const Error& e) {
                       if (e.kind() != ErrorKind::DegenerateSample) throw;
                       valid[r] = 0;
                       continue;
                     }
                     double sum1 = 0.0;
                     double sum2 = 0.0;
                     double sum3 = 0.0;
                     for (double xi : x) {
                       const double zi = (xi - pop.theta) / sigma;
                       const double zi2 = zi * zi;
                       sum1 += zi;
                       sum2 += zi2 - 1.0;
                       sum3 += zi2 * zi - pop.beta3;
                     }
                     const double correction =
                         (c_a1 * sum1 + c_a2 * sum2 + c_a3 * sum3) / root_n;
                     pivots[r] = pivot_y(s, pop.theta) - correction;
                   }
                 });

  // Two-pass central moments in index order, so the result is
  // independent of scheduling.
  std::size_t used = 0;
  double sum = 0.0;
  for (std::size_t r = 0; r < config.reps; ++r) {
    if (valid[r]) {
      sum += pivots[r];
      ++used;
    }
  }
  if (used < 2) {
    throw Error(ErrorKind::DegenerateSample, "too few valid replications");
  }
  const double N = static_cast<double>(used);
  const double mean = sum / N;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
  for (std::size_t r = 0; r < config.reps; ++r) {
    if (!valid[r]) continue;
    const double d = pivots[r] - mean;
    const double d2 = d * d;
    c2 += d2;
    c3 += d2 * d;
    c4 += d2 * d2;
  }
  const double mu2 = c2 / N;
  const double mu3 = c3 / N;
  const double mu4 = c4 / N;

  // Influence functions of mean, variance, third and fourth cumulants.
  double v1 = 0.0;
  double v2 = 0.0;
  double v3 = 0.0;
  double v4 = 0.0;
  for (std::size_t r = 0; r < config.reps; ++r) {
    if (!valid[r]) continue;
    const double d = pivots[r] - mean;
    const double d2 = d * d;
    const double if2 = d2 - mu2;
    const double if3 = d2 * d - mu3 - 3.0 * mu2 * d;
    const double if4 = d2 * d2 - mu4 - 4.0 * mu3 * d - 6.0 * mu2 * if2;
    v1 += d2;
    v2 += if2 * if2;
    v3 += if3 * if3;
    v4 += if4 * if4;
  }
  auto se = [N](double v, double scale) { return scale * std::sqrt(v / N / N); };

  CumulantReport rep;
  rep.config = config;
  rep.z = z;
  rep.generator = generator_id();
  rep.degenerate_skipped = config.reps - used;
  rep.k[0] = {"k1", root_n * mean, se(v1, root_n), predicted.k1};
  rep.k[1] = {"k2", nn * (mu2 - 1.0), se(v2, nn), predicted.k2};
  rep.k[2] = {"k3", root_n * mu3, se(v3, root_n), predicted.k3};
  rep.k[3] = {"k4", nn * (mu4 - 3.0 * mu2 * mu2), se(v4, nn), predicted.k4};
  return rep;
}

} // namespace elmatch
