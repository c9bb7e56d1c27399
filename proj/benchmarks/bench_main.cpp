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

#include <benchmark/benchmark.h>

#include "elmatch/edgeworth.hpp"
#include "elmatch/likelihood.hpp"
#include "elmatch/matching.hpp"
#include "elmatch/normal.hpp"
#include "elmatch/posterior.hpp"
#include "elmatch/prior.hpp"
#include "elmatch/simulate.hpp"

using namespace elmatch;

namespace {

void BM_PolyMultiply(benchmark::State& state) {
  const Poly2 a = Poly2::parse("5/4*s^2 - 2/3*k + 2");
  const Poly2 b = Poly2::parse("1/8*k - 3/8*s^2 - 3/8");
  for (auto _ : state) {
    benchmark::DoNotOptimize(a * b + a * a);
  }
}
BENCHMARK(BM_PolyMultiply);

void BM_PolyParse(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(Poly2::parse("-1/8*k + 1/8*s^2 + 1/8"));
  }
}
BENCHMARK(BM_PolyParse);

void BM_MatchCheck(benchmark::State& state) {
  const auto f = family_geef(Rational(1, 8));
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_order_one_elaborate(f));
  }
}
BENCHMARK(BM_MatchCheck);

void BM_InverseNormal(benchmark::State& state) {
  double p = 0.0005;
  for (auto _ : state) {
    benchmark::DoNotOptimize(inverse_normal_cdf(p));
    p = p > 0.999 ? 0.0005 : p + 0.0007;
  }
}
BENCHMARK(BM_InverseNormal);

// Coefficients are computed once per sample in the simulation loop, so this
// is the per-replication cost outside sampling.
void BM_Quantile(benchmark::State& state) {
  const auto f = family_el();
  const auto p = kurtosis_adjusted_prior();
  const SampleSummary sum{50, 0.1, 1.2, 0.8, 4.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(quantile(f, p, sum, 0.05));
  }
}
BENCHMARK(BM_Quantile);

void BM_PredictCoverage(benchmark::State& state) {
  const auto f = family_el();
  const auto p = skewness_adjusted_prior();
  const PopulationMoments pop{1, 1, 2, 9};
  for (auto _ : state) {
    benchmark::DoNotOptimize(predict_coverage(f, p, pop, 50, 0.05, MatchOrder::One));
  }
}
BENCHMARK(BM_PredictCoverage);

void BM_RunCoverage(benchmark::State& state) {
  SimConfig cfg;
  cfg.dist = Distribution::Exponential;
  cfg.n = static_cast<std::size_t>(state.range(0));
  cfg.reps = 10000;
  cfg.family = family_schennach();
  cfg.prior = skewness_adjusted_prior();
  cfg.workers = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_coverage(cfg));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.reps));
}
BENCHMARK(BM_RunCoverage)->Arg(8)->Arg(50)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
