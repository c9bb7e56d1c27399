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

#include "elmatch/moments.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>

#include "elmatch/error.hpp"
#include "elmatch/normal.hpp"

namespace elmatch {

SampleSummary summarize(std::span<const double> data) {
  const std::size_t n = data.size();
  if (n < kMinSampleSize) {
    throw Error(ErrorKind::TooFewPoints,
                "need at least 4 observations, got " + std::to_string(n));
  }
  double sum = 0.0;
  for (double x : data) sum += x;
  const double mean = sum / static_cast<double>(n);

  double s2 = 0.0;
  double s3 = 0.0;
  double s4 = 0.0;
  for (double x : data) {
    const double d = x - mean;
    const double d2 = d * d;
    s2 += d2;
    s3 += d2 * d;
    s4 += d2 * d2;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  const double m2 = s2 * inv_n;
  if (m2 == 0.0) {
    throw Error(ErrorKind::DegenerateSample, "sample has zero spread (m2 = 0)");
  }
  const double m3 = s3 * inv_n;
  const double m4 = s4 * inv_n;
  return {n, mean, m2, m3 / (m2 * std::sqrt(m2)), m4 / (m2 * m2)};
}

double pivot_y(const SampleSummary& summary, double theta) {
  return std::sqrt(static_cast<double>(summary.n) / summary.m2) *
         (theta - summary.mean);
}

namespace {

using std::numbers::pi;

const std::array<DistributionSpec, 5>& table() {
  static const std::array<DistributionSpec, 5> specs = {{
      {Distribution::Normal, "normal", {0.0, 1.0, 0.0, 3.0}},
      {Distribution::Uniform, "uniform", {0.5, 1.0 / 12.0, 0.0, 1.8}},
      {Distribution::Beta12, "beta12",
       {1.0 / 3.0, 1.0 / 18.0, 2.0 * std::numbers::sqrt2 / 5.0, 2.4}},
      {Distribution::Exponential, "exponential", {1.0, 1.0, 2.0, 9.0}},
      {Distribution::Rayleigh, "rayleigh",
       {std::sqrt(pi / 2.0), (4.0 - pi) / 2.0,
        2.0 * std::sqrt(pi) * (pi - 3.0) / std::pow(4.0 - pi, 1.5),
        (32.0 - 3.0 * pi * pi) / ((4.0 - pi) * (4.0 - pi))}},
  }};
  return specs;
}

} // namespace

double DistributionSpec::inverse_cdf(double u) const {
  switch (kind) {
  case Distribution::Normal: return inverse_normal_cdf(u);
  case Distribution::Uniform: return u;
  case Distribution::Beta12: return 1.0 - std::sqrt(1.0 - u);
  case Distribution::Exponential: return -std::log1p(-u);
  case Distribution::Rayleigh: return std::sqrt(-2.0 * std::log1p(-u));
  }
  return 0.0;
}

double DistributionSpec::density(double x) const {
  switch (kind) {
  case Distribution::Normal: return normal_pdf(x);
  case Distribution::Uniform: return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0;
  case Distribution::Beta12: return (x >= 0.0 && x <= 1.0) ? 2.0 * (1.0 - x) : 0.0;
  case Distribution::Exponential: return x >= 0.0 ? std::exp(-x) : 0.0;
  case Distribution::Rayleigh: return x >= 0.0 ? x * std::exp(-0.5 * x * x) : 0.0;
  }
  return 0.0;
}

const DistributionSpec& distribution(Distribution kind) {
  return table()[static_cast<std::size_t>(kind)];
}

std::span<const DistributionSpec> builtin_distributions() { return table(); }

const DistributionSpec& distribution_by_name(std::string_view name) {
  if (name == "exp") return distribution(Distribution::Exponential);
  if (name == "beta" || name == "beta(1,2)") return distribution(Distribution::Beta12);
  for (const auto& d : table()) {
    if (d.name == name) return d;
  }
  throw Error(ErrorKind::InvalidArgument,
              "unknown distribution '" + std::string(name) +
                  "' (expected normal, uniform, beta12, exponential, rayleigh)");
}

PopulationMoments dist_moments(const DistributionSpec& dist) { return dist.moments; }

std::vector<double> parse_data(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t b = 0;
    std::size_t e = line.size();
    while (b < e && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
    if (b == e) continue;

    const char* first = line.data() + b;
    const char* last = line.data() + e;
    if (*first == '+') ++first;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    const bool ok = ec == std::errc() && ptr == last && std::isfinite(v);
    if (!ok) {
      if (!seen_content) {
        seen_content = true; // header line
        continue;
      }
      throw ParseError("non-numeric value '" + line.substr(b, e - b) +
                           "' on line " + std::to_string(line_no),
                       b);
    }
    seen_content = true;
    values.push_back(v);
  }
  return values;
}

std::vector<double> read_data_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open data file '" + path + "'");
  return parse_data(in);
}

} // namespace elmatch
