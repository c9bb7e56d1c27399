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

#ifndef ELMATCH_RNG_HPP
#define ELMATCH_RNG_HPP

#include <cstdint>
#include <string>

namespace elmatch {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
inline constexpr std::uint64_t kStreamSalt = 0x632be59bd9b4e019ULL;

/// SplitMix64 output finalizer (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Key of replication `index` under `master_seed`:
///   mix64(master_seed ^ mix64(index * golden + salt)).
constexpr std::uint64_t substream_key(std::uint64_t master_seed,
                                      std::uint64_t index) noexcept {
  return mix64(master_seed ^ mix64(index * kGolden + kStreamSalt));
}

/**
 * Counter-based generator: draw i of a stream is mix64(key + (i + 1) * golden),
 * a pure function of (key, i). This is the SplitMix64 sequence started at
 * `key`, so a stream can be replayed from any point.
 */
class CounterRng {
public:
  explicit constexpr CounterRng(std::uint64_t key) noexcept : key_(key) {}

  constexpr std::uint64_t next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
  }

  /// Uniform on the open interval (0, 1): ((x >> 11) + 0.5) * 2^-53.
  constexpr double next_uniform() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  constexpr std::uint64_t counter() const noexcept { return counter_; }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Identification string echoed into every simulation output.
std::string generator_id();

} // namespace elmatch

#endif
