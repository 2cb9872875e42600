// Copyright 2026 The dyncover Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DYNCOVER_RNG_HPP
#define DYNCOVER_RNG_HPP

#include <cstdint>
#include <random>

namespace dyncover {

/// Seedable RNG wrapper around std::mt19937_64. The raw 64-bit stream is
/// pinned by the standard; bounded draws below avoid std::*_distribution,
/// whose outputs differ between standard library implementations. Every
/// artifact output records the seed it was produced from.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform integer in [lo, hi], inclusive. Fixed-point scaling keeps the
  /// mapping deterministic everywhere; the bias is < 2^-64 per draw.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    const auto scaled = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * span) >> 64);
    return lo + static_cast<std::int64_t>(scaled);
  }

  /// Uniform double in [lo, hi).
  double uniform_real(double lo, double hi) {
    const double unit =
        static_cast<double>(next_u64() >> 11) * 0x1.0p-53;  // [0, 1)
    return lo + unit * (hi - lo);
  }

  bool bernoulli(double p) { return uniform_real(0.0, 1.0) < p; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace dyncover

#endif  // DYNCOVER_RNG_HPP
