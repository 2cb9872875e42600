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

#ifndef DYNCOVER_NUMERIC_HPP
#define DYNCOVER_NUMERIC_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace dyncover::num {

/// Relative tolerance used for every cost comparison in the project.
/// Recourse and cardinalities are exact integers and never go through this.
inline constexpr double kRelTol = 1e-9;

inline double rel_scale(double a, double b) {
  return std::max({1.0, std::fabs(a), std::fabs(b)});
}

/// a <= b up to relative tolerance.
inline bool approx_le(double a, double b, double tol = kRelTol) {
  return a <= b + tol * rel_scale(a, b);
}

/// |a - b| within relative tolerance.
inline bool approx_eq(double a, double b, double tol = kRelTol) {
  return std::fabs(a - b) <= tol * rel_scale(a, b);
}

/// ceil(x) that snaps values within relative tolerance of an integer to it,
/// so that thresholds computed from logarithms stay deterministic.
inline std::int64_t ceil_guarded(double x) {
  const double r = std::round(x);
  if (std::fabs(x - r) <= kRelTol * std::max(1.0, std::fabs(x))) {
    return static_cast<std::int64_t>(r);
  }
  return static_cast<std::int64_t>(std::ceil(x));
}

/// floor(x) with the same snapping rule as ceil_guarded.
inline std::int64_t floor_guarded(double x) {
  const double r = std::round(x);
  if (std::fabs(x - r) <= kRelTol * std::max(1.0, std::fabs(x))) {
    return static_cast<std::int64_t>(r);
  }
  return static_cast<std::int64_t>(std::floor(x));
}

/// Largest integer count that still satisfies the strict bound count < x.
/// When x sits within guard of an integer R the answer is R - 1.
inline std::int64_t strict_upper_count(double x) {
  const double r = std::round(x);
  if (std::fabs(x - r) <= kRelTol * std::max(1.0, std::fabs(x))) {
    return static_cast<std::int64_t>(r) - 1;
  }
  return static_cast<std::int64_t>(std::floor(x));
}

/// n-th harmonic number H_n = 1 + 1/2 + ... + 1/n, H_0 = 0. Cached.
inline double harmonic(std::int64_t n) {
  thread_local std::vector<double> cache{0.0};
  if (n < 0) return 0.0;
  while (static_cast<std::int64_t>(cache.size()) <= n) {
    cache.push_back(cache.back() + 1.0 / static_cast<double>(cache.size()));
  }
  return cache[static_cast<std::size_t>(n)];
}

}  // namespace dyncover::num

#endif  // DYNCOVER_NUMERIC_HPP
