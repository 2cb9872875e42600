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

#ifndef DYNCOVER_TESTS_TEST_SUPPORT_HPP
#define DYNCOVER_TESTS_TEST_SUPPORT_HPP

#include <limits>
#include <vector>

#include "dyncover/core.hpp"

namespace dyncover::testing {

/// Builds a system from per-set (cost, members) pairs; capacity defaults to
/// the element count.
inline SetSystem make_system(std::vector<std::pair<double, std::vector<ElementId>>> sets,
                             std::int32_t capacity = -1, double aspect_ratio = 1.0) {
  SetSystem system;
  ElementId max_elem = -1;
  for (auto& [cost, members] : sets) {
    system.cost.push_back(cost);
    for (ElementId e : members) max_elem = std::max(max_elem, e);
    system.members.push_back(std::move(members));
  }
  system.finalize(max_elem + 1);
  system.capacity = capacity >= 0 ? capacity : max_elem + 1;
  system.aspect_ratio = aspect_ratio;
  return system;
}

inline UniverseState all_alive(const SetSystem& system) {
  UniverseState universe(system);
  for (ElementId e = 0; e < system.num_elements(); ++e) {
    apply_update(universe, UpdateStep::insert(e));
  }
  return universe;
}

/// Independent oracle: minimum cover cost by enumerating all 2^m subsets.
/// Returns +inf when no subset covers the alive elements.
inline double brute_force_opt(const SetSystem& system,
                              const UniverseState& universe) {
  const int m = system.num_sets();
  double best = std::numeric_limits<double>::infinity();
  if (universe.alive_count == 0) return 0.0;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << m); ++pick) {
    double cost = 0.0;
    for (int s = 0; s < m; ++s) {
      if (pick >> s & 1) cost += system.cost[static_cast<std::size_t>(s)];
    }
    if (cost >= best) continue;
    bool feasible = true;
    for (ElementId e = 0; e < system.num_elements() && feasible; ++e) {
      if (!universe.is_alive(e)) continue;
      bool covered = false;
      for (SetId s : system.incidence[static_cast<std::size_t>(e)]) {
        if (pick >> s & 1) {
          covered = true;
          break;
        }
      }
      feasible = covered;
    }
    if (feasible) best = cost;
  }
  return best;
}

}  // namespace dyncover::testing

#endif  // DYNCOVER_TESTS_TEST_SUPPORT_HPP
