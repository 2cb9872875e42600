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

#include "dyncover/core.hpp"

#include <algorithm>

#include "dyncover/numeric.hpp"

namespace dyncover {

void SetSystem::finalize(std::int32_t element_count) {
  incidence.assign(static_cast<std::size_t>(element_count), {});
  for (SetId s = 0; s < num_sets(); ++s) {
    auto& mem = members[static_cast<std::size_t>(s)];
    std::sort(mem.begin(), mem.end());
    for (ElementId e : mem) {
      incidence[static_cast<std::size_t>(e)].push_back(s);
    }
  }
  frequency = 0;
  for (const auto& inc : incidence) {
    frequency = std::max(frequency, static_cast<std::int32_t>(inc.size()));
  }
}

void SetSystem::validate() const {
  if (capacity <= 0) throw ValidationError("capacity n must be positive");
  if (aspect_ratio < 1.0 - num::kRelTol) {
    throw ValidationError("aspect ratio C must be >= 1");
  }
  const double lo = 1.0 / aspect_ratio;
  for (SetId s = 0; s < num_sets(); ++s) {
    const double c = cost[static_cast<std::size_t>(s)];
    if (!(c >= lo - num::kRelTol && c <= 1.0 + num::kRelTol)) {
      throw ValidationError("set " + std::to_string(s) + " cost " +
                            std::to_string(c) + " outside [1/C, 1]");
    }
    const auto& mem = members[static_cast<std::size_t>(s)];
    for (std::size_t i = 0; i + 1 < mem.size(); ++i) {
      if (mem[i] >= mem[i + 1]) {
        throw ValidationError("set " + std::to_string(s) +
                              " has duplicate or unsorted elements");
      }
    }
    for (ElementId e : mem) {
      if (e < 0 || e >= num_elements()) {
        throw ValidationError("set " + std::to_string(s) +
                              " references unknown element " +
                              std::to_string(e));
      }
    }
  }
  for (ElementId e = 0; e < num_elements(); ++e) {
    const auto& inc = incidence[static_cast<std::size_t>(e)];
    if (inc.empty()) {
      throw ValidationError("element " + std::to_string(e) +
                            " belongs to no set");
    }
    if (static_cast<std::int32_t>(inc.size()) > frequency) {
      throw ValidationError("element " + std::to_string(e) +
                            " exceeds frequency bound");
    }
    for (SetId s : inc) {
      const auto& mem = members[static_cast<std::size_t>(s)];
      if (!std::binary_search(mem.begin(), mem.end(), e)) {
        throw ValidationError("incidence of element " + std::to_string(e) +
                              " is not the inverse of set membership");
      }
    }
  }
}

std::vector<ElementId> UniverseState::alive_ids() const {
  std::vector<ElementId> out;
  out.reserve(static_cast<std::size_t>(alive_count));
  for (std::size_t e = 0; e < alive.size(); ++e) {
    if (alive[e]) out.push_back(static_cast<ElementId>(e));
  }
  return out;
}

std::uint64_t UniverseState::alive_mask() const {
  std::uint64_t mask = 0;
  for (std::size_t e = 0; e < alive.size(); ++e) {
    if (alive[e]) mask |= std::uint64_t{1} << e;
  }
  return mask;
}

bool CoverSolution::contains(SetId s) const {
  return std::binary_search(members.begin(), members.end(), s);
}

CoverSolution CoverSolution::from_members(const SetSystem& system,
                                          std::vector<SetId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  CoverSolution sol;
  sol.members = std::move(ids);
  solution_cost(system, sol);
  return sol;
}

void apply_update(UniverseState& universe, const UpdateStep& step) {
  const auto e = static_cast<std::size_t>(step.element);
  if (step.element < 0 || e >= universe.alive.size()) {
    throw TraceError("update references unknown element " +
                     std::to_string(step.element));
  }
  if (step.kind == UpdateStep::Kind::Insert) {
    if (universe.alive[e]) {
      throw TraceError("insert of alive element " +
                       std::to_string(step.element));
    }
    if (universe.alive_count >= universe.capacity) {
      throw TraceError("insert exceeds capacity n=" +
                       std::to_string(universe.capacity));
    }
    universe.alive[e] = 1;
    universe.lifespan[e] += 1;
    universe.alive_count += 1;
  } else {
    if (!universe.alive[e]) {
      throw TraceError("delete of non-alive element " +
                       std::to_string(step.element));
    }
    universe.alive[e] = 0;
    universe.alive_count -= 1;
  }
}

bool is_cover(const SetSystem& system, const UniverseState& universe,
              const CoverSolution& sol) {
  for (ElementId e = 0; e < system.num_elements(); ++e) {
    if (!universe.is_alive(e)) continue;
    bool covered = false;
    for (SetId s : system.incidence[static_cast<std::size_t>(e)]) {
      if (sol.contains(s)) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

double solution_cost(const SetSystem& system, CoverSolution& sol) {
  double sum = 0.0;
  for (SetId s : sol.members) {
    if (s < 0 || s >= system.num_sets()) {
      throw ValidationError("unknown set id " + std::to_string(s) +
                            " in solution");
    }
    sum += system.cost[static_cast<std::size_t>(s)];
  }
  sol.total_cost = sum;
  return sum;
}

}  // namespace dyncover
