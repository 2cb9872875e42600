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

#include "dyncover/recompute_baseline.hpp"

#include <algorithm>

#include "dyncover/numeric.hpp"

namespace dyncover {

RecomputeBaseline::RecomputeBaseline(const SetSystem& system)
    : system_(system), universe_(system) {
  recompute();
  last_recourse_ = 0;
}

double RecomputeBaseline::approx_alpha() const {
  return num::harmonic(system_.capacity);
}

void RecomputeBaseline::insert(ElementId e) {
  apply_update(universe_, UpdateStep::insert(e));
  recompute();
}

void RecomputeBaseline::erase(ElementId e) {
  apply_update(universe_, UpdateStep::remove(e));
  recompute();
}

void RecomputeBaseline::recompute() {
  const std::vector<SetId> before = last_.cover.members;
  last_ = greedy_cover(system_, universe_);
  work_ += last_.work;
  const auto& after = last_.cover.members;
  std::int64_t common = 0;
  std::size_t i = 0, j = 0;
  while (i < before.size() && j < after.size()) {
    if (before[i] < after[j]) {
      ++i;
    } else if (after[j] < before[i]) {
      ++j;
    } else {
      ++common, ++i, ++j;
    }
  }
  last_recourse_ = static_cast<std::int64_t>(before.size() + after.size()) - 2 * common;
}

}  // namespace dyncover
