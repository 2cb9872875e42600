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

#include "dyncover/dynamic_algorithm.hpp"

#include "dyncover/lazy_pd.hpp"
#include "dyncover/level_greedy.hpp"
#include "dyncover/recompute_baseline.hpp"

namespace dyncover {

std::unique_ptr<DynamicAlgorithm> make_algorithm(const std::string& name,
                                                 const SetSystem& system,
                                                 double epsilon) {
  if (name == "level-greedy") return std::make_unique<LevelGreedy>(system, epsilon);
  if (name == "lazy-pd") return std::make_unique<LazyPd>(system, epsilon);
  if (name == "recompute") return std::make_unique<RecomputeBaseline>(system);
  throw ParamError("unknown algorithm '" + name +
                   "' (expected level-greedy, lazy-pd or recompute)");
}

}  // namespace dyncover
