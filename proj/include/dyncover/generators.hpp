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

#ifndef DYNCOVER_GENERATORS_HPP
#define DYNCOVER_GENERATORS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dyncover/core.hpp"
#include "dyncover/instance_io.hpp"
#include "dyncover/static_solvers.hpp"

namespace dyncover {

struct WorkloadSpec {
  enum class Generator { Random, PdAdversarial, BipartiteReconfig };
  Generator generator = Generator::Random;
  std::int32_t n = 16;  // capacity = number of distinct elements
  std::int32_t m = 12;
  std::int32_t f = 3;
  double aspect_ratio = 1.0;
  std::int64_t steps = 200;
  double insert_ratio = 0.6;
  std::uint64_t seed = 1;
};

/// Random instance: each of n elements joins 1..f sets picked uniformly,
/// costs uniform in [1/C, 1], trace interleaves inserts and deletes under
/// the capacity bound. Deterministic under the seed.
Instance gen_random(const WorkloadSpec& spec);

/// The primal-dual worst case: n elements, f unit-cost singleton copies per
/// element; the trace inserts everything and then deletes all but the last.
Instance gen_pd_adversarial(std::int32_t n, std::int32_t f);

struct BipartiteReconfig {
  Instance instance;       // trace inserts every edge
  CoverSolution source;    // left-side vertices
  CoverSolution target;    // right-side vertices
};

/// Vertex cover of K_{n/2,n/2} as set cover: elements are edges, sets are
/// vertices, unit costs, f = 2. Either side is a feasible cover of cost n/2.
BipartiteReconfig gen_bipartite_reconfig(std::int32_t n);

/// Adversarial deletion set for robustness_check: floor(delta * cost(X))
/// alive elements with the largest greedy charges, ties toward low ids.
/// Requires 0 < delta < 1.
std::vector<ElementId> gen_robustness_attack(const SetSystem& system,
                                             const UniverseState& universe,
                                             const CoverSolution& X,
                                             const ChargeVector& charges,
                                             double delta);

}  // namespace dyncover

#endif  // DYNCOVER_GENERATORS_HPP
