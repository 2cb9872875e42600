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

#include "dyncover/generators.hpp"

#include <algorithm>
#include <cmath>

#include "dyncover/rng.hpp"

namespace dyncover {

Instance gen_random(const WorkloadSpec& spec) {
  if (spec.n <= 0 || spec.m <= 0 || spec.f <= 0 || spec.steps < 0 ||
      spec.aspect_ratio < 1.0) {
    throw ParamError("gen_random: parameters must be positive and C >= 1");
  }
  Rng rng(spec.seed);
  Instance instance;
  instance.system.capacity = spec.n;
  instance.system.aspect_ratio = spec.aspect_ratio;
  instance.system.cost.resize(static_cast<std::size_t>(spec.m));
  instance.system.members.assign(static_cast<std::size_t>(spec.m), {});
  const double lo = 1.0 / spec.aspect_ratio;
  for (auto& c : instance.system.cost) {
    c = spec.aspect_ratio == 1.0 ? 1.0 : rng.uniform_real(lo, 1.0);
  }

  const std::int32_t max_deg = std::min(spec.f, spec.m);
  std::vector<SetId> chosen;
  for (ElementId e = 0; e < spec.n; ++e) {
    const auto deg = static_cast<std::int32_t>(rng.uniform_int(1, max_deg));
    chosen.clear();
    while (static_cast<std::int32_t>(chosen.size()) < deg) {
      const auto s = static_cast<SetId>(rng.uniform_int(0, spec.m - 1));
      if (std::find(chosen.begin(), chosen.end(), s) == chosen.end()) {
        chosen.push_back(s);
      }
    }
    for (SetId s : chosen) {
      instance.system.members[static_cast<std::size_t>(s)].push_back(e);
    }
  }
  instance.system.finalize(spec.n);

  // Trace: alive/absent pools with O(1) swap-sampling.
  std::vector<ElementId> absent, alive;
  std::vector<std::int32_t> pos(static_cast<std::size_t>(spec.n));
  absent.reserve(static_cast<std::size_t>(spec.n));
  for (ElementId e = 0; e < spec.n; ++e) {
    absent.push_back(e);
    pos[static_cast<std::size_t>(e)] = e;
  }
  auto take = [&](std::vector<ElementId>& pool) {
    const auto i = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(pool.size()) - 1));
    const ElementId e = pool[i];
    pool[i] = pool.back();
    pool.pop_back();
    return e;
  };
  for (std::int64_t t = 0; t < spec.steps; ++t) {
    const bool can_insert = !absent.empty();
    const bool can_delete = !alive.empty();
    bool do_insert = rng.bernoulli(spec.insert_ratio);
    if (do_insert && !can_insert) do_insert = false;
    if (!do_insert && !can_delete) do_insert = true;
    if (do_insert) {
      const ElementId e = take(absent);
      alive.push_back(e);
      instance.trace.push_back(UpdateStep::insert(e));
    } else {
      const ElementId e = take(alive);
      absent.push_back(e);
      instance.trace.push_back(UpdateStep::remove(e));
    }
  }
  return instance;
}

Instance gen_pd_adversarial(std::int32_t n, std::int32_t f) {
  if (n < 1 || f < 1) throw ParamError("gen_pd_adversarial: n, f >= 1 required");
  Instance instance;
  instance.system.capacity = n;
  instance.system.aspect_ratio = 1.0;
  for (ElementId e = 0; e < n; ++e) {
    for (std::int32_t j = 0; j < f; ++j) {
      instance.system.cost.push_back(1.0);
      instance.system.members.push_back({e});
    }
  }
  instance.system.finalize(n);
  for (ElementId e = 0; e < n; ++e) instance.trace.push_back(UpdateStep::insert(e));
  for (ElementId e = 0; e < n - 1; ++e) instance.trace.push_back(UpdateStep::remove(e));
  return instance;
}

BipartiteReconfig gen_bipartite_reconfig(std::int32_t n) {
  if (n < 2 || n % 2 != 0) {
    throw ParamError("gen_bipartite_reconfig: n must be even and >= 2");
  }
  const std::int32_t half = n / 2;
  BipartiteReconfig out;
  Instance& instance = out.instance;
  instance.system.capacity = half * half;
  instance.system.aspect_ratio = 1.0;
  instance.system.cost.assign(static_cast<std::size_t>(n), 1.0);
  instance.system.members.assign(static_cast<std::size_t>(n), {});
  // Edge (l, r) gets element id l*half + (r - half); vertices are sets.
  for (std::int32_t l = 0; l < half; ++l) {
    for (std::int32_t r = 0; r < half; ++r) {
      const ElementId edge = l * half + r;
      instance.system.members[static_cast<std::size_t>(l)].push_back(edge);
      instance.system.members[static_cast<std::size_t>(half + r)].push_back(edge);
    }
  }
  instance.system.finalize(half * half);
  for (ElementId e = 0; e < half * half; ++e) {
    instance.trace.push_back(UpdateStep::insert(e));
  }
  std::vector<SetId> left, right;
  for (std::int32_t v = 0; v < half; ++v) left.push_back(v);
  for (std::int32_t v = half; v < n; ++v) right.push_back(v);
  out.source = CoverSolution::from_members(instance.system, std::move(left));
  out.target = CoverSolution::from_members(instance.system, std::move(right));
  return out;
}

std::vector<ElementId> gen_robustness_attack(const SetSystem& system,
                                             const UniverseState& universe,
                                             const CoverSolution& X,
                                             const ChargeVector& charges,
                                             double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ParamError("gen_robustness_attack: delta must be in (0, 1)");
  }
  auto budget = static_cast<std::int64_t>(std::floor(delta * X.total_cost));
  std::vector<ElementId> order;
  for (ElementId e = 0; e < system.num_elements(); ++e) {
    if (universe.is_alive(e)) order.push_back(e);
  }
  std::stable_sort(order.begin(), order.end(), [&](ElementId a, ElementId b) {
    return charges.q[static_cast<std::size_t>(a)] >
           charges.q[static_cast<std::size_t>(b)];
  });
  if (budget > static_cast<std::int64_t>(order.size())) {
    budget = static_cast<std::int64_t>(order.size());
  }
  order.resize(static_cast<std::size_t>(budget));
  return order;
}

}  // namespace dyncover
