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

#include "dyncover/lazy_pd.hpp"

#include <algorithm>
#include <limits>

#include "dyncover/numeric.hpp"

namespace dyncover {

LazyPd::LazyPd(const SetSystem& system, double epsilon)
    : system_(system), eps_(epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) {
    throw ParamError("lazy-pd epsilon must be in (0, 0.5]");
  }
  const auto n = static_cast<std::size_t>(system.num_elements());
  const auto m = static_cast<std::size_t>(system.num_sets());
  dual_.assign(n, 0.0);
  load_.assign(m, 0.0);
  present_.assign(n, 0);
  alive_.assign(n, 0);
  in_cover_.assign(m, 0);
}

double LazyPd::approx_alpha() const {
  return (1.0 + eps_) * system_.frequency;
}

CoverSolution LazyPd::current_cover() const {
  CoverSolution sol;
  sol.members = cover_members_;
  sol.total_cost = cover_cost_;
  return sol;
}

DualVector LazyPd::alive_duals() const {
  DualVector d;
  d.y.assign(dual_.size(), 0.0);
  for (std::size_t e = 0; e < dual_.size(); ++e) {
    if (alive_[e]) d.y[e] = dual_[e];
  }
  return d;
}

std::int64_t LazyPd::cover_add(SetId s) {
  const auto idx = static_cast<std::size_t>(s);
  if (in_cover_[idx]) return 0;
  in_cover_[idx] = 1;
  cover_members_.insert(
      std::lower_bound(cover_members_.begin(), cover_members_.end(), s), s);
  cover_cost_ += system_.cost[idx];
  return 1;
}

void LazyPd::insert(ElementId e) {
  const auto idx = static_cast<std::size_t>(e);
  last_recourse_ = 0;
  ++work_;
  if (e < 0 || idx >= present_.size()) {
    throw TraceError("lazy-pd: unknown element " + std::to_string(e));
  }
  if (present_[idx] && alive_[idx]) {
    throw TraceError("lazy-pd: insert of alive element");
  }
  // A re-inserted id starts a fresh lifespan; the old dual already sits in
  // the retired mass and stays inside the set loads until the next rebuild.
  dual_[idx] = 0.0;
  present_[idx] = 1;
  alive_[idx] = 1;

  const auto& inc = system_.incidence[idx];
  if (inc.empty()) {
    throw InfeasibleError("element " + std::to_string(e) + " belongs to no set");
  }
  bool covered = false;
  for (SetId s : inc) covered = covered || in_cover_[static_cast<std::size_t>(s)];
  if (covered) return;

  double slack = std::numeric_limits<double>::infinity();
  for (SetId s : inc) {
    const auto si = static_cast<std::size_t>(s);
    slack = std::min(slack, system_.cost[si] - load_[si]);
    ++work_;
  }
  slack = std::max(slack, 0.0);
  dual_[idx] = slack;
  alive_mass_ += slack;
  SetId first_tight = -1;
  for (SetId s : inc) {
    const auto si = static_cast<std::size_t>(s);
    load_[si] += slack;
    if (first_tight < 0 &&
        system_.cost[si] - load_[si] <= num::kRelTol * std::max(1.0, system_.cost[si])) {
      first_tight = s;
    }
  }
  last_recourse_ = cover_add(first_tight);
}

void LazyPd::erase(ElementId e) {
  const auto idx = static_cast<std::size_t>(e);
  ++work_;
  if (e < 0 || idx >= present_.size()) {
    throw TraceError("lazy-pd: unknown element " + std::to_string(e));
  }
  if (!present_[idx] || !alive_[idx]) {
    throw TraceError("lazy-pd: delete of non-alive element");
  }
  alive_[idx] = 0;
  alive_mass_ -= dual_[idx];
  retired_mass_ += dual_[idx];
  last_recourse_ = 0;
  if (!num::approx_le(retired_mass_, eps_ * alive_mass_)) {
    rebuild();
  }
}

void LazyPd::rebuild() {
  ++rebuilds_;
  std::vector<SetId> before = cover_members_;

  UniverseState universe(system_);
  for (std::size_t e = 0; e < alive_.size(); ++e) {
    universe.alive[e] = alive_[e];
    if (alive_[e]) ++universe.alive_count;
    present_[e] = alive_[e];
  }
  PdResult fresh = primal_dual_cover(system_, universe, PdMode::FirstTight);
  work_ += static_cast<std::uint64_t>(system_.num_sets()) +
           static_cast<std::uint64_t>(system_.num_elements());

  dual_ = fresh.duals.y;
  std::fill(load_.begin(), load_.end(), 0.0);
  alive_mass_ = 0.0;
  retired_mass_ = 0.0;
  for (std::size_t e = 0; e < dual_.size(); ++e) {
    if (!alive_[e]) {
      dual_[e] = 0.0;
      continue;
    }
    alive_mass_ += dual_[e];
    for (SetId s : system_.incidence[e]) {
      load_[static_cast<std::size_t>(s)] += dual_[e];
    }
  }
  std::fill(in_cover_.begin(), in_cover_.end(), 0);
  for (SetId s : fresh.cover.members) in_cover_[static_cast<std::size_t>(s)] = 1;
  cover_members_ = fresh.cover.members;
  cover_cost_ = fresh.cover.total_cost;

  std::int64_t common = 0;
  std::size_t i = 0, j = 0;
  while (i < before.size() && j < cover_members_.size()) {
    if (before[i] < cover_members_[j]) {
      ++i;
    } else if (cover_members_[j] < before[i]) {
      ++j;
    } else {
      ++common, ++i, ++j;
    }
  }
  last_recourse_ =
      static_cast<std::int64_t>(before.size() + cover_members_.size()) - 2 * common;
}

}  // namespace dyncover
