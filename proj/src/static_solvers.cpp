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

#include "dyncover/static_solvers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>

#include "dyncover/numeric.hpp"

namespace dyncover {

namespace {

struct HeapEntry {
  double ratio;
  SetId set;
  std::int32_t count;  // uncovered count when pushed; stale entries re-queue

  bool operator>(const HeapEntry& other) const {
    if (ratio != other.ratio) return ratio > other.ratio;
    return set > other.set;
  }
};

}  // namespace

double ChargeVector::total() const {
  double sum = 0.0;
  for (double v : q) sum += v;
  return sum;
}

GreedyResult greedy_cover(const SetSystem& system,
                          const UniverseState& universe) {
  GreedyResult result;
  result.charges.q.assign(static_cast<std::size_t>(system.num_elements()), 0.0);
  result.assigned_to.assign(static_cast<std::size_t>(system.num_elements()), -1);

  std::vector<std::int32_t> uncovered(static_cast<std::size_t>(system.num_sets()), 0);
  std::int32_t remaining = 0;
  for (ElementId e = 0; e < system.num_elements(); ++e) {
    if (!universe.is_alive(e)) continue;
    if (system.incidence[static_cast<std::size_t>(e)].empty()) {
      throw InfeasibleError("element " + std::to_string(e) +
                            " is alive but belongs to no set");
    }
    ++remaining;
    for (SetId s : system.incidence[static_cast<std::size_t>(e)]) {
      ++uncovered[static_cast<std::size_t>(s)];
    }
  }

  // Lazy-evaluation heap: a set's cost-per-new-element ratio only grows as
  // elements get covered, so stale minima are re-queued with fresh counts.
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap;
  for (SetId s = 0; s < system.num_sets(); ++s) {
    const auto cnt = uncovered[static_cast<std::size_t>(s)];
    if (cnt > 0) {
      heap.push({system.cost[static_cast<std::size_t>(s)] / cnt, s, cnt});
      ++result.work;
    }
  }

  std::vector<std::uint8_t> covered(static_cast<std::size_t>(system.num_elements()), 0);
  std::vector<SetId> picked;
  while (remaining > 0) {
    if (heap.empty()) {
      throw InfeasibleError("uncoverable elements remain");
    }
    HeapEntry top = heap.top();
    heap.pop();
    ++result.work;
    const auto cnt = uncovered[static_cast<std::size_t>(top.set)];
    if (cnt == 0) continue;
    if (cnt != top.count) {
      heap.push({system.cost[static_cast<std::size_t>(top.set)] / cnt, top.set, cnt});
      continue;
    }
    // Select top.set; charge each newly covered element cost/count.
    const double charge = system.cost[static_cast<std::size_t>(top.set)] / cnt;
    picked.push_back(top.set);
    for (ElementId e : system.members[static_cast<std::size_t>(top.set)]) {
      const auto idx = static_cast<std::size_t>(e);
      if (!universe.is_alive(e) || covered[idx]) continue;
      covered[idx] = 1;
      result.charges.q[idx] = charge;
      result.assigned_to[idx] = top.set;
      --remaining;
      for (SetId w : system.incidence[idx]) {
        --uncovered[static_cast<std::size_t>(w)];
        ++result.work;
      }
    }
  }
  result.pick_order = picked;
  result.cover = CoverSolution::from_members(system, std::move(picked));
  return result;
}

ChargeAuditReport charge_audit(const SetSystem& system,
                               const UniverseState& universe,
                               const ChargeVector& charges,
                               double cover_cost) {
  ChargeAuditReport report;
  report.set_slack.resize(static_cast<std::size_t>(system.num_sets()), 0.0);
  const double hn = num::harmonic(system.capacity);
  std::int64_t max_size = 0;

  for (ElementId e = 0; e < system.num_elements(); ++e) {
    if (universe.is_alive(e)) report.charge_total += charges.q[static_cast<std::size_t>(e)];
  }
  if (!num::approx_eq(report.charge_total, cover_cost)) {
    report.ok = false;
    report.violations.push_back("total charge " +
                                std::to_string(report.charge_total) +
                                " != cover cost " + std::to_string(cover_cost));
  }

  for (SetId s = 0; s < system.num_sets(); ++s) {
    const auto& mem = system.members[static_cast<std::size_t>(s)];
    max_size = std::max<std::int64_t>(max_size, static_cast<std::int64_t>(mem.size()));
    double sum = 0.0;
    for (ElementId e : mem) {
      if (universe.is_alive(e)) sum += charges.q[static_cast<std::size_t>(e)];
    }
    const double cost = system.cost[static_cast<std::size_t>(s)];
    const double h_bound = num::harmonic(static_cast<std::int64_t>(mem.size())) * cost;
    report.set_slack[static_cast<std::size_t>(s)] = h_bound - sum;
    report.max_set_excess = std::max(report.max_set_excess, sum - h_bound);
    if (!num::approx_le(sum, h_bound)) {
      report.ok = false;
      report.violations.push_back("set " + std::to_string(s) + ": charge sum " +
                                  std::to_string(sum) + " exceeds H_|S|*cost " +
                                  std::to_string(h_bound));
    }
    if (!num::approx_le(sum / hn, cost)) {
      report.ok = false;
      report.dual_feasible = false;
      report.violations.push_back("set " + std::to_string(s) +
                                  ": q/H_n dual-infeasible");
    }
  }
  report.hd_bound = num::harmonic(max_size);
  return report;
}

PdResult primal_dual_cover(const SetSystem& system,
                           const UniverseState& universe, PdMode mode) {
  PdResult result;
  result.duals.y.assign(static_cast<std::size_t>(system.num_elements()), 0.0);
  std::vector<double> load(static_cast<std::size_t>(system.num_sets()), 0.0);
  std::vector<std::uint8_t> chosen(static_cast<std::size_t>(system.num_sets()), 0);
  std::vector<SetId> cover;

  for (ElementId e = 0; e < system.num_elements(); ++e) {
    if (!universe.is_alive(e)) continue;
    const auto& inc = system.incidence[static_cast<std::size_t>(e)];
    if (inc.empty()) {
      throw InfeasibleError("element " + std::to_string(e) +
                            " is alive but belongs to no set");
    }
    bool covered = false;
    for (SetId s : inc) covered = covered || chosen[static_cast<std::size_t>(s)];
    if (covered) continue;
    double slack = std::numeric_limits<double>::infinity();
    for (SetId s : inc) {
      slack = std::min(slack,
                       system.cost[static_cast<std::size_t>(s)] -
                           load[static_cast<std::size_t>(s)]);
    }
    slack = std::max(slack, 0.0);
    result.duals.y[static_cast<std::size_t>(e)] = slack;
    for (SetId s : inc) load[static_cast<std::size_t>(s)] += slack;
    // Sets now tight (slack exhausted) in id order; lowest id first.
    for (SetId s : inc) {
      const auto idx = static_cast<std::size_t>(s);
      if (chosen[idx]) continue;
      if (system.cost[idx] - load[idx] <=
          num::kRelTol * std::max(1.0, system.cost[idx])) {
        chosen[idx] = 1;
        cover.push_back(s);
        if (mode == PdMode::FirstTight) break;
      }
    }
  }
  result.cover = CoverSolution::from_members(system, std::move(cover));
  return result;
}

// ---------------------------------------------------------------------------
// Exact oracle
// ---------------------------------------------------------------------------

namespace {

/// Fixed-width bitmask over element ids (any universe size).
class Mask {
 public:
  explicit Mask(std::int32_t bits)
      : words_(static_cast<std::size_t>((bits + 63) / 64), 0) {}

  void set(std::int32_t i) { words_[static_cast<std::size_t>(i) >> 6] |= bit(i); }
  bool empty() const {
    for (auto w : words_) {
      if (w) return false;
    }
    return true;
  }
  std::int32_t and_popcount(const Mask& other) const {
    std::int32_t n = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      n += std::popcount(words_[i] & other.words_[i]);
    }
    return n;
  }
  void subtract(const Mask& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  }
  void unite(const Mask& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  }
  bool covers(const Mask& target) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (target.words_[i] & ~words_[i]) return false;
    }
    return true;
  }
  bool test(std::int32_t i) const {
    return (words_[static_cast<std::size_t>(i) >> 6] & bit(i)) != 0;
  }

 private:
  static std::uint64_t bit(std::int32_t i) {
    return std::uint64_t{1} << (i & 63);
  }
  std::vector<std::uint64_t> words_;
};

struct BnbContext {
  const SetSystem& system;
  std::vector<Mask> set_mask;       // alive members per set
  std::vector<ElementId> alive;     // alive element ids
  std::uint64_t budget;             // elementary exploration steps, not calls
  std::uint64_t nodes = 0;
  double best_cost;
  std::vector<SetId> best_members;
  bool exhausted = false;
  std::vector<double> ratio_scratch;
};

/// Residual dual bound: y_e = min over active sets containing e of
/// cost / |set ∩ uncovered| is feasible for the residual instance.
double residual_bound(BnbContext& ctx, const Mask& uncovered,
                      const std::vector<SetId>& active) {
  std::vector<double>& best_ratio = ctx.ratio_scratch;
  best_ratio.assign(static_cast<std::size_t>(ctx.system.num_elements()),
                    std::numeric_limits<double>::infinity());
  for (SetId s : active) {
    const auto cnt = ctx.set_mask[static_cast<std::size_t>(s)].and_popcount(uncovered);
    if (cnt == 0) continue;
    const double ratio = ctx.system.cost[static_cast<std::size_t>(s)] / cnt;
    for (ElementId e : ctx.system.members[static_cast<std::size_t>(s)]) {
      const auto ei = static_cast<std::size_t>(e);
      best_ratio[ei] = std::min(best_ratio[ei], ratio);
    }
  }
  double sum = 0.0;
  for (ElementId e : ctx.alive) {
    if (uncovered.test(e)) sum += best_ratio[static_cast<std::size_t>(e)];
  }
  return sum;
}

void bnb(BnbContext& ctx, Mask uncovered, double cost_so_far,
         std::vector<SetId>& chosen, std::vector<SetId> active) {
  // Each node costs about |active| set scans; charging them against the
  // budget keeps oversized instances from spinning for hours.
  ctx.nodes += 1 + active.size();
  if (ctx.nodes >= ctx.budget) {
    ctx.exhausted = true;
    return;
  }
  if (uncovered.empty()) {
    if (cost_so_far < ctx.best_cost - num::kRelTol) {
      ctx.best_cost = cost_so_far;
      ctx.best_members = chosen;
    }
    return;
  }
  // Drop sets with no uncovered intersection; find the densest branch set.
  std::vector<SetId> useful;
  useful.reserve(active.size());
  SetId branch = -1;
  double best_density = -1.0;
  for (SetId s : active) {
    const auto cnt = ctx.set_mask[static_cast<std::size_t>(s)].and_popcount(uncovered);
    if (cnt == 0) continue;
    useful.push_back(s);
    const double density = cnt / ctx.system.cost[static_cast<std::size_t>(s)];
    if (density > best_density) {
      best_density = density;
      branch = s;
    }
  }
  if (branch < 0) return;  // uncovered element with no remaining set
  // Feasibility of the exclude branch: the union of remaining sets must
  // still cover everything.
  const double bound = cost_so_far + residual_bound(ctx, uncovered, useful);
  if (!(bound < ctx.best_cost - num::kRelTol * std::max(1.0, ctx.best_cost))) {
    return;
  }

  // Include branch.
  {
    Mask next = uncovered;
    next.subtract(ctx.set_mask[static_cast<std::size_t>(branch)]);
    chosen.push_back(branch);
    std::vector<SetId> next_active;
    next_active.reserve(useful.size());
    for (SetId s : useful) {
      if (s != branch) next_active.push_back(s);
    }
    bnb(ctx, std::move(next), cost_so_far + ctx.system.cost[static_cast<std::size_t>(branch)],
        chosen, next_active);
    chosen.pop_back();
    if (ctx.exhausted) return;
  }
  // Exclude branch, if still coverable.
  {
    std::vector<SetId> next_active;
    next_active.reserve(useful.size());
    Mask unionmask(ctx.system.num_elements());
    for (SetId s : useful) {
      if (s == branch) continue;
      next_active.push_back(s);
      unionmask.unite(ctx.set_mask[static_cast<std::size_t>(s)]);
    }
    if (unionmask.covers(uncovered)) {
      bnb(ctx, uncovered, cost_so_far, chosen, std::move(next_active));
    }
  }
}

}  // namespace

ExactResult exact_cover(const SetSystem& system, const UniverseState& universe,
                        std::uint64_t node_budget) {
  ExactResult result;
  if (universe.alive_count == 0) {
    result.cover = CoverSolution{};
    result.optimal = true;
    return result;
  }
  GreedyResult incumbent = greedy_cover(system, universe);

  BnbContext ctx{system, {},    universe.alive_ids(), node_budget,
                 0,      0.0,   {},                    false,
                 {}};
  ctx.set_mask.reserve(static_cast<std::size_t>(system.num_sets()));
  Mask all(system.num_elements());
  for (ElementId e : ctx.alive) all.set(e);
  std::vector<SetId> active;
  for (SetId s = 0; s < system.num_sets(); ++s) {
    Mask mask(system.num_elements());
    for (ElementId e : system.members[static_cast<std::size_t>(s)]) {
      if (universe.is_alive(e)) mask.set(e);
    }
    ctx.set_mask.push_back(std::move(mask));
    active.push_back(s);
  }
  ctx.best_cost = incumbent.cover.total_cost;
  ctx.best_members = incumbent.cover.members;
  const double root_bound = residual_bound(ctx, all, active);

  std::vector<SetId> chosen;
  bnb(ctx, all, 0.0, chosen, std::move(active));

  result.cover = CoverSolution::from_members(system, std::move(ctx.best_members));
  result.nodes = ctx.nodes;
  result.optimal = !ctx.exhausted;
  // On exhaustion the root dual bound still certifies a lower bound.
  result.lower_bound = result.optimal ? result.cover.total_cost : root_bound;
  return result;
}

ExactOracle::ExactOracle(const SetSystem& system, std::uint64_t node_budget)
    : system_(system), budget_(node_budget) {
  if (system.num_elements() > 64) {
    throw ParamError("ExactOracle memoization needs num_elements <= 64");
  }
}

std::optional<double> ExactOracle::opt_cost(const UniverseState& universe) {
  const std::uint64_t key = universe.alive_mask();
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  ExactResult res = exact_cover(system_, universe, budget_);
  if (!res.optimal) return std::nullopt;
  memo_.emplace(key, res.cover.total_cost);
  return res.cover.total_cost;
}

double dual_lower_bound(const SetSystem& system, const UniverseState& universe,
                        const DualVector& duals) {
  for (ElementId e = 0; e < system.num_elements(); ++e) {
    if (universe.is_alive(e) && duals.y[static_cast<std::size_t>(e)] < -num::kRelTol) {
      throw ValidationError("negative dual on element " + std::to_string(e));
    }
  }
  for (SetId s = 0; s < system.num_sets(); ++s) {
    double sum = 0.0;
    for (ElementId e : system.members[static_cast<std::size_t>(s)]) {
      if (universe.is_alive(e)) sum += duals.y[static_cast<std::size_t>(e)];
    }
    if (!num::approx_le(sum, system.cost[static_cast<std::size_t>(s)])) {
      throw ValidationError("dual vector infeasible on set " + std::to_string(s));
    }
  }
  double total = 0.0;
  for (ElementId e = 0; e < system.num_elements(); ++e) {
    if (universe.is_alive(e)) total += duals.y[static_cast<std::size_t>(e)];
  }
  return total;
}

RobustnessReport robustness_check(const SetSystem& system,
                                  const UniverseState& universe,
                                  const CoverSolution& X,
                                  const ChargeVector& charges,
                                  const std::vector<ElementId>& deleted,
                                  std::uint64_t oracle_budget) {
  RobustnessReport report;
  report.cover_cost = X.total_cost;
  const double d_size = static_cast<double>(deleted.size());
  if (report.cover_cost == 0.0 && !deleted.empty()) {
    throw ParamError("|D| exceeds cost(X)");
  }
  if (d_size > report.cover_cost + num::kRelTol) {
    throw ParamError("|D| exceeds cost(X): delta >= 1 is not covered");
  }
  for (ElementId e : deleted) {
    if (!universe.is_alive(e)) {
      throw ParamError("deleted element " + std::to_string(e) + " is not alive");
    }
  }
  report.delta = report.cover_cost > 0.0 ? d_size / report.cover_cost : 0.0;
  const double hn = num::harmonic(system.capacity);
  report.bound = report.delta < 1.0
                     ? hn / (1.0 - report.delta)
                     : std::numeric_limits<double>::infinity();

  UniverseState survived = universe;
  for (ElementId e : deleted) {
    survived.alive[static_cast<std::size_t>(e)] = 0;
    survived.alive_count -= 1;
  }

  double q_rest = 0.0;
  for (ElementId e = 0; e < system.num_elements(); ++e) {
    if (survived.is_alive(e)) q_rest += charges.q[static_cast<std::size_t>(e)];
  }
  report.charge_lower_bound = q_rest / hn;

  report.opt_prime = report.charge_lower_bound;
  if (survived.alive_count == 0) {
    report.opt_prime = 0.0;
  } else if (system.num_elements() <= 64) {
    ExactResult res = exact_cover(system, survived, oracle_budget);
    if (res.optimal) {
      report.opt_prime = res.cover.total_cost;
      report.opt_exact = true;
    }
  }

  if (report.cover_cost == 0.0) {
    report.ratio = 0.0;
    report.ok = true;
  } else if (report.opt_prime <= 0.0) {
    report.ratio = std::numeric_limits<double>::infinity();
    report.ok = !std::isfinite(report.bound);
  } else {
    report.ratio = report.cover_cost / report.opt_prime;
    report.ok = num::approx_le(report.ratio, report.bound);
  }
  return report;
}

}  // namespace dyncover
