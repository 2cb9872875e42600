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

#include "dyncover/level_greedy.hpp"

#include <algorithm>
#include <cmath>

#include "dyncover/numeric.hpp"
#include "dyncover/static_solvers.hpp"

namespace dyncover {

namespace {

std::int64_t symmetric_difference_size(const std::vector<SetId>& a,
                                       const std::vector<SetId>& b) {
  std::int64_t common = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++common, ++i, ++j;
    }
  }
  return static_cast<std::int64_t>(a.size() + b.size()) - 2 * common;
}

}  // namespace

LevelGreedy::LevelGreedy(const SetSystem& system, double epsilon)
    : system_(system), eps_(epsilon), beta_(1.0 + epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.25)) {
    throw ParamError("level-greedy epsilon must be in (0, 1/4]");
  }
  const double log_beta = std::log(beta_);
  const double cn = system.aspect_ratio * std::max(1, system.capacity);
  max_cover_level_ =
      static_cast<int>(std::max<std::int64_t>(0, num::ceil_guarded(std::log(cn) / log_beta)));
  const auto passive_pad = num::ceil_guarded(10.0 * std::log(1.0 / epsilon) / log_beta);
  L_ = max_cover_level_ + static_cast<int>(passive_pad);

  beta_pow_.resize(static_cast<std::size_t>(L_) + 2);
  beta_neg_pow_.resize(static_cast<std::size_t>(L_) + 2);
  for (std::size_t k = 0; k < beta_pow_.size(); ++k) {
    beta_pow_[k] = std::pow(beta_, static_cast<double>(k));
    beta_neg_pow_[k] = 1.0 / beta_pow_[k];
  }

  const auto m = static_cast<std::size_t>(system.num_sets());
  const auto n = static_cast<std::size_t>(system.num_elements());
  set_level_.assign(m, -1);
  cov_.assign(m, {});
  counts_.assign(m, {});
  alive_members_.assign(m, 0);
  elem_level_.assign(n, 0);
  elem_plev_.assign(n, 0);
  asn_.assign(n, -1);
  cov_pos_.assign(n, -1);
  present_.assign(n, 0);
  alive_.assign(n, 0);
  hist_lev_.assign(static_cast<std::size_t>(L_) + 1, 0);
  hist_plev_.assign(static_cast<std::size_t>(L_) + 1, 0);
  in_inv1_.assign(m, 0);
  in_inv2_.assign(m, 0);
  move_cap_ = static_cast<std::uint64_t>(std::max(1, L_)) *
              std::max<std::uint64_t>(1, m) *
              std::max<std::uint64_t>(1, static_cast<std::uint64_t>(system.capacity));
}

double LevelGreedy::approx_alpha() const {
  return (1.0 + eps_) * std::log(std::max(2, system_.capacity));
}

CoverSolution LevelGreedy::current_cover() const {
  CoverSolution sol;
  sol.members = cover_members_;
  sol.total_cost = cover_cost_;
  return sol;
}

std::vector<std::int32_t>& LevelGreedy::counts(SetId s) {
  auto& c = counts_[static_cast<std::size_t>(s)];
  if (c.empty()) c.assign(static_cast<std::size_t>(L_) + 2, 0);
  return c;
}

void LevelGreedy::inv1_push(SetId s) {
  if (!in_inv1_[static_cast<std::size_t>(s)]) {
    in_inv1_[static_cast<std::size_t>(s)] = 1;
    inv1_stack_.push_back(s);
  }
}

void LevelGreedy::inv2_push(SetId s) {
  if (!in_inv2_[static_cast<std::size_t>(s)]) {
    in_inv2_[static_cast<std::size_t>(s)] = 1;
    inv2_stack_.push_back(s);
  }
}

void LevelGreedy::cov_push(SetId s, ElementId e) {
  auto& cov = cov_[static_cast<std::size_t>(s)];
  cov_pos_[static_cast<std::size_t>(e)] = static_cast<std::int32_t>(cov.size());
  cov.push_back(e);
}

void LevelGreedy::cov_remove(SetId s, ElementId e) {
  auto& cov = cov_[static_cast<std::size_t>(s)];
  const auto idx = static_cast<std::size_t>(cov_pos_[static_cast<std::size_t>(e)]);
  const ElementId last = cov.back();
  cov[idx] = last;
  cov_pos_[static_cast<std::size_t>(last)] = static_cast<std::int32_t>(idx);
  cov.pop_back();
  cov_pos_[static_cast<std::size_t>(e)] = -1;
}

void LevelGreedy::cover_enter(SetId s, int lev) {
  set_level_[static_cast<std::size_t>(s)] = static_cast<std::int16_t>(lev);
  cover_members_.insert(
      std::lower_bound(cover_members_.begin(), cover_members_.end(), s), s);
  cover_cost_ += system_.cost[static_cast<std::size_t>(s)];
  ++last_recourse_;
}

void LevelGreedy::cover_leave(SetId s) {
  set_level_[static_cast<std::size_t>(s)] = -1;
  cover_members_.erase(
      std::lower_bound(cover_members_.begin(), cover_members_.end(), s));
  cover_cost_ -= system_.cost[static_cast<std::size_t>(s)];
  ++last_recourse_;
}

void LevelGreedy::set_element_level(ElementId e, int new_lev) {
  const auto idx = static_cast<std::size_t>(e);
  const int old = elem_level_[idx];
  if (old == new_lev) return;
  --hist_lev_[static_cast<std::size_t>(old)];
  ++hist_lev_[static_cast<std::size_t>(new_lev)];
  for (SetId u : system_.incidence[idx]) {
    auto& c = counts(u);
    --c[static_cast<std::size_t>(old)];
    ++c[static_cast<std::size_t>(new_lev)];
    ++work_;
    // A drop grows the low-level prefixes of every containing set.
    if (new_lev < old) inv1_push(u);
  }
  elem_level_[idx] = static_cast<std::int16_t>(new_lev);
}

void LevelGreedy::move_element(ElementId e, SetId to, int new_lev) {
  const auto idx = static_cast<std::size_t>(e);
  if (to < 0) {
    throw Error("level-greedy: element " + std::to_string(e) +
                " has no destination set (internal bug)");
  }
  const SetId from = asn_[idx];
  if (from != to) {
    cov_remove(from, e);
    cov_push(to, e);
    asn_[idx] = to;
    if (from >= 0) inv2_push(from);
  }
  set_element_level(e, new_lev);
  ++work_;
}

int LevelGreedy::first_violation(SetId s) {
  const auto idx = static_cast<std::size_t>(s);
  const std::int32_t alive_here = alive_members_[idx];
  if (alive_here == 0) return -1;
  const auto& c = counts_[idx];
  if (c.empty()) return -1;
  const double cost = system_.cost[idx];
  std::int64_t prefix = 0;
  for (int k = 0; k < L_; ++k) {
    prefix += c[static_cast<std::size_t>(k)];
    const std::int64_t limit =
        num::strict_upper_count(beta_pow_[static_cast<std::size_t>(k) + 1] * cost);
    if (limit >= alive_here) break;  // thresholds only grow with k
    if (prefix > limit) return k;
  }
  return -1;
}

void LevelGreedy::promote(SetId s, int k) {
  const auto idx = static_cast<std::size_t>(s);
  if (set_level_[idx] < 0) {
    cover_enter(s, k + 1);
  } else {
    set_level_[idx] = static_cast<std::int16_t>(k + 1);
  }
  // Adopt every alive member at level <= k. Their passive level is L, so
  // this is exactly N_k(s); plev never needs raising here.
  for (ElementId e : system_.members[idx]) {
    const auto ei = static_cast<std::size_t>(e);
    if (present_[ei] && alive_[ei] && elem_level_[ei] <= k) {
      move_element(e, s, k + 1);
    }
  }
}

void LevelGreedy::settle_set(SetId t) {
  const auto idx = static_cast<std::size_t>(t);
  const int lev = set_level_[idx];
  if (lev < 0) return;
  const double cost = system_.cost[idx];
  const auto cov_size = static_cast<std::int64_t>(cov_[idx].size());
  if (num::approx_le(beta_pow_[static_cast<std::size_t>(lev)] * cost,
                     static_cast<double>(cov_size))) {
    return;
  }

  // Demote: elements preferring a strictly higher-level set are re-homed,
  // the rest stay with t at the largest level its covering set justifies.
  struct Move {
    ElementId e;
    SetId best_other;
    int best_lev;
  };
  std::vector<Move> alive_cov;
  alive_cov.reserve(cov_[idx].size());
  std::vector<std::int64_t> bucket(static_cast<std::size_t>(lev) + 2, 0);
  std::int64_t dead_cnt = 0;
  for (ElementId e : cov_[idx]) {
    const auto ei = static_cast<std::size_t>(e);
    if (!alive_[ei]) {
      ++dead_cnt;
      continue;
    }
    SetId best = -1;
    int best_lev = -1;
    for (SetId u : system_.incidence[ei]) {
      if (u == t) continue;
      const int ul = set_level_[static_cast<std::size_t>(u)];
      if (ul > best_lev) {
        best_lev = ul;
        best = u;
      }
      ++work_;
    }
    alive_cov.push_back({e, best, best_lev});
    ++bucket[static_cast<std::size_t>(std::max(best_lev, -1) + 1)];
  }

  std::int64_t kept = dead_cnt;
  for (int b = -1; b < lev; ++b) kept += bucket[static_cast<std::size_t>(b + 1)];
  int new_lev = -1;
  for (int j = lev - 1; j >= 0; --j) {
    if (num::approx_le(beta_pow_[static_cast<std::size_t>(j)] * cost,
                       static_cast<double>(kept))) {
      new_lev = j;
      break;
    }
    kept -= bucket[static_cast<std::size_t>(j + 1)];
  }

  if (new_lev >= 0) {
    set_level_[idx] = static_cast<std::int16_t>(new_lev);
    for (const Move& mv : alive_cov) {
      if (mv.best_lev > new_lev) {
        move_element(mv.e, mv.best_other, mv.best_lev);
      } else {
        set_element_level(mv.e, new_lev);
      }
    }
    // Dead members re-freeze at the new level (lev = plev = new_lev), so a
    // corpse's recorded passive weight keeps paying for the cost share
    // beta^{-lev(t)} it justifies under invariant 2.
    for (ElementId e : cov_[idx]) {
      const auto ei = static_cast<std::size_t>(e);
      if (alive_[ei] || elem_level_[ei] == new_lev) continue;
      --hist_lev_[static_cast<std::size_t>(elem_level_[ei])];
      ++hist_lev_[static_cast<std::size_t>(new_lev)];
      --hist_plev_[static_cast<std::size_t>(elem_plev_[ei])];
      ++hist_plev_[static_cast<std::size_t>(new_lev)];
      elem_level_[ei] = static_cast<std::int16_t>(new_lev);
      elem_plev_[ei] = static_cast<std::int16_t>(new_lev);
      ++work_;
    }
  } else {
    for (const Move& mv : alive_cov) {
      move_element(mv.e, mv.best_other, mv.best_lev);
    }
    cover_leave(t);
  }
}

void LevelGreedy::repair() {
  std::uint64_t moves = 0;
  while (!inv1_stack_.empty() || !inv2_stack_.empty()) {
    if (++moves > move_cap_) {
      throw Error("level-greedy repair exceeded its move cap (internal bug)");
    }
    if (!inv1_stack_.empty()) {
      const SetId s = inv1_stack_.back();
      inv1_stack_.pop_back();
      in_inv1_[static_cast<std::size_t>(s)] = 0;
      const int k = first_violation(s);
      if (k >= 0) {
        promote(s, k);
        inv1_push(s);  // cascade upward until clean
      }
    } else {
      const SetId t = inv2_stack_.back();
      inv2_stack_.pop_back();
      in_inv2_[static_cast<std::size_t>(t)] = 0;
      settle_set(t);
    }
  }
}

void LevelGreedy::fresh_insert(ElementId e) {
  const auto idx = static_cast<std::size_t>(e);
  const auto& inc = system_.incidence[idx];
  if (inc.empty()) {
    throw InfeasibleError("element " + std::to_string(e) + " belongs to no set");
  }
  SetId target = -1;
  int target_lev = -1;
  for (SetId s : inc) {
    const int sl = set_level_[static_cast<std::size_t>(s)];
    if (sl > target_lev) {
      target_lev = sl;
      target = s;
    }
    ++work_;
  }
  if (target_lev < 0) {
    // No containing set is in the cover: the cheapest one enters at level 0.
    target = inc.front();
    for (SetId s : inc) {
      if (system_.cost[static_cast<std::size_t>(s)] <
          system_.cost[static_cast<std::size_t>(target)]) {
        target = s;
      }
    }
    cover_enter(target, 0);
    target_lev = 0;
  }

  present_[idx] = 1;
  alive_[idx] = 1;
  ++present_count_;
  ++alive_count_;
  asn_[idx] = target;
  cov_push(target, e);
  elem_level_[idx] = static_cast<std::int16_t>(target_lev);
  elem_plev_[idx] = static_cast<std::int16_t>(L_);
  ++hist_lev_[static_cast<std::size_t>(target_lev)];
  ++hist_plev_[static_cast<std::size_t>(L_)];
  for (SetId u : inc) {
    ++counts(u)[static_cast<std::size_t>(target_lev)];
    ++alive_members_[static_cast<std::size_t>(u)];
    inv1_push(u);
    ++work_;
  }
}

void LevelGreedy::purge_dead(ElementId e) {
  const auto idx = static_cast<std::size_t>(e);
  const SetId holder = asn_[idx];
  cov_remove(holder, e);
  asn_[idx] = -1;
  --hist_lev_[static_cast<std::size_t>(elem_level_[idx])];
  --hist_plev_[static_cast<std::size_t>(elem_plev_[idx])];
  present_[idx] = 0;
  --present_count_;
  if (set_level_[static_cast<std::size_t>(holder)] >= 0) inv2_push(holder);
}

void LevelGreedy::insert(ElementId e) {
  const auto idx = static_cast<std::size_t>(e);
  last_recourse_ = 0;
  ++work_;
  if (e < 0 || idx >= present_.size()) {
    throw TraceError("level-greedy: unknown element " + std::to_string(e));
  }
  if (present_[idx] && alive_[idx]) {
    throw TraceError("level-greedy: insert of alive element");
  }
  if (present_[idx]) purge_dead(e);  // re-insertion replaces the corpse
  fresh_insert(e);
  repair();
  // Demotions re-freeze corpses downward, which can grow the passive mass.
  double wp = 0.0;
  const double wa = weighted_sums(wp);
  if (!num::approx_le(wp, 2.0 * eps_ * wa)) rebuild();
}

void LevelGreedy::erase(ElementId e) {
  const auto idx = static_cast<std::size_t>(e);
  last_recourse_ = 0;
  ++work_;
  if (e < 0 || idx >= present_.size()) {
    throw TraceError("level-greedy: unknown element " + std::to_string(e));
  }
  if (!present_[idx] || !alive_[idx]) {
    throw TraceError("level-greedy: delete of non-alive element");
  }
  alive_[idx] = 0;
  --alive_count_;
  const int lev = elem_level_[idx];
  const int old_plev = elem_plev_[idx];
  // Death freezes plev at lev: the element's dual term becomes zero and its
  // weight moves from the active to the passive aggregate.
  elem_plev_[idx] = static_cast<std::int16_t>(lev);
  --hist_plev_[static_cast<std::size_t>(old_plev)];
  ++hist_plev_[static_cast<std::size_t>(lev)];
  for (SetId u : system_.incidence[idx]) {
    --counts(u)[static_cast<std::size_t>(lev)];
    --alive_members_[static_cast<std::size_t>(u)];
    ++work_;
  }

  double wp = 0.0;
  const double wa = weighted_sums(wp);
  if (!num::approx_le(wp, 2.0 * eps_ * wa)) rebuild();
}

double LevelGreedy::weighted_sums(double& wp) const {
  double lev_mass = 0.0, plev_mass = 0.0;
  for (int k = 0; k <= L_; ++k) {
    lev_mass += beta_neg_pow_[static_cast<std::size_t>(k)] *
                static_cast<double>(hist_lev_[static_cast<std::size_t>(k)]);
    plev_mass += beta_neg_pow_[static_cast<std::size_t>(k)] *
                 static_cast<double>(hist_plev_[static_cast<std::size_t>(k)]);
  }
  wp = plev_mass - static_cast<double>(present_count_) *
                       beta_neg_pow_[static_cast<std::size_t>(L_)];
  return lev_mass - plev_mass;  // W_A
}

double LevelGreedy::active_weight() const {
  double wp = 0.0;
  return weighted_sums(wp);
}

double LevelGreedy::passive_weight() const {
  double wp = 0.0;
  weighted_sums(wp);
  return wp;
}

double LevelGreedy::dual_lower_bound() const {
  double wp = 0.0;
  const double wa = weighted_sums(wp);
  const double log_beta_n =
      std::log(std::max(1, system_.capacity)) / std::log(beta_);
  const double denom = eps_ * (log_beta_n + 2.0 + 1.0 / eps_);
  return wa / denom;
}

void LevelGreedy::rebuild() {
  ++rebuilds_;
  const std::vector<SetId> before = cover_members_;

  UniverseState universe(system_);
  for (std::size_t e = 0; e < alive_.size(); ++e) {
    if (present_[e] && alive_[e]) {
      universe.alive[e] = 1;
      ++universe.alive_count;
    }
  }
  GreedyResult fresh = greedy_cover(system_, universe);
  work_ += fresh.work;

  std::fill(set_level_.begin(), set_level_.end(), -1);
  for (auto& cov : cov_) cov.clear();
  for (auto& c : counts_) {
    if (!c.empty()) std::fill(c.begin(), c.end(), 0);
  }
  std::fill(alive_members_.begin(), alive_members_.end(), 0);
  std::fill(hist_lev_.begin(), hist_lev_.end(), 0);
  std::fill(hist_plev_.begin(), hist_plev_.end(), 0);
  std::fill(asn_.begin(), asn_.end(), -1);
  std::fill(cov_pos_.begin(), cov_pos_.end(), -1);
  present_ = alive_;
  present_count_ = alive_count_;

  // Selected sets re-enter at lev = floor(log_beta(|cov|/cost)); the greedy
  // pick order makes every invariant hold on the rebuilt state.
  std::vector<std::int32_t> picked_size(
      static_cast<std::size_t>(system_.num_sets()), 0);
  for (std::size_t e = 0; e < alive_.size(); ++e) {
    if (present_[e]) {
      ++picked_size[static_cast<std::size_t>(
          fresh.assigned_to[static_cast<std::size_t>(e)])];
    }
  }
  const double log_beta = std::log(beta_);
  for (SetId s : fresh.cover.members) {
    const auto si = static_cast<std::size_t>(s);
    const double rate = picked_size[si] / system_.cost[si];
    auto lev = num::floor_guarded(std::log(rate) / log_beta);
    lev = std::clamp<std::int64_t>(lev, 0, max_cover_level_);
    set_level_[si] = static_cast<std::int16_t>(lev);
  }
  cover_members_ = fresh.cover.members;
  cover_cost_ = fresh.cover.total_cost;

  for (std::size_t e = 0; e < alive_.size(); ++e) {
    if (!present_[e]) continue;
    const SetId s = fresh.assigned_to[e];
    const int lev = set_level_[static_cast<std::size_t>(s)];
    asn_[e] = s;
    cov_push(s, static_cast<ElementId>(e));
    elem_level_[e] = static_cast<std::int16_t>(lev);
    elem_plev_[e] = static_cast<std::int16_t>(L_);
    ++hist_lev_[static_cast<std::size_t>(lev)];
    ++hist_plev_[static_cast<std::size_t>(L_)];
    for (SetId u : system_.incidence[e]) {
      ++counts(u)[static_cast<std::size_t>(lev)];
      ++alive_members_[static_cast<std::size_t>(u)];
    }
    ++work_;
  }
  last_recourse_ += symmetric_difference_size(before, cover_members_);
}

AuditReport LevelGreedy::audit() const {
  AuditReport report;
  const auto m = static_cast<std::size_t>(system_.num_sets());
  const auto n = static_cast<std::size_t>(system_.num_elements());

  std::vector<std::int64_t> hl(static_cast<std::size_t>(L_) + 1, 0);
  std::vector<std::int64_t> hp(static_cast<std::size_t>(L_) + 1, 0);
  std::int64_t present_cnt = 0, alive_cnt = 0;

  for (std::size_t e = 0; e < n; ++e) {
    if (!present_[e]) continue;
    ++present_cnt;
    const int lev = elem_level_[e];
    const int plev = elem_plev_[e];
    if (!(0 <= lev && lev <= plev && plev <= L_)) {
      report.fail("element " + std::to_string(e) + ": level bounds broken (lev=" +
                  std::to_string(lev) + " plev=" + std::to_string(plev) + ")");
      continue;
    }
    ++hl[static_cast<std::size_t>(lev)];
    ++hp[static_cast<std::size_t>(plev)];
    const SetId s = asn_[e];
    if (s < 0 || s >= system_.num_sets()) {
      report.fail("element " + std::to_string(e) + ": bad assignment");
      continue;
    }
    const auto& mem = system_.members[static_cast<std::size_t>(s)];
    if (!std::binary_search(mem.begin(), mem.end(), static_cast<ElementId>(e))) {
      report.fail("element " + std::to_string(e) +
                  " assigned to a set that does not contain it");
    }
    const auto& cov = cov_[static_cast<std::size_t>(s)];
    const auto pos = cov_pos_[e];
    if (pos < 0 || pos >= static_cast<std::int32_t>(cov.size()) ||
        cov[static_cast<std::size_t>(pos)] != static_cast<ElementId>(e)) {
      report.fail("element " + std::to_string(e) + ": covering-list position broken");
    }
    if (alive_[e]) {
      ++alive_cnt;
      if (set_level_[static_cast<std::size_t>(s)] < 0) {
        report.fail("alive element " + std::to_string(e) +
                    " assigned to a set outside the cover");
      }
      if (lev != set_level_[static_cast<std::size_t>(s)]) {
        report.fail("alive element " + std::to_string(e) +
                    ": lev differs from its set's level");
      }
      int max_lev = -1;
      for (SetId u : system_.incidence[e]) {
        max_lev = std::max(max_lev,
                           static_cast<int>(set_level_[static_cast<std::size_t>(u)]));
      }
      if (lev != max_lev) {
        report.fail("alive element " + std::to_string(e) +
                    ": not assigned to the highest-level containing set (lev=" +
                    std::to_string(lev) + " max=" + std::to_string(max_lev) + ")");
      }
    } else if (lev != plev) {
      report.fail("dead element " + std::to_string(e) +
                  ": plev not frozen to lev at death");
    }
  }

  if (present_cnt != present_count_ || alive_cnt != alive_count_) {
    report.fail("cached element counts differ from recount");
  }
  for (int k = 0; k <= L_; ++k) {
    if (hl[static_cast<std::size_t>(k)] != hist_lev_[static_cast<std::size_t>(k)] ||
        hp[static_cast<std::size_t>(k)] != hist_plev_[static_cast<std::size_t>(k)]) {
      report.fail("level histogram stale at level " + std::to_string(k));
      break;
    }
  }

  // Per-set recount. The scan for invariant 1 stops once the threshold
  // beta^{k+1} cost clears the set's alive-member count, so the audit costs
  // O(sum |s| + sum_s log_beta(|s| C)) overall.
  std::vector<std::int32_t> diff(static_cast<std::size_t>(L_) + 2, 0);
  std::vector<std::int32_t> per_level(static_cast<std::size_t>(L_) + 1, 0);
  std::vector<int> touched;
  double cover_cost_recount = 0.0;
  std::int64_t cover_size_recount = 0;
  for (std::size_t s = 0; s < m; ++s) {
    const int lev = set_level_[s];
    const double cost = system_.cost[s];
    for (std::size_t i = 0; i < cov_[s].size(); ++i) {
      const ElementId e = cov_[s][i];
      const auto ei = static_cast<std::size_t>(e);
      if (!present_[ei] || asn_[ei] != static_cast<SetId>(s) ||
          cov_pos_[ei] != static_cast<std::int32_t>(i)) {
        report.fail("set " + std::to_string(s) + ": covering list entry " +
                    std::to_string(e) + " inconsistent");
      }
    }
    if (lev >= 0) {
      ++cover_size_recount;
      cover_cost_recount += cost;
      const double need = beta_pow_[static_cast<std::size_t>(lev)] * cost;
      if (!num::approx_le(need, static_cast<double>(cov_[s].size()))) {
        report.fail("set " + std::to_string(s) + ": invariant 2 broken (|cov|=" +
                    std::to_string(cov_[s].size()) + " < beta^lev cost=" +
                    std::to_string(need) + ")");
      }
      if (lev > max_cover_level_) {
        report.fail("set " + std::to_string(s) + ": level above ceil(log_beta(Cn))");
      }
      if (!std::binary_search(cover_members_.begin(), cover_members_.end(),
                              static_cast<SetId>(s))) {
        report.fail("set " + std::to_string(s) + ": in cover but not in member list");
      }
    } else if (!cov_[s].empty()) {
      report.fail("set " + std::to_string(s) + ": outside the cover but has cov entries");
    }

    // Invariant 1 recount via a difference array over [lev, plev).
    std::int32_t alive_here = 0;
    for (ElementId e : system_.members[s]) {
      const auto ei = static_cast<std::size_t>(e);
      if (!present_[ei] || !alive_[ei]) continue;
      ++alive_here;
      const int el = elem_level_[ei];
      const int ep = elem_plev_[ei];
      ++diff[static_cast<std::size_t>(el)];
      --diff[static_cast<std::size_t>(ep)];
      ++per_level[static_cast<std::size_t>(el)];
      touched.push_back(el);
      touched.push_back(ep);
    }
    if (alive_here != alive_members_[s]) {
      report.fail("set " + std::to_string(s) + ": alive-member cache stale");
    }
    std::int64_t prefix = 0;
    for (int k = 0; k < L_; ++k) {
      prefix += diff[static_cast<std::size_t>(k)];
      const std::int64_t limit =
          num::strict_upper_count(beta_pow_[static_cast<std::size_t>(k) + 1] * cost);
      if (limit >= alive_here) break;
      if (prefix > limit) {
        report.fail("set " + std::to_string(s) + ": invariant 1 broken at level " +
                    std::to_string(k) + " (|N_k|=" + std::to_string(prefix) +
                    " limit=" + std::to_string(limit) + ")");
        break;
      }
    }
    const auto& cache = counts_[s];
    for (int t : touched) {
      const auto want = per_level[static_cast<std::size_t>(t)];
      const auto got =
          cache.empty() ? 0 : cache[static_cast<std::size_t>(t)];
      if (want != got) {
        report.fail("set " + std::to_string(s) + ": per-level count cache stale at " +
                    std::to_string(t));
        break;
      }
    }
    for (int t : touched) {
      diff[static_cast<std::size_t>(t)] = 0;
      per_level[static_cast<std::size_t>(t)] = 0;
    }
    touched.clear();
  }

  if (cover_size_recount != static_cast<std::int64_t>(cover_members_.size()) ||
      !num::approx_eq(cover_cost_recount, cover_cost_)) {
    report.fail("cover cache (size or cost) differs from recount");
  }

  // Invariant 3 on the recounted histograms.
  double lev_mass = 0.0, plev_mass = 0.0;
  for (int k = 0; k <= L_; ++k) {
    lev_mass += beta_neg_pow_[static_cast<std::size_t>(k)] *
                static_cast<double>(hl[static_cast<std::size_t>(k)]);
    plev_mass += beta_neg_pow_[static_cast<std::size_t>(k)] *
                 static_cast<double>(hp[static_cast<std::size_t>(k)]);
  }
  const double wa = lev_mass - plev_mass;
  const double wp = plev_mass - static_cast<double>(present_cnt) *
                                    beta_neg_pow_[static_cast<std::size_t>(L_)];
  if (!num::approx_le(wp, 2.0 * eps_ * wa)) {
    report.fail("invariant 3 broken: W_P=" + std::to_string(wp) + " > 2 eps W_A=" +
                std::to_string(2.0 * eps_ * wa));
  }
  return report;
}

}  // namespace dyncover
