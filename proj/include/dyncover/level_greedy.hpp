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

#ifndef DYNCOVER_LEVEL_GREEDY_HPP
#define DYNCOVER_LEVEL_GREEDY_HPP

#include <cstdint>
#include <vector>

#include "dyncover/audit.hpp"
#include "dyncover/dynamic_algorithm.hpp"

namespace dyncover {

/// Level-based dynamic greedy. Sets carry a level in [-1, L] (-1 = outside
/// the cover); every alive element is assigned to the highest-level set
/// containing it and carries a passive level plev in [lev, L]. With
/// beta = 1 + eps the structure maintains, after every update:
///
///   1. |N_k(s)| < beta^{k+1} cost(s) for every set s and level k, where
///      N_k(s) counts the k-active members of s (lev <= k < plev);
///   2. |cov(s)| >= beta^{lev(s)} cost(s) for every cover set (cov may
///      retain dead elements);
///   3. weighted passive mass <= 2 eps * weighted active mass.
///
/// Invariant 1 is repaired by promotions (a set jumps above the violating
/// level and adopts the offending elements), invariant 2 by demotions that
/// re-home elements to strictly higher-level sets first, and invariant 3 by
/// an amortized global rebuild: dead elements are purged and the levels are
/// recomputed with one static greedy pass. Deleted elements stay in their
/// covering set with plev frozen to their level, which zeroes their dual
/// term; alive elements keep plev = L between rebuilds.
class LevelGreedy final : public DynamicAlgorithm {
 public:
  LevelGreedy(const SetSystem& system, double epsilon);

  void insert(ElementId e) override;
  void erase(ElementId e) override;

  CoverSolution current_cover() const override;
  double current_cover_cost() const override { return cover_cost_; }
  double approx_alpha() const override;
  std::uint64_t work_counter() const override { return work_; }
  std::int64_t last_recourse() const override { return last_recourse_; }
  bool robust() const override { return true; }
  std::string name() const override { return "level-greedy"; }

  /// Certified lower bound on the current optimum:
  /// sum over U+ of (beta^-lev - beta^-plev), divided by
  /// eps * (log_beta(n) + 2 + 1/eps).
  double dual_lower_bound() const;

  /// Full recount of every maintained invariant and cached aggregate.
  AuditReport audit() const;

  // -- structure inspection ------------------------------------------------
  double beta() const { return beta_; }
  int levels() const { return L_; }  // L
  int level_of_set(SetId s) const { return set_level_[static_cast<std::size_t>(s)]; }
  int level_of_element(ElementId e) const { return elem_level_[static_cast<std::size_t>(e)]; }
  int passive_level(ElementId e) const { return elem_plev_[static_cast<std::size_t>(e)]; }
  SetId assigned_set(ElementId e) const { return asn_[static_cast<std::size_t>(e)]; }
  bool in_structure(ElementId e) const { return present_[static_cast<std::size_t>(e)] != 0; }
  bool element_alive(ElementId e) const { return alive_[static_cast<std::size_t>(e)] != 0; }
  double active_weight() const;   // W_A
  double passive_weight() const;  // W_P
  std::uint64_t rebuild_count() const { return rebuilds_; }
  std::int64_t alive_count() const { return alive_count_; }

  /// Fault-injection hook for audit tests; corrupts the stored level of an
  /// element without touching any derived state.
  void debug_set_element_level(ElementId e, int lev) {
    elem_level_[static_cast<std::size_t>(e)] = static_cast<std::int16_t>(lev);
  }

 private:
  struct Scratch;

  void purge_dead(ElementId e);
  void fresh_insert(ElementId e);
  void move_element(ElementId e, SetId to, int new_lev);
  void set_element_level(ElementId e, int new_lev);
  void cov_push(SetId s, ElementId e);
  void cov_remove(SetId s, ElementId e);
  std::vector<std::int32_t>& counts(SetId s);
  int first_violation(SetId s);
  void promote(SetId s, int k);
  void settle_set(SetId t);
  void repair();
  void rebuild();
  void cover_enter(SetId s, int lev);
  void cover_leave(SetId s);
  void inv1_push(SetId s);
  void inv2_push(SetId s);
  double weighted_sums(double& wp) const;  // returns W_A, fills W_P

  const SetSystem& system_;
  double eps_, beta_;
  int L_ = 0;
  int max_cover_level_ = 0;  // ceil(log_beta(C n))
  std::vector<double> beta_pow_;      // beta^k, k in [0, L+1]
  std::vector<double> beta_neg_pow_;  // beta^-k

  // per set
  std::vector<std::int16_t> set_level_;             // -1..L
  std::vector<std::vector<ElementId>> cov_;         // assigned elements
  std::vector<std::vector<std::int32_t>> counts_;   // alive members per level
  std::vector<std::int32_t> alive_members_;         // # alive members of s

  // per element
  std::vector<std::int16_t> elem_level_, elem_plev_;
  std::vector<SetId> asn_;
  std::vector<std::int32_t> cov_pos_;
  std::vector<std::uint8_t> present_, alive_;

  // aggregates over U+
  std::vector<std::int64_t> hist_lev_, hist_plev_;
  std::int64_t present_count_ = 0, alive_count_ = 0;

  // cover cache
  std::vector<SetId> cover_members_;  // sorted
  double cover_cost_ = 0.0;

  // repair work queues with dedup flags
  std::vector<SetId> inv1_stack_, inv2_stack_;
  std::vector<std::uint8_t> in_inv1_, in_inv2_;
  std::uint64_t move_cap_ = 0;

  std::uint64_t work_ = 0, rebuilds_ = 0;
  std::int64_t last_recourse_ = 0;
};

}  // namespace dyncover

#endif  // DYNCOVER_LEVEL_GREEDY_HPP
