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

#ifndef DYNCOVER_STATIC_SOLVERS_HPP
#define DYNCOVER_STATIC_SOLVERS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dyncover/core.hpp"

namespace dyncover {

/// Per-element weights assigned by greedy when an element is first covered.
/// Scaling by 1/H_n turns the charges into a feasible dual.
struct ChargeVector {
  std::vector<double> q;  // per element id; 0 when never charged

  double total() const;
};

/// Dual values y_e for the covering LP; feasible when every set constraint
/// sum_{e in S} y_e <= cost(S) holds over alive elements.
struct DualVector {
  std::vector<double> y;
};

struct GreedyResult {
  CoverSolution cover;
  ChargeVector charges;
  std::vector<SetId> assigned_to;  // per element; -1 when not covered
  std::vector<SetId> pick_order;
  std::uint64_t work = 0;  // elementary operations performed
};

/// Classic cost-per-new-element greedy. Ties on the ratio break toward the
/// lowest set id. Assigns q(e) = cost(S_j)/c_j to every element e newly
/// covered by the j-th pick, so sum q equals the cover cost.
/// Throws InfeasibleError when an alive element belongs to no set.
GreedyResult greedy_cover(const SetSystem& system,
                          const UniverseState& universe);

struct ChargeAuditReport {
  bool ok = true;
  std::vector<std::string> violations;
  double charge_total = 0.0;           // sum over alive elements
  double max_set_excess = 0.0;         // max of (sum_q - H_{|S|} cost), <= 0 when ok
  std::vector<double> set_slack;       // H_{|S|} cost(S) - sum_{e in S} q(e)
  bool dual_feasible = true;           // q / H_n feasible for (D)
  double hd_bound = 0.0;               // H_d with d = max |S|; reported only
};

/// Verifies sum_{e in S} q(e) <= H_{|S|} cost(S) for every set and that
/// q / H_n is dual-feasible; cover_cost is checked against sum q.
ChargeAuditReport charge_audit(const SetSystem& system,
                               const UniverseState& universe,
                               const ChargeVector& charges, double cover_cost);

enum class PdMode { AllTight, FirstTight };

struct PdResult {
  CoverSolution cover;
  DualVector duals;
};

/// Primal-dual: uncovered elements in id order raise y_e until a containing
/// set becomes tight. AllTight adds every tight set, FirstTight the lowest
/// id. Cover cost <= f * sum y.
PdResult primal_dual_cover(const SetSystem& system,
                           const UniverseState& universe, PdMode mode);

struct ExactResult {
  CoverSolution cover;       // best incumbent found
  double lower_bound = 0.0;  // proven; equals cover cost when optimal
  bool optimal = false;
  std::uint64_t nodes = 0;
};

/// Branch-and-bound oracle: greedy incumbent, residual dual bound for
/// pruning, branching on the set maximizing uncovered coverage per cost.
/// When the node budget runs out the partial result carries the incumbent
/// and the proven bound with optimal=false.
ExactResult exact_cover(const SetSystem& system, const UniverseState& universe,
                        std::uint64_t node_budget = 10'000'000);

/// Memoizing per-universe wrapper around exact_cover for replay loops;
/// requires num_elements <= 64 (alive sets are keyed by bitmask).
class ExactOracle {
 public:
  ExactOracle(const SetSystem& system, std::uint64_t node_budget = 10'000'000);

  /// Optimal cost for the alive universe, or nullopt if budget exhausted.
  std::optional<double> opt_cost(const UniverseState& universe);

 private:
  const SetSystem& system_;
  std::uint64_t budget_;
  std::unordered_map<std::uint64_t, double> memo_;
};

/// Weak duality: sum of alive duals after checking feasibility.
/// Throws ValidationError naming a violated set otherwise.
double dual_lower_bound(const SetSystem& system, const UniverseState& universe,
                        const DualVector& duals);

struct RobustnessReport {
  double delta = 0.0;       // |D| / cost(X)
  double bound = 0.0;       // H_n / (1 - delta)
  double cover_cost = 0.0;  // cost(X)
  double charge_lower_bound = 0.0;  // sum q' / H_n <= OPT'
  double opt_prime = 0.0;           // exact when opt_exact, else the LB
  bool opt_exact = false;
  double ratio = 0.0;  // cover_cost / opt_prime
  bool ok = false;
};

/// Checks the robustness bound cost(X)/OPT' <= H_n/(1-delta) after deleting
/// D from the alive universe, with H_n over the declared capacity. Requires
/// |D| <= cost(X) and D alive; throws ParamError otherwise.
RobustnessReport robustness_check(const SetSystem& system,
                                  const UniverseState& universe,
                                  const CoverSolution& X,
                                  const ChargeVector& charges,
                                  const std::vector<ElementId>& deleted,
                                  std::uint64_t oracle_budget = 10'000'000);

}  // namespace dyncover

#endif  // DYNCOVER_STATIC_SOLVERS_HPP
