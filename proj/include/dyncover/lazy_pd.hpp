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

#ifndef DYNCOVER_LAZY_PD_HPP
#define DYNCOVER_LAZY_PD_HPP

#include <vector>

#include "dyncover/dynamic_algorithm.hpp"
#include "dyncover/static_solvers.hpp"

namespace dyncover {

/// Lazy primal-dual maintenance, a (1+eps)f-approximate background for the
/// low-frequency mode. Insertions raise the new element's dual until some
/// containing set is tight and add the first tight set. Deletions retire the
/// dead dual; once the retired mass exceeds eps times the alive mass the
/// whole structure is rebuilt by a static FirstTight pass, which keeps
/// cover cost <= f * (alive + retired) <= (1+eps) f * OPT at all times.
class LazyPd final : public DynamicAlgorithm {
 public:
  LazyPd(const SetSystem& system, double epsilon);

  void insert(ElementId e) override;
  void erase(ElementId e) override;

  CoverSolution current_cover() const override;
  double current_cover_cost() const override { return cover_cost_; }
  double approx_alpha() const override;
  std::uint64_t work_counter() const override { return work_; }
  std::int64_t last_recourse() const override { return last_recourse_; }
  bool robust() const override { return false; }
  std::string name() const override { return "lazy-pd"; }

  double alive_dual_mass() const { return alive_mass_; }
  double retired_dual_mass() const { return retired_mass_; }
  std::uint64_t rebuild_count() const { return rebuilds_; }
  DualVector alive_duals() const;

 private:
  void rebuild();
  std::int64_t cover_add(SetId s);

  const SetSystem& system_;
  double eps_;
  std::vector<double> dual_;  // current-lifespan dual per element
  std::vector<double> load_;  // per set: every dual unit ever charged to it
  std::vector<std::uint8_t> present_, alive_, in_cover_;
  std::vector<SetId> cover_members_;  // sorted
  double cover_cost_ = 0.0;
  double alive_mass_ = 0.0;
  double retired_mass_ = 0.0;  // dead duals, cleared at rebuild
  std::uint64_t work_ = 0;
  std::uint64_t rebuilds_ = 0;
  std::int64_t last_recourse_ = 0;
};

}  // namespace dyncover

#endif  // DYNCOVER_LAZY_PD_HPP
