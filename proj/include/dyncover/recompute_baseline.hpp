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

#ifndef DYNCOVER_RECOMPUTE_BASELINE_HPP
#define DYNCOVER_RECOMPUTE_BASELINE_HPP

#include "dyncover/dynamic_algorithm.hpp"
#include "dyncover/static_solvers.hpp"

namespace dyncover {

/// Reruns static greedy from scratch after every update. Trivially correct,
/// alpha = H_n, robust (greedy covers are), and deliberately slow: the
/// simplest black box the recourse transformation can wrap.
class RecomputeBaseline final : public DynamicAlgorithm {
 public:
  explicit RecomputeBaseline(const SetSystem& system);

  void insert(ElementId e) override;
  void erase(ElementId e) override;

  CoverSolution current_cover() const override { return last_.cover; }
  double current_cover_cost() const override { return last_.cover.total_cost; }
  double approx_alpha() const override;
  std::uint64_t work_counter() const override { return work_; }
  std::int64_t last_recourse() const override { return last_recourse_; }
  bool robust() const override { return true; }
  std::string name() const override { return "recompute"; }

  const GreedyResult& greedy_state() const { return last_; }

 private:
  void recompute();

  const SetSystem& system_;
  UniverseState universe_;
  GreedyResult last_;
  std::uint64_t work_ = 0;
  std::int64_t last_recourse_ = 0;
};

}  // namespace dyncover

#endif  // DYNCOVER_RECOMPUTE_BASELINE_HPP
