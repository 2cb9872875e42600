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

#ifndef DYNCOVER_TRANSFORM_HPP
#define DYNCOVER_TRANSFORM_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "dyncover/audit.hpp"
#include "dyncover/dynamic_algorithm.hpp"

namespace dyncover {

enum class TransformMode { LF, HF };

struct TransformConfig {
  TransformMode mode = TransformMode::LF;
  double epsilon = 0.2;
  bool strict_naive = false;  // always add a set per insertion (worst case)
};

struct TransformStepReport {
  std::int64_t step = 0;
  std::int64_t recourse = 0;  // sets added + removed from the output
  double output_cost = 0.0;
  double background_cost = 0.0;
  std::int64_t output_size = 0;
  std::int64_t interval = 0;
  char phase = 'A';  // 'A' adding, 'R' removing
  bool interval_started = false;  // a new interval began at the end of this step
};

/// Black-box low-recourse wrapper. The background algorithm sees every
/// update immediately; the update sequence is cut into intervals, and during
/// interval i the output is reconfigured from the snapshot X_i (output at
/// interval start) to B_i (background cover at interval start) in an adding
/// phase followed by a removing phase of h steps each, emitting at most
/// ceil(|pending|/h) queued changes per step. Insertions are covered
/// naively; the per-step recourse never exceeds ceil(12*scale*C/eps)+1 with
/// scale = alpha in LF mode and 1 in HF mode (HF stretches the intervals by
/// the background's approximation factor and needs a robust background).
class RecourseTransform {
 public:
  RecourseTransform(const SetSystem& system,
                    std::unique_ptr<DynamicAlgorithm> background,
                    TransformConfig config);

  TransformStepReport step(const UpdateStep& update);

  CoverSolution output_cover() const;
  double output_cost() const { return output_cost_; }
  std::int64_t output_size() const {
    return static_cast<std::int64_t>(output_members_.size());
  }
  /// Alive elements not covered by the output; feasibility means zero.
  /// Maintained with exact integer counters.
  std::int64_t uncovered_alive() const { return uncovered_alive_; }

  const DynamicAlgorithm& background() const { return *background_; }
  DynamicAlgorithm& background() { return *background_; }

  std::int64_t recourse_cap() const { return recourse_cap_; }
  double scale() const { return scale_; }
  std::int64_t interval_index() const { return interval_; }
  std::int64_t half_length() const { return half_length_; }
  char phase() const { return phase_; }

  CoverSolution source_snapshot() const;  // X_i
  CoverSolution target_snapshot() const;  // B_i
  std::vector<SetId> naive_added() const; // N_i

  /// Set-algebra containment checks for the current phase.
  AuditReport audit() const;

 private:
  void begin_interval();
  std::int64_t output_add(SetId s);
  std::int64_t output_remove(SetId s);
  void note_alive(ElementId e, bool alive);
  SetId cheapest_containing(ElementId e) const;

  const SetSystem& system_;
  std::unique_ptr<DynamicAlgorithm> background_;
  TransformConfig config_;
  double alpha_ = 0.0;
  double scale_ = 1.0;
  std::int64_t recourse_cap_ = 0;

  // output cover + exact feasibility counters
  std::vector<std::uint8_t> in_output_;
  std::vector<SetId> output_members_;  // sorted
  double output_cost_ = 0.0;
  std::vector<std::int32_t> cover_degree_;  // per element, output sets containing it
  std::vector<std::uint8_t> alive_;
  std::int64_t uncovered_alive_ = 0;

  // interval state
  std::int64_t interval_ = 0;
  std::int64_t half_length_ = 1;
  std::int64_t steps_into_phase_ = 0;
  char phase_ = 'A';
  std::int64_t quota_ = 0;
  std::vector<SetId> pending_add_, pending_remove_;
  std::size_t add_pos_ = 0, remove_pos_ = 0;
  std::vector<std::uint8_t> in_x_, in_b_, in_n_;
  std::vector<SetId> x_ids_, b_ids_, n_ids_;
  double cost_x_ = 0.0, cost_b_ = 0.0;

  std::int64_t step_count_ = 0;
};

}  // namespace dyncover

#endif  // DYNCOVER_TRANSFORM_HPP
