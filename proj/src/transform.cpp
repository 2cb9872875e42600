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

#include "dyncover/transform.hpp"

#include <algorithm>
#include <limits>

#include "dyncover/numeric.hpp"

namespace dyncover {

RecourseTransform::RecourseTransform(const SetSystem& system,
                                     std::unique_ptr<DynamicAlgorithm> background,
                                     TransformConfig config)
    : system_(system), background_(std::move(background)), config_(config) {
  alpha_ = background_->approx_alpha();
  if (config_.mode == TransformMode::LF) {
    if (!(config_.epsilon > 0.0 && config_.epsilon <= 0.5)) {
      throw ParamError("LF transform needs epsilon in (0, 0.5]");
    }
    if (alpha_ < 2.0 - num::kRelTol) {
      throw ParamError("LF transform needs a background with alpha >= 2, got " +
                       std::to_string(alpha_));
    }
    scale_ = alpha_;
  } else {
    if (!(config_.epsilon > 0.0 && config_.epsilon < 0.25)) {
      throw ParamError("HF transform needs epsilon in (0, 1/4)");
    }
    if (!background_->robust()) {
      throw ParamError("HF transform needs a robust background, " +
                       background_->name() + " is not");
    }
    scale_ = 1.0;
  }
  recourse_cap_ =
      num::ceil_guarded(12.0 * scale_ * system_.aspect_ratio / config_.epsilon) + 1;

  const auto m = static_cast<std::size_t>(system.num_sets());
  const auto n = static_cast<std::size_t>(system.num_elements());
  in_output_.assign(m, 0);
  cover_degree_.assign(n, 0);
  alive_.assign(n, 0);
  in_x_.assign(m, 0);
  in_b_.assign(m, 0);
  in_n_.assign(m, 0);

  // Initial interval: X_0 = B_0 = the background's cover at wrap time.
  CoverSolution b0 = background_->current_cover();
  for (SetId s : b0.members) output_add(s);
  for (SetId s : b0.members) {
    in_x_[static_cast<std::size_t>(s)] = 1;
    in_b_[static_cast<std::size_t>(s)] = 1;
  }
  x_ids_ = b0.members;
  b_ids_ = b0.members;
  cost_x_ = cost_b_ = b0.total_cost;
  half_length_ = std::max<std::int64_t>(
      1, num::ceil_guarded(config_.epsilon / (12.0 * scale_) * b0.total_cost));
  quota_ = 0;
}

SetId RecourseTransform::cheapest_containing(ElementId e) const {
  const auto& inc = system_.incidence[static_cast<std::size_t>(e)];
  if (inc.empty()) {
    throw InfeasibleError("element " + std::to_string(e) + " belongs to no set");
  }
  SetId best = inc.front();
  for (SetId s : inc) {
    if (system_.cost[static_cast<std::size_t>(s)] <
        system_.cost[static_cast<std::size_t>(best)]) {
      best = s;
    }
  }
  return best;
}

std::int64_t RecourseTransform::output_add(SetId s) {
  const auto idx = static_cast<std::size_t>(s);
  if (in_output_[idx]) return 0;
  in_output_[idx] = 1;
  output_members_.insert(
      std::lower_bound(output_members_.begin(), output_members_.end(), s), s);
  output_cost_ += system_.cost[idx];
  for (ElementId e : system_.members[idx]) {
    const auto ei = static_cast<std::size_t>(e);
    if (cover_degree_[ei]++ == 0 && alive_[ei]) --uncovered_alive_;
  }
  return 1;
}

std::int64_t RecourseTransform::output_remove(SetId s) {
  const auto idx = static_cast<std::size_t>(s);
  if (!in_output_[idx]) return 0;
  in_output_[idx] = 0;
  output_members_.erase(
      std::lower_bound(output_members_.begin(), output_members_.end(), s));
  output_cost_ -= system_.cost[idx];
  for (ElementId e : system_.members[idx]) {
    const auto ei = static_cast<std::size_t>(e);
    if (--cover_degree_[ei] == 0 && alive_[ei]) ++uncovered_alive_;
  }
  return 1;
}

void RecourseTransform::note_alive(ElementId e, bool alive) {
  const auto ei = static_cast<std::size_t>(e);
  if (alive) {
    alive_[ei] = 1;
    if (cover_degree_[ei] == 0) ++uncovered_alive_;
  } else {
    alive_[ei] = 0;
    if (cover_degree_[ei] == 0) --uncovered_alive_;
  }
}

void RecourseTransform::begin_interval() {
  // The finished interval must have drained its queues and left the output
  // at exactly B_i + N_i.
  if (add_pos_ != pending_add_.size() || remove_pos_ != pending_remove_.size()) {
    throw Error("transform: pending queues not drained at interval end");
  }
  for (SetId s : output_members_) {
    if (!in_b_[static_cast<std::size_t>(s)] && !in_n_[static_cast<std::size_t>(s)]) {
      throw Error("transform: output exceeds B+N at interval end");
    }
  }
  for (SetId s : b_ids_) {
    if (!in_output_[static_cast<std::size_t>(s)]) {
      throw Error("transform: B_i escaped the output before interval end");
    }
  }
  for (SetId s : n_ids_) {
    if (!in_output_[static_cast<std::size_t>(s)]) {
      throw Error("transform: N_i escaped the output before interval end");
    }
  }

  ++interval_;
  for (SetId s : x_ids_) in_x_[static_cast<std::size_t>(s)] = 0;
  for (SetId s : b_ids_) in_b_[static_cast<std::size_t>(s)] = 0;
  for (SetId s : n_ids_) in_n_[static_cast<std::size_t>(s)] = 0;
  n_ids_.clear();

  // Resync the accumulated output cost so float drift cannot build up over
  // long runs.
  output_cost_ = 0.0;
  for (SetId s : output_members_) {
    output_cost_ += system_.cost[static_cast<std::size_t>(s)];
  }

  x_ids_ = output_members_;
  cost_x_ = output_cost_;
  for (SetId s : x_ids_) in_x_[static_cast<std::size_t>(s)] = 1;
  CoverSolution b = background_->current_cover();
  b_ids_ = std::move(b.members);
  cost_b_ = b.total_cost;
  for (SetId s : b_ids_) in_b_[static_cast<std::size_t>(s)] = 1;

  pending_add_.clear();
  pending_remove_.clear();
  add_pos_ = remove_pos_ = 0;
  for (SetId s : b_ids_) {
    if (!in_x_[static_cast<std::size_t>(s)]) pending_add_.push_back(s);
  }
  for (SetId s : x_ids_) {
    if (!in_b_[static_cast<std::size_t>(s)]) pending_remove_.push_back(s);
  }

  half_length_ = std::max<std::int64_t>(
      1, num::ceil_guarded(config_.epsilon / (12.0 * scale_) *
                           std::max(cost_x_, cost_b_)));
  phase_ = 'A';
  steps_into_phase_ = 0;
  quota_ = pending_add_.empty()
               ? 0
               : (static_cast<std::int64_t>(pending_add_.size()) + half_length_ - 1) /
                     half_length_;
}

TransformStepReport RecourseTransform::step(const UpdateStep& update) {
  TransformStepReport report;
  report.step = ++step_count_;
  std::int64_t recourse = 0;

  // The background simulates the true universe, independent of the phases.
  if (update.kind == UpdateStep::Kind::Insert) {
    background_->insert(update.element);
    note_alive(update.element, true);
  } else {
    background_->erase(update.element);
    note_alive(update.element, false);
  }

  if (update.kind == UpdateStep::Kind::Insert) {
    const ElementId e = update.element;
    const bool covered = cover_degree_[static_cast<std::size_t>(e)] > 0;
    if (config_.strict_naive || !covered) {
      const SetId s = cheapest_containing(e);
      if (!in_n_[static_cast<std::size_t>(s)]) {
        in_n_[static_cast<std::size_t>(s)] = 1;
        n_ids_.push_back(s);
      }
      recourse += output_add(s);
    } else {
      // Covered, but possibly only by sets the removing phase would drop;
      // registering one covering output set in N_i shields it.
      bool safe = false;
      for (SetId s : system_.incidence[static_cast<std::size_t>(e)]) {
        const auto si = static_cast<std::size_t>(s);
        if (in_output_[si] && (in_b_[si] || in_n_[si])) {
          safe = true;
          break;
        }
      }
      if (!safe) {
        SetId shield = -1;
        for (SetId s : system_.incidence[static_cast<std::size_t>(e)]) {
          const auto si = static_cast<std::size_t>(s);
          if (!in_output_[si]) continue;
          if (shield < 0 || system_.cost[si] < system_.cost[static_cast<std::size_t>(shield)]) {
            shield = s;
          }
        }
        in_n_[static_cast<std::size_t>(shield)] = 1;
        n_ids_.push_back(shield);
      }
    }
  }

  // Emit this step's quota of queued changes.
  for (std::int64_t q = 0; q < quota_; ++q) {
    if (phase_ == 'A') {
      if (add_pos_ >= pending_add_.size()) break;
      recourse += output_add(pending_add_[add_pos_++]);
    } else {
      if (remove_pos_ >= pending_remove_.size()) break;
      const SetId s = pending_remove_[remove_pos_++];
      // Skipped, not performed, when the set re-entered via B_i or N_i.
      if (in_b_[static_cast<std::size_t>(s)] || in_n_[static_cast<std::size_t>(s)]) {
        continue;
      }
      recourse += output_remove(s);
    }
  }

  report.interval = interval_;
  report.phase = phase_;

  ++steps_into_phase_;
  if (steps_into_phase_ >= half_length_) {
    if (phase_ == 'A') {
      if (add_pos_ != pending_add_.size()) {
        throw Error("transform: adding phase ended with a non-empty queue");
      }
      phase_ = 'R';
      steps_into_phase_ = 0;
      quota_ = pending_remove_.empty()
                   ? 0
                   : (static_cast<std::int64_t>(pending_remove_.size()) +
                      half_length_ - 1) /
                         half_length_;
    } else {
      begin_interval();
      report.interval_started = true;
    }
  }

  if (uncovered_alive_ != 0) {
    throw Error("transform: output is not a cover after step " +
                std::to_string(step_count_));
  }
  if (recourse > recourse_cap_) {
    throw Error("transform: recourse " + std::to_string(recourse) +
                " overran the cap " + std::to_string(recourse_cap_));
  }

  report.recourse = recourse;
  report.output_cost = output_cost_;
  report.background_cost = background_->current_cover_cost();
  report.output_size = output_size();
  return report;
}

CoverSolution RecourseTransform::output_cover() const {
  CoverSolution sol;
  sol.members = output_members_;
  sol.total_cost = output_cost_;
  return sol;
}

CoverSolution RecourseTransform::source_snapshot() const {
  CoverSolution sol;
  sol.members = x_ids_;
  sol.total_cost = cost_x_;
  return sol;
}

CoverSolution RecourseTransform::target_snapshot() const {
  CoverSolution sol;
  sol.members = b_ids_;
  sol.total_cost = cost_b_;
  return sol;
}

std::vector<SetId> RecourseTransform::naive_added() const { return n_ids_; }

AuditReport RecourseTransform::audit() const {
  AuditReport report;
  const auto m = static_cast<std::size_t>(system_.num_sets());
  for (std::size_t s = 0; s < m; ++s) {
    const bool out = in_output_[s] != 0;
    if (out && !(in_x_[s] || in_b_[s] || in_n_[s])) {
      report.fail("set " + std::to_string(s) + " in output but outside X+B+N");
    }
    if (phase_ == 'A') {
      if ((in_x_[s] || in_n_[s]) && !out) {
        report.fail("adding phase: set " + std::to_string(s) +
                    " of X+N missing from output");
      }
    } else {
      if ((in_b_[s] || in_n_[s]) && !out) {
        report.fail("removing phase: set " + std::to_string(s) +
                    " of B+N missing from output");
      }
    }
  }
  if (uncovered_alive_ != 0) {
    report.fail("output leaves " + std::to_string(uncovered_alive_) +
                " alive elements uncovered");
  }
  return report;
}

}  // namespace dyncover
