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

#ifndef DYNCOVER_EXPERIMENT_HPP
#define DYNCOVER_EXPERIMENT_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dyncover/core.hpp"
#include "dyncover/instance_io.hpp"

namespace dyncover {

struct ExperimentConfig {
  std::string algo = "level-greedy";  // level-greedy | lazy-pd | recompute
  std::string transform = "none";     // none | lf | hf
  bool strict_naive = false;
  double epsilon = 0.2;
  std::int64_t audit_every = 0;  // 0 disables structural audits
  std::string oracle = "auto";   // auto | exact | dual | off
  std::uint64_t oracle_node_budget = 10'000'000;
  std::int32_t oracle_max_sets = 22;

  // Per-step assertions, enforced only when an exact optimum is available
  // and the universe is non-empty. Zero disables a bound.
  double ratio_bound = 0.0;
  double interval_start_ratio_bound = 0.0;

  std::string csv_path;      // per-step CSV when non-empty
  std::string summary_path;  // summary JSON when non-empty
  std::uint64_t seed = 0;    // echoed into outputs
};

/// One per-update row of the experiment stream; mirrors the CSV columns.
struct StepRecord {
  std::int64_t step = 0;
  char kind = '+';
  ElementId element = 0;
  std::int64_t recourse = 0;
  std::int64_t output_size = 0;
  double cost_output = 0.0;
  double cost_background = 0.0;
  double opt_or_lb = 0.0;  // NaN when the oracle is off
  bool opt_exact = false;
  double ratio = 0.0;  // NaN when unavailable
  std::int64_t interval = 0;
  char phase = '-';
  bool interval_started = false;
};

struct ExperimentResult {
  std::int64_t steps = 0;
  std::int64_t max_recourse = 0;
  double mean_recourse = 0.0;
  double max_ratio = 0.0;  // over steps with an exact optimum
  std::uint64_t work_total = 0;
  std::uint64_t rebuilds = 0;
  double wall_seconds = 0.0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Replays the trace through the configured pipeline, auditing and checking
/// as configured. Every failed assertion lands in result.failures with the
/// step that produced it; csv/summary files are written when requested.
ExperimentResult run_experiment(
    const Instance& instance, const ExperimentConfig& config,
    const std::function<void(const StepRecord&)>& on_step = nullptr);

/// Recomputes the aggregate block of a summary from a step CSV produced by
/// run_experiment (the `report` subcommand).
ExperimentResult summarize_csv(const std::string& csv_path);

}  // namespace dyncover

#endif  // DYNCOVER_EXPERIMENT_HPP
