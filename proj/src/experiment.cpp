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

#include "dyncover/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "dyncover/lazy_pd.hpp"
#include "dyncover/level_greedy.hpp"
#include "dyncover/numeric.hpp"
#include "dyncover/recompute_baseline.hpp"
#include "dyncover/static_solvers.hpp"
#include "dyncover/transform.hpp"

namespace dyncover {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void write_csv_header(std::ostream& out) {
  out << "step,kind,element,recourse,output_size,cost_output,cost_background,"
         "opt_or_lb,ratio,interval,phase\n";
}

void write_csv_row(std::ostream& out, const StepRecord& r) {
  out << r.step << ',' << r.kind << ',' << r.element << ',' << r.recourse << ','
      << r.output_size << ',' << format_double(r.cost_output) << ','
      << format_double(r.cost_background) << ',' << format_double(r.opt_or_lb)
      << ',' << format_double(r.ratio) << ',' << r.interval << ',' << r.phase
      << '\n';
}

}  // namespace

ExperimentResult run_experiment(
    const Instance& instance, const ExperimentConfig& config,
    const std::function<void(const StepRecord&)>& on_step) {
  const SetSystem& system = instance.system;
  system.validate();
  ExperimentResult result;

  auto algorithm = make_algorithm(config.algo, system, config.epsilon);
  DynamicAlgorithm* algo = algorithm.get();
  auto* level_greedy = dynamic_cast<LevelGreedy*>(algo);
  auto* lazy_pd = dynamic_cast<LazyPd*>(algo);
  auto* recompute = dynamic_cast<RecomputeBaseline*>(algo);

  std::unique_ptr<RecourseTransform> transform;
  if (config.transform != "none") {
    TransformConfig tc;
    tc.epsilon = config.epsilon;
    tc.strict_naive = config.strict_naive;
    if (config.transform == "lf") {
      tc.mode = TransformMode::LF;
    } else if (config.transform == "hf") {
      tc.mode = TransformMode::HF;
    } else {
      throw ParamError("unknown transform '" + config.transform + "'");
    }
    transform = std::make_unique<RecourseTransform>(system, std::move(algorithm), tc);
  }

  bool use_exact = false;
  if (config.oracle == "exact") {
    if (system.num_elements() > 64) {
      throw ParamError("exact oracle needs at most 64 distinct elements");
    }
    use_exact = true;
  } else if (config.oracle == "auto") {
    use_exact = system.num_elements() <= 64 &&
                system.num_sets() <= config.oracle_max_sets;
  } else if (config.oracle != "dual" && config.oracle != "off") {
    throw ParamError("unknown oracle mode '" + config.oracle + "'");
  }
  std::unique_ptr<ExactOracle> oracle;
  if (use_exact) {
    oracle = std::make_unique<ExactOracle>(system, config.oracle_node_budget);
  }

  std::ofstream csv;
  if (!config.csv_path.empty()) {
    csv.open(config.csv_path);
    if (!csv) throw Error("cannot write '" + config.csv_path + "'");
    write_csv_header(csv);
  }

  UniverseState universe(system);
  const bool cheap_feasibility = system.num_elements() <= 2048;
  double total_recourse = 0.0;
  const auto t0 = std::chrono::steady_clock::now();

  for (std::size_t t = 0; t < instance.trace.size(); ++t) {
    const UpdateStep& update = instance.trace[t];
    StepRecord record;
    record.step = static_cast<std::int64_t>(t) + 1;
    record.kind = update.kind == UpdateStep::Kind::Insert ? '+' : '-';
    record.element = update.element;

    try {
      apply_update(universe, update);
      if (transform) {
        TransformStepReport rep = transform->step(update);
        record.recourse = rep.recourse;
        record.output_size = rep.output_size;
        record.cost_output = rep.output_cost;
        record.cost_background = rep.background_cost;
        record.interval = rep.interval;
        record.phase = rep.phase;
        record.interval_started = rep.interval_started;
      } else {
        if (update.kind == UpdateStep::Kind::Insert) {
          algo->insert(update.element);
        } else {
          algo->erase(update.element);
        }
        record.recourse = algo->last_recourse();
        CoverSolution cover = algo->current_cover();
        record.output_size = static_cast<std::int64_t>(cover.members.size());
        record.cost_output = cover.total_cost;
        record.cost_background = cover.total_cost;
      }
    } catch (const Error& e) {
      result.failures.push_back("step " + std::to_string(record.step) + ": " +
                                e.what());
      break;
    }

    // Oracle column: exact optimum when configured, else the algorithm's
    // certified dual lower bound.
    record.opt_or_lb = kNan;
    record.ratio = kNan;
    if (oracle) {
      if (auto opt = oracle->opt_cost(universe)) {
        record.opt_or_lb = *opt;
        record.opt_exact = true;
      }
    } else if (config.oracle == "dual" || config.oracle == "auto") {
      if (level_greedy) {
        record.opt_or_lb = level_greedy->dual_lower_bound();
      } else if (lazy_pd) {
        record.opt_or_lb = lazy_pd->alive_dual_mass();
      } else if (recompute) {
        record.opt_or_lb = recompute->greedy_state().charges.total() /
                           num::harmonic(system.capacity);
      }
    }
    if (universe.alive_count > 0 && record.opt_or_lb > 0.0 &&
        !std::isnan(record.opt_or_lb)) {
      record.ratio = record.cost_output / record.opt_or_lb;
    }

    // Per-step assertions.
    if (universe.alive_count > 0 && record.opt_exact) {
      result.max_ratio = std::max(result.max_ratio, record.ratio);
      if (config.ratio_bound > 0.0 &&
          !num::approx_le(record.ratio, config.ratio_bound)) {
        result.failures.push_back(
            "step " + std::to_string(record.step) + ": ratio " +
            std::to_string(record.ratio) + " exceeds bound " +
            std::to_string(config.ratio_bound));
      }
      if (record.interval_started && config.interval_start_ratio_bound > 0.0 &&
          !num::approx_le(record.ratio, config.interval_start_ratio_bound)) {
        result.failures.push_back(
            "step " + std::to_string(record.step) + ": interval-start ratio " +
            std::to_string(record.ratio) + " exceeds bound " +
            std::to_string(config.interval_start_ratio_bound));
      }
    }

    const bool audit_now =
        config.audit_every > 0 &&
        (record.step % config.audit_every == 0 || t + 1 == instance.trace.size());
    if (transform) {
      if (transform->uncovered_alive() != 0) {
        result.failures.push_back("step " + std::to_string(record.step) +
                                  ": output infeasible");
      }
      if (record.recourse > transform->recourse_cap()) {
        result.failures.push_back("step " + std::to_string(record.step) +
                                  ": recourse over the cap");
      }
      if (audit_now) {
        AuditReport rep = transform->audit();
        if (!rep.ok) {
          result.failures.push_back("step " + std::to_string(record.step) +
                                    ": transform audit: " + rep.to_string());
        }
      }
    } else if (cheap_feasibility || audit_now) {
      CoverSolution cover = algo->current_cover();
      if (!is_cover(system, universe, cover)) {
        result.failures.push_back("step " + std::to_string(record.step) +
                                  ": cover infeasible");
      }
    }
    if (level_greedy && audit_now) {
      AuditReport rep = level_greedy->audit();
      if (!rep.ok) {
        result.failures.push_back("step " + std::to_string(record.step) +
                                  ": level-greedy audit: " + rep.to_string());
      }
    }

    ++result.steps;
    total_recourse += static_cast<double>(record.recourse);
    result.max_recourse = std::max(result.max_recourse, record.recourse);
    if (csv.is_open()) write_csv_row(csv, record);
    if (on_step) on_step(record);
    if (result.failures.size() > 64) break;  // hopeless run, stop flooding
  }

  const auto t1 = std::chrono::steady_clock::now();
  result.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  result.mean_recourse =
      result.steps > 0 ? total_recourse / static_cast<double>(result.steps) : 0.0;
  DynamicAlgorithm* final_algo = transform ? &transform->background() : algo;
  result.work_total = final_algo->work_counter();
  if (auto* lg = dynamic_cast<LevelGreedy*>(final_algo)) {
    result.rebuilds = lg->rebuild_count();
  } else if (auto* lp = dynamic_cast<LazyPd*>(final_algo)) {
    result.rebuilds = lp->rebuild_count();
  }

  if (!config.summary_path.empty()) {
    nlohmann::json j;
    j["config"] = {{"algo", config.algo},
                   {"transform", config.transform},
                   {"strict_naive", config.strict_naive},
                   {"epsilon", config.epsilon},
                   {"audit_every", config.audit_every},
                   {"oracle", config.oracle},
                   {"seed", config.seed}};
    j["instance"] = {{"n", system.capacity},
                     {"m", system.num_sets()},
                     {"elements", system.num_elements()},
                     {"f", system.frequency},
                     {"C", system.aspect_ratio},
                     {"trace_steps", instance.trace.size()}};
    j["result"] = {{"steps", result.steps},
                   {"max_recourse", result.max_recourse},
                   {"mean_recourse", result.mean_recourse},
                   {"max_ratio", result.max_ratio},
                   {"work_total", result.work_total},
                   {"rebuilds", result.rebuilds},
                   {"wall_seconds", result.wall_seconds},
                   {"failures", result.failures}};
    std::ofstream out(config.summary_path);
    if (!out) throw Error("cannot write '" + config.summary_path + "'");
    out << j.dump(1) << '\n';
  }
  return result;
}

ExperimentResult summarize_csv(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw Error("cannot open '" + csv_path + "'");
  ExperimentResult result;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty CSV");
  double total_recourse = 0.0;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 11) throw ParseError("bad CSV row", line_no);
    ++result.steps;
    const auto recourse = std::stoll(fields[3]);
    total_recourse += static_cast<double>(recourse);
    result.max_recourse = std::max<std::int64_t>(result.max_recourse, recourse);
    const double ratio = std::strtod(fields[8].c_str(), nullptr);
    if (!std::isnan(ratio)) result.max_ratio = std::max(result.max_ratio, ratio);
  }
  result.mean_recourse =
      result.steps > 0 ? total_recourse / static_cast<double>(result.steps) : 0.0;
  return result;
}

}  // namespace dyncover
