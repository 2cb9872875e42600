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

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dyncover/experiment.hpp"
#include "dyncover/generators.hpp"
#include "dyncover/instance_io.hpp"
#include "dyncover/numeric.hpp"
#include "dyncover/static_solvers.hpp"

namespace {

using namespace dyncover;

int cmd_gen(const std::string& generator, const WorkloadSpec& spec,
            const std::string& out_path) {
  Instance instance;
  if (generator == "random") {
    instance = gen_random(spec);
  } else if (generator == "pd-adversarial") {
    instance = gen_pd_adversarial(spec.n, spec.f);
  } else if (generator == "bipartite") {
    instance = gen_bipartite_reconfig(spec.n).instance;
  } else {
    throw ParamError("unknown generator '" + generator + "'");
  }
  save_instance(instance, out_path);
  std::cout << "wrote " << out_path << " (m=" << instance.system.num_sets()
            << " elements=" << instance.system.num_elements()
            << " f=" << instance.system.frequency
            << " steps=" << instance.trace.size() << " seed=" << spec.seed
            << ")\n";
  return 0;
}

int cmd_run(const std::string& in_path, const ExperimentConfig& config) {
  Instance instance = load_instance(in_path);
  ExperimentResult result = run_experiment(instance, config);
  std::cout << "steps=" << result.steps << " max_recourse=" << result.max_recourse
            << " mean_recourse=" << result.mean_recourse
            << " max_ratio=" << result.max_ratio << " work=" << result.work_total
            << " rebuilds=" << result.rebuilds
            << " wall_s=" << result.wall_seconds << '\n';
  for (const auto& f : result.failures) std::cerr << "FAIL: " << f << '\n';
  return result.ok() ? 0 : 1;
}

int cmd_solve_static(const std::string& algo, const std::string& in_path,
                     const std::string& out_path) {
  Instance instance = load_instance(in_path);
  const SetSystem& system = instance.system;
  UniverseState universe(system);
  for (const UpdateStep& step : instance.trace) apply_update(universe, step);

  nlohmann::json j;
  j["algo"] = algo;
  j["alive"] = universe.alive_count;
  if (algo == "greedy") {
    GreedyResult g = greedy_cover(system, universe);
    ChargeAuditReport audit =
        charge_audit(system, universe, g.charges, g.cover.total_cost);
    j["cover"] = g.cover.members;
    j["cost"] = g.cover.total_cost;
    j["charges"] = g.charges.q;
    j["lower_bound"] = audit.charge_total / num::harmonic(system.capacity);
    j["charge_audit_ok"] = audit.ok;
    j["h_d"] = audit.hd_bound;
  } else if (algo == "pd-all" || algo == "pd-first") {
    PdResult r = primal_dual_cover(
        system, universe, algo == "pd-all" ? PdMode::AllTight : PdMode::FirstTight);
    j["cover"] = r.cover.members;
    j["cost"] = r.cover.total_cost;
    j["duals"] = r.duals.y;
    j["lower_bound"] = dual_lower_bound(system, universe, r.duals);
  } else if (algo == "exact") {
    ExactResult r = exact_cover(system, universe);
    j["cover"] = r.cover.members;
    j["cost"] = r.cover.total_cost;
    j["optimal"] = r.optimal;
    j["nodes"] = r.nodes;
    j["lower_bound"] = r.lower_bound;
  } else {
    throw ParamError("unknown static algorithm '" + algo + "'");
  }
  if (out_path.empty()) {
    std::cout << j.dump(1) << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write '" + out_path + "'");
    out << j.dump(1) << '\n';
    std::cout << "wrote " << out_path << '\n';
  }
  return 0;
}

int cmd_check(const std::string& in_path) {
  Instance instance = load_instance(in_path);  // validates + dry-replays
  UniverseState universe(instance.system);
  for (const UpdateStep& step : instance.trace) apply_update(universe, step);
  std::cout << "ok: n=" << instance.system.capacity
            << " m=" << instance.system.num_sets()
            << " elements=" << instance.system.num_elements()
            << " f=" << instance.system.frequency
            << " C=" << instance.system.aspect_ratio
            << " steps=" << instance.trace.size()
            << " alive_at_end=" << universe.alive_count << '\n';
  return 0;
}

int cmd_report(const std::string& in_path, const std::string& out_path) {
  ExperimentResult result = summarize_csv(in_path);
  nlohmann::json j;
  j["steps"] = result.steps;
  j["max_recourse"] = result.max_recourse;
  j["mean_recourse"] = result.mean_recourse;
  j["max_ratio"] = result.max_ratio;
  if (out_path.empty()) {
    std::cout << j.dump(1) << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write '" + out_path + "'");
    out << j.dump(1) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dyncover: dynamic set cover with worst-case recourse bounds"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance + trace");
  std::string generator = "random", gen_out = "instance.sc";
  WorkloadSpec spec;
  gen->add_option("--generator", generator, "random|pd-adversarial|bipartite");
  gen->add_option("--n", spec.n, "capacity / element count");
  gen->add_option("--m", spec.m, "number of sets (random)");
  gen->add_option("--f", spec.f, "max frequency");
  gen->add_option("--C", spec.aspect_ratio, "aspect ratio (costs in [1/C,1])");
  gen->add_option("--steps", spec.steps, "trace length (random)");
  gen->add_option("--insert-ratio", spec.insert_ratio, "insert probability");
  gen->add_option("--seed", spec.seed, "rng seed");
  gen->add_option("--out", gen_out, "output path (.json for the JSON mirror)");

  // run
  auto* run = app.add_subcommand("run", "replay a trace through a pipeline");
  std::string run_in;
  ExperimentConfig config;
  run->add_option("--in", run_in, "instance file")->required();
  run->add_option("--algo", config.algo, "level-greedy|lazy-pd|recompute");
  run->add_option("--transform", config.transform, "none|lf|hf");
  run->add_flag("--strict-naive", config.strict_naive,
                "always add a set per insertion");
  run->add_option("--epsilon", config.epsilon, "epsilon");
  run->add_option("--audit-every", config.audit_every,
                  "full structural audit cadence (0 = off)");
  run->add_option("--oracle", config.oracle, "auto|exact|dual|off");
  run->add_option("--ratio-bound", config.ratio_bound,
                  "assert cost/OPT <= bound per step (exact oracle only)");
  run->add_option("--interval-ratio-bound", config.interval_start_ratio_bound,
                  "assert the interval-start ratio bound");
  run->add_option("--out", config.csv_path, "per-step CSV path");
  run->add_option("--summary", config.summary_path, "summary JSON path");
  run->add_option("--seed", config.seed, "seed echoed into outputs");

  // solve-static
  auto* solve = app.add_subcommand("solve-static", "solve the replayed universe");
  std::string solve_algo = "greedy", solve_in, solve_out;
  solve->add_option("--algo", solve_algo, "greedy|pd-all|pd-first|exact");
  solve->add_option("--in", solve_in, "instance file")->required();
  solve->add_option("--out", solve_out, "report JSON path (stdout if empty)");

  // check
  auto* check = app.add_subcommand("check", "validate an instance + trace");
  std::string check_in;
  check->add_option("--in", check_in, "instance file")->required();

  // report
  auto* report = app.add_subcommand("report", "aggregate a per-step CSV");
  std::string report_in, report_out;
  report->add_option("--in", report_in, "per-step CSV")->required();
  report->add_option("--out", report_out, "summary JSON path (stdout if empty)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(generator, spec, gen_out);
    if (run->parsed()) return cmd_run(run_in, config);
    if (solve->parsed()) return cmd_solve_static(solve_algo, solve_in, solve_out);
    if (check->parsed()) return cmd_check(check_in);
    if (report->parsed()) return cmd_report(report_in, report_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
