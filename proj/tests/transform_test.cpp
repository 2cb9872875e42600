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

#include <doctest.h>

#include <memory>

#include "dyncover/generators.hpp"
#include "dyncover/lazy_pd.hpp"
#include "dyncover/level_greedy.hpp"
#include "dyncover/numeric.hpp"
#include "dyncover/recompute_baseline.hpp"
#include "dyncover/transform.hpp"
#include "test_support.hpp"

using namespace dyncover;
using dyncover::testing::make_system;

namespace {

/// Minimal background with a fixed approximation constant; updates keep the
/// full set family as the cover, so it is always feasible.
class FakeBackground final : public DynamicAlgorithm {
 public:
  FakeBackground(const SetSystem& system, double alpha, std::size_t cover_size)
      : system_(system), alpha_(alpha) {
    std::vector<SetId> members;
    for (std::size_t s = 0; s < cover_size; ++s) {
      members.push_back(static_cast<SetId>(s));
    }
    cover_ = CoverSolution::from_members(system, std::move(members));
  }

  void insert(ElementId) override {}
  void erase(ElementId) override {}
  CoverSolution current_cover() const override { return cover_; }
  double current_cover_cost() const override { return cover_.total_cost; }
  double approx_alpha() const override { return alpha_; }
  std::uint64_t work_counter() const override { return 0; }
  std::int64_t last_recourse() const override { return 0; }
  bool robust() const override { return true; }
  std::string name() const override { return "fake"; }

  void set_cover(std::vector<SetId> members) {
    cover_ = CoverSolution::from_members(system_, std::move(members));
  }

 private:
  const SetSystem& system_;
  double alpha_;
  CoverSolution cover_;
};

SetSystem singleton_system(std::int32_t n) {
  std::vector<std::pair<double, std::vector<ElementId>>> sets;
  for (ElementId e = 0; e < n; ++e) sets.push_back({1.0, {e}});
  return make_system(std::move(sets), n, 1.0);
}

void feed(RecourseTransform& transform, UniverseState& universe,
          const UpdateStep& step) {
  apply_update(universe, step);
  transform.step(step);
}

}  // namespace

TEST_CASE("wrap on an empty universe") {
  SetSystem system = singleton_system(4);
  TransformConfig config{TransformMode::LF, 0.5, false};
  RecourseTransform transform(
      system, std::make_unique<FakeBackground>(system, 2.0, 0), config);
  CHECK(transform.output_cover().members.empty());
  CHECK(transform.half_length() == 1);
  CHECK(transform.interval_index() == 0);
}

TEST_CASE("initial half-length formula at alpha 2, eps 0.5") {
  SetSystem system = singleton_system(64);
  TransformConfig config{TransformMode::LF, 0.5, false};
  SUBCASE("cost(B_0) = 48 gives h = 1") {
    RecourseTransform transform(
        system, std::make_unique<FakeBackground>(system, 2.0, 48), config);
    CHECK(transform.half_length() == 1);  // ceil((0.5/24)*48) = 1
  }
  SUBCASE("cost = 60 gives h = 2") {
    RecourseTransform transform(
        system, std::make_unique<FakeBackground>(system, 2.0, 60), config);
    CHECK(transform.half_length() == 2);  // ceil((0.5/24)*60) = ceil(1.25)
  }
}

TEST_CASE("mode guards") {
  SetSystem system = singleton_system(4);
  SUBCASE("LF refuses alpha below 2") {
    TransformConfig config{TransformMode::LF, 0.5, false};
    CHECK_THROWS_AS(RecourseTransform(
                        system, std::make_unique<FakeBackground>(system, 1.5, 0),
                        config),
                    ParamError);
  }
  SUBCASE("LF refuses epsilon above 0.5") {
    TransformConfig config{TransformMode::LF, 0.6, false};
    CHECK_THROWS_AS(RecourseTransform(
                        system, std::make_unique<FakeBackground>(system, 2.0, 0),
                        config),
                    ParamError);
  }
  SUBCASE("HF requires a robust background") {
    TransformConfig config{TransformMode::HF, 0.2, false};
    CHECK_THROWS_AS(RecourseTransform(system, std::make_unique<LazyPd>(system, 0.2),
                                      config),
                    ParamError);
    // level-greedy is robust and accepted
    RecourseTransform ok(system, std::make_unique<LevelGreedy>(system, 0.2),
                         config);
    CHECK(ok.scale() == 1.0);
  }
}

TEST_CASE("idle intervals produce zero recourse on covered insertions") {
  SetSystem system = singleton_system(8);
  TransformConfig config{TransformMode::LF, 0.5, false};
  RecourseTransform transform(
      system, std::make_unique<FakeBackground>(system, 2.0, 8), config);
  UniverseState universe(system);
  for (ElementId e = 0; e < 8; ++e) {
    apply_update(universe, UpdateStep::insert(e));
    TransformStepReport rep = transform.step(UpdateStep::insert(e));
    CHECK(rep.recourse == 0);  // X = B covers everything already
    CHECK(transform.uncovered_alive() == 0);
  }
}

TEST_CASE("strict naive adds one set per insertion") {
  SetSystem system = singleton_system(8);
  TransformConfig config{TransformMode::LF, 0.5, true};
  RecourseTransform transform(
      system, std::make_unique<FakeBackground>(system, 2.0, 8), config);
  UniverseState universe(system);
  apply_update(universe, UpdateStep::insert(3));
  TransformStepReport rep = transform.step(UpdateStep::insert(3));
  CHECK(rep.recourse == 0);  // set 3 is already in the output
  CHECK(transform.naive_added() == std::vector<SetId>{3});
}

TEST_CASE("recourse cap and containment hold on random traces") {
  struct Lane {
    const char* algo;
    TransformMode mode;
    double eps;
    bool strict;
  };
  const Lane lanes[] = {
      {"recompute", TransformMode::LF, 0.5, false},
      {"recompute", TransformMode::LF, 0.25, true},
      {"lazy-pd", TransformMode::LF, 0.3, false},
      {"level-greedy", TransformMode::HF, 0.2, false},
      {"level-greedy", TransformMode::HF, 0.1, true},
  };
  for (const Lane& lane : lanes) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      WorkloadSpec spec;
      spec.n = 24;
      spec.m = 20;
      spec.f = 3;
      spec.aspect_ratio = (seed % 2) ? 1.0 : 3.0;
      spec.steps = 600;
      spec.seed = seed * 7919;
      Instance instance = gen_random(spec);
      TransformConfig config{lane.mode, lane.eps, lane.strict};
      RecourseTransform transform(
          instance.system,
          make_algorithm(lane.algo, instance.system, lane.eps), config);
      UniverseState universe(instance.system);
      std::int64_t boundaries = 0;
      for (const UpdateStep& step : instance.trace) {
        apply_update(universe, step);
        TransformStepReport rep = transform.step(step);
        CHECK(rep.recourse <= transform.recourse_cap());
        CHECK(is_cover(instance.system, universe, transform.output_cover()));
        AuditReport audit = transform.audit();
        if (!audit.ok) {
          CAPTURE(audit.to_string());
          REQUIRE(audit.ok);
        }
        if (rep.interval_started) {
          ++boundaries;
          // X_{i+1} is the output; the new half-length follows the max form.
          CHECK(transform.source_snapshot().members ==
                transform.output_cover().members);
          const double m = std::max(transform.source_snapshot().total_cost,
                                    transform.target_snapshot().total_cost);
          const std::int64_t want = std::max<std::int64_t>(
              1, num::ceil_guarded(lane.eps / (12.0 * transform.scale()) * m));
          CHECK(transform.half_length() == want);
        }
      }
      CHECK(boundaries > 0);
    }
  }
}

TEST_CASE("background flip on the bipartite instance reconfigures in phase order") {
  // Left covers every edge; flip the background to the right side and watch
  // the scheduler migrate. No left vertex may leave the output while a
  // right vertex is still missing, or an edge would go uncovered.
  BipartiteReconfig recon = gen_bipartite_reconfig(8);
  const SetSystem& system = recon.instance.system;
  const std::int32_t half = 4;
  auto fake = std::make_unique<FakeBackground>(system, 2.0, 0);
  FakeBackground* bg = fake.get();
  bg->set_cover(recon.source.members);
  TransformConfig config{TransformMode::LF, 0.5, false};
  RecourseTransform transform(system, std::move(fake), config);
  UniverseState universe(system);
  for (const UpdateStep& step : recon.instance.trace) {
    apply_update(universe, step);
    transform.step(step);
  }
  bg->set_cover(recon.target.members);

  // Churn one edge to advance the scheduler until the flip completes.
  bool saw_mixed_state = false;
  for (int i = 0; i < 200; ++i) {
    const UpdateStep step = (i % 2 == 0) ? UpdateStep::remove(0) : UpdateStep::insert(0);
    apply_update(universe, step);
    transform.step(step);
    CoverSolution out = transform.output_cover();
    bool all_right = true, any_left_missing = false;
    for (SetId v = 0; v < half; ++v) {
      if (!out.contains(v)) any_left_missing = true;
    }
    for (SetId v = half; v < 2 * half; ++v) {
      if (!out.contains(v)) all_right = false;
    }
    if (any_left_missing) CHECK(all_right);
    if (all_right && !any_left_missing) saw_mixed_state = true;
    CHECK(is_cover(system, universe, out));
  }
  CHECK(saw_mixed_state);
  // The flip must eventually finish: the output settles on the right side
  // plus whatever naive additions the churned edge forced.
  CoverSolution final_out = transform.output_cover();
  for (SetId v = half; v < 2 * half; ++v) CHECK(final_out.contains(v));
}

TEST_CASE("bipartite reconfiguration keeps the output within source plus target") {
  BipartiteReconfig recon = gen_bipartite_reconfig(8);
  const double budget = recon.source.total_cost + recon.target.total_cost;
  TransformConfig config{TransformMode::LF, 0.5, false};
  RecourseTransform transform(
      recon.instance.system,
      std::make_unique<RecomputeBaseline>(recon.instance.system), config);
  UniverseState universe(recon.instance.system);
  for (const UpdateStep& step : recon.instance.trace) {
    apply_update(universe, step);
    TransformStepReport rep = transform.step(step);
    CHECK(num::approx_le(rep.output_cost, budget));
  }
}

TEST_CASE("cost drift: output grows by at most 1 + emitted cost, OPT falls by at most 1") {
  WorkloadSpec spec;
  spec.n = 14;
  spec.m = 12;
  spec.f = 3;
  spec.steps = 400;
  spec.seed = 4242;
  Instance instance = gen_random(spec);
  ExactOracle oracle(instance.system);
  TransformConfig config{TransformMode::LF, 0.5, false};
  RecourseTransform transform(
      instance.system, std::make_unique<RecomputeBaseline>(instance.system),
      config);
  UniverseState universe(instance.system);
  double prev_cost = 0.0;
  double prev_opt = 0.0;
  for (const UpdateStep& step : instance.trace) {
    apply_update(universe, step);
    TransformStepReport rep = transform.step(step);
    // Every added set costs at most 1; removals only shrink the output.
    CHECK(num::approx_le(rep.output_cost,
                         prev_cost + 1.0 + static_cast<double>(rep.recourse)));
    const auto opt = oracle.opt_cost(universe);
    REQUIRE(opt.has_value());
    CHECK(num::approx_le(prev_opt - 1.0, *opt));
    prev_cost = rep.output_cost;
    prev_opt = *opt;
  }
}

TEST_CASE("deletions keep the output unchanged outside quota emissions") {
  SetSystem system = singleton_system(6);
  TransformConfig config{TransformMode::LF, 0.5, false};
  RecourseTransform transform(
      system, std::make_unique<FakeBackground>(system, 2.0, 6), config);
  UniverseState universe(system);
  for (ElementId e = 0; e < 6; ++e) feed(transform, universe, UpdateStep::insert(e));
  const auto before = transform.output_cover().members;
  feed(transform, universe, UpdateStep::remove(2));
  CHECK(transform.output_cover().members == before);
}
