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

#include <cmath>

#include "dyncover/generators.hpp"
#include "dyncover/level_greedy.hpp"
#include "dyncover/numeric.hpp"
#include "dyncover/rng.hpp"
#include "test_support.hpp"

using namespace dyncover;
using dyncover::testing::brute_force_opt;
using dyncover::testing::make_system;

TEST_CASE("level count formula") {
  // eps = 0.25, C = 1, n = 1024: L = ceil(log_1.25 1024) + ceil(10 log_1.25 4)
  //                                = 32 + 63 = 95.
  SetSystem system = make_system({{1.0, {0}}}, 1024, 1.0);
  LevelGreedy lg(system, 0.25);
  CHECK(lg.beta() == doctest::Approx(1.25));
  CHECK(lg.levels() == 95);
}

TEST_CASE("epsilon outside (0, 1/4] is a parameter error") {
  SetSystem system = make_system({{1.0, {0}}});
  CHECK_THROWS_AS(LevelGreedy(system, 0.5), ParamError);
  CHECK_THROWS_AS(LevelGreedy(system, 0.0), ParamError);
  CHECK_THROWS_AS(LevelGreedy(system, -0.1), ParamError);
}

TEST_CASE("fresh structure has no cover and audits clean") {
  SetSystem system = make_system({{1.0, {0, 1}}, {0.5, {1}}}, 4, 2.0);
  LevelGreedy lg(system, 0.2);
  CHECK(lg.current_cover().members.empty());
  CHECK(lg.current_cover_cost() == 0.0);
  CHECK(lg.audit().ok);

  SUBCASE("a system with no sets is a valid empty state") {
    SetSystem none;
    none.capacity = 4;
    none.aspect_ratio = 1.0;
    none.finalize(0);
    LevelGreedy empty(none, 0.2);
    CHECK(empty.current_cover().members.empty());
    CHECK(empty.audit().ok);
  }
}

TEST_CASE("first insertion enters the cheapest containing set at level 0") {
  // Costs 1.0 vs 0.9: the cheaper copy wins and one element at density
  // 1/0.9 < beta keeps it at level 0.
  SetSystem system = make_system({{1.0, {0}}, {0.9, {0}}}, 4, 2.0);
  LevelGreedy lg(system, 0.2);
  lg.insert(0);
  CHECK(lg.level_of_set(1) == 0);
  CHECK(lg.level_of_set(0) == -1);
  CHECK(lg.assigned_set(0) == 1);
  CHECK(lg.level_of_element(0) == 0);
  CHECK(lg.passive_level(0) == lg.levels());
  CHECK(lg.last_recourse() == 1);
  CHECK(lg.audit().ok);
}

TEST_CASE("two elements in one unit set cascade to level 3 at beta 1.25") {
  // |N_k| = 2 violates 2 < 1.25^{k+1} for k = 0, 1, 2 and settles at level 3.
  SetSystem system = make_system({{1.0, {0, 1}}}, 2, 1.0);
  LevelGreedy lg(system, 0.25);
  lg.insert(0);
  CHECK(lg.level_of_set(0) == 0);
  lg.insert(1);
  CHECK(lg.level_of_set(0) == 3);
  CHECK(lg.level_of_element(0) == 3);
  CHECK(lg.level_of_element(1) == 3);
  CHECK(lg.last_recourse() == 0);  // same set, no cover change
  CHECK(lg.audit().ok);
}

TEST_CASE("deleting the only element triggers a rebuild to the empty cover") {
  SetSystem system = make_system({{1.0, {0}}}, 1, 1.0);
  LevelGreedy lg(system, 0.2);
  lg.insert(0);
  REQUIRE(lg.current_cover().members.size() == 1);
  lg.erase(0);
  CHECK(lg.rebuild_count() == 1);
  CHECK(lg.current_cover().members.empty());
  CHECK(lg.last_recourse() == 1);  // the set left the output
  CHECK(lg.audit().ok);
}

TEST_CASE("invariant 3 trigger fires exactly at the weighted threshold") {
  WorkloadSpec spec;
  spec.n = 48;
  spec.m = 20;
  spec.f = 4;
  spec.steps = 0;
  spec.seed = 11;
  const double eps = 0.2;
  Instance instance = gen_random(spec);
  LevelGreedy lg(instance.system, eps);
  for (ElementId e = 0; e < spec.n; ++e) lg.insert(e);
  REQUIRE(lg.audit().ok);

  for (ElementId e = 0; e < spec.n - 1; ++e) {
    const double w =
        std::pow(lg.beta(), -lg.level_of_element(e)) -
        std::pow(lg.beta(), -lg.levels());
    const double wa_after = lg.active_weight() - w;
    const double wp_after = lg.passive_weight() + w;
    const bool expect_rebuild = !num::approx_le(wp_after, 2 * eps * wa_after);
    const auto rebuilds_before = lg.rebuild_count();
    lg.erase(e);
    CHECK(lg.rebuild_count() == rebuilds_before + (expect_rebuild ? 1 : 0));
    REQUIRE(lg.audit().ok);
  }
}

TEST_CASE("audit passes after every step of random traces") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    WorkloadSpec spec;
    spec.n = 14;
    spec.m = 12;
    spec.f = 4;
    spec.aspect_ratio = (seed % 2) ? 1.0 : 4.0;
    spec.steps = 400;
    spec.insert_ratio = 0.55;
    spec.seed = seed * 7 + 1;
    Instance instance = gen_random(spec);
    LevelGreedy lg(instance.system, seed % 3 == 0 ? 0.25 : 0.1);
    UniverseState universe(instance.system);
    for (const UpdateStep& step : instance.trace) {
      apply_update(universe, step);
      if (step.kind == UpdateStep::Kind::Insert) {
        lg.insert(step.element);
      } else {
        lg.erase(step.element);
      }
      AuditReport report = lg.audit();
      if (!report.ok) {
        CAPTURE(report.to_string());
        REQUIRE(report.ok);
      }
      CHECK(is_cover(instance.system, universe, lg.current_cover()));
    }
  }
}

TEST_CASE("dual lower bound is sound against the exact optimum") {
  SUBCASE("empty structure gives zero") {
    SetSystem system = make_system({{1.0, {0}}}, 4, 1.0);
    LevelGreedy lg(system, 0.2);
    CHECK(lg.dual_lower_bound() == 0.0);
  }
  SUBCASE("dead elements contribute nothing") {
    SetSystem system = make_system({{1.0, {0, 1}}}, 2, 1.0);
    LevelGreedy lg(system, 0.2);
    lg.insert(0);
    lg.insert(1);
    const double before = lg.dual_lower_bound();
    lg.erase(1);  // no rebuild: W_P stays under the slack
    if (lg.rebuild_count() == 0) CHECK(lg.dual_lower_bound() < before);
  }
  SUBCASE("random traces") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      WorkloadSpec spec;
      spec.n = 12;
      spec.m = 10;
      spec.f = 3;
      spec.steps = 200;
      spec.seed = seed * 211;
      Instance instance = gen_random(spec);
      LevelGreedy lg(instance.system, 0.2);
      UniverseState universe(instance.system);
      for (const UpdateStep& step : instance.trace) {
        apply_update(universe, step);
        if (step.kind == UpdateStep::Kind::Insert) {
          lg.insert(step.element);
        } else {
          lg.erase(step.element);
        }
        const double opt = brute_force_opt(instance.system, universe);
        CHECK(num::approx_le(lg.dual_lower_bound(), opt));
      }
    }
  }
}

TEST_CASE("cover cost stays within the logarithmic factor of the optimum") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    WorkloadSpec spec;
    spec.n = 14;
    spec.m = 12;
    spec.f = 4;
    spec.steps = 250;
    spec.seed = seed * 389 + 5;
    const double eps = 0.2;
    Instance instance = gen_random(spec);
    LevelGreedy lg(instance.system, eps);
    UniverseState universe(instance.system);
    const double factor = (1.0 + 8 * eps) * std::log(spec.n);
    for (const UpdateStep& step : instance.trace) {
      apply_update(universe, step);
      if (step.kind == UpdateStep::Kind::Insert) {
        lg.insert(step.element);
      } else {
        lg.erase(step.element);
      }
      if (universe.alive_count == 0) continue;
      const double opt = brute_force_opt(instance.system, universe);
      CHECK(num::approx_le(lg.current_cover_cost(), factor * opt));
    }
  }
}

TEST_CASE("re-inserting a dead element replaces the corpse") {
  SetSystem system = make_system({{1.0, {0, 1}}, {1.0, {1}}}, 2, 1.0);
  LevelGreedy lg(system, 0.25);
  lg.insert(0);
  lg.insert(1);
  lg.erase(0);
  if (lg.rebuild_count() == 0) {
    CHECK(lg.in_structure(0));
    CHECK_FALSE(lg.element_alive(0));
  }
  lg.insert(0);
  CHECK(lg.element_alive(0));
  CHECK(lg.passive_level(0) == lg.levels());
  CHECK(lg.audit().ok);
  CHECK_THROWS_AS(lg.insert(0), TraceError);
  CHECK_THROWS_AS(lg.erase(3), TraceError);
}

TEST_CASE("churn on the same ids exercises corpse purging and re-freezing") {
  // Tight capacity forces constant delete/re-insert of the same elements,
  // so re-insertions routinely find their previous corpse in the structure.
  WorkloadSpec spec;
  spec.n = 8;
  spec.m = 6;
  spec.f = 3;
  spec.aspect_ratio = 4.0;
  spec.steps = 2000;
  spec.insert_ratio = 0.5;
  spec.seed = 314159;
  Instance instance = gen_random(spec);
  LevelGreedy lg(instance.system, 0.25);
  UniverseState universe(instance.system);
  for (const UpdateStep& step : instance.trace) {
    apply_update(universe, step);
    if (step.kind == UpdateStep::Kind::Insert) {
      lg.insert(step.element);
    } else {
      lg.erase(step.element);
    }
    AuditReport report = lg.audit();
    if (!report.ok) {
      CAPTURE(report.to_string());
      REQUIRE(report.ok);
    }
  }
  CHECK(lg.rebuild_count() > 0);
}

TEST_CASE("large bipartite sets drive promotion cascades cleanly") {
  BipartiteReconfig recon = gen_bipartite_reconfig(16);  // sets of size 8
  LevelGreedy lg(recon.instance.system, 0.2);
  UniverseState universe(recon.instance.system);
  for (const UpdateStep& step : recon.instance.trace) {
    apply_update(universe, step);
    lg.insert(step.element);
    REQUIRE(lg.audit().ok);
    CHECK(is_cover(recon.instance.system, universe, lg.current_cover()));
  }
  // Vertex cover of K_{8,8}: the structure must not cost more than the
  // logarithmic factor over the 8-vertex optimum.
  const double opt = 8.0;
  CHECK(lg.current_cover_cost() <=
        (1.0 + 8 * 0.2) * std::log(recon.instance.system.capacity) * opt);
  // Deleting every edge must shrink the cover to empty through rebuilds.
  for (ElementId e = 0; e < recon.instance.system.num_elements(); ++e) {
    apply_update(universe, UpdateStep::remove(e));
    lg.erase(e);
    REQUIRE(lg.audit().ok);
  }
  CHECK(lg.current_cover().members.empty());
}

TEST_CASE("singleton adversary through the structure stays proportional") {
  Instance instance = gen_pd_adversarial(32, 4);
  LevelGreedy lg(instance.system, 0.2);
  UniverseState universe(instance.system);
  for (const UpdateStep& step : instance.trace) {
    apply_update(universe, step);
    if (step.kind == UpdateStep::Kind::Insert) {
      lg.insert(step.element);
    } else {
      lg.erase(step.element);
    }
    REQUIRE(lg.audit().ok);
    // Unlike frozen primal-dual, the maintained cover tracks the alive count.
    if (universe.alive_count > 0) {
      CHECK(lg.current_cover().members.size() <=
            static_cast<std::size_t>(2 * universe.alive_count));
    }
  }
}

TEST_CASE("nested set chains keep auditing clean under steal-heavy churn") {
  // S_k = {0..k}: every promotion of a larger prefix steals the covering
  // sets of all smaller ones, hammering the demotion repair.
  const std::int32_t n = 24;
  std::vector<std::pair<double, std::vector<ElementId>>> sets;
  for (std::int32_t k = 0; k < n; ++k) {
    std::vector<ElementId> members;
    for (ElementId e = 0; e <= k; ++e) members.push_back(e);
    // Larger prefixes are slightly cheaper per element but cost more.
    sets.push_back({0.5 + 0.5 * (k + 1) / n, std::move(members)});
  }
  SetSystem system = make_system(std::move(sets), n, 2.0);
  LevelGreedy lg(system, 0.2);
  UniverseState universe(system);
  Rng rng(271828);
  for (int step = 0; step < 3000; ++step) {
    const bool can_insert = universe.alive_count < n;
    const bool do_insert =
        can_insert && (universe.alive_count == 0 || rng.bernoulli(0.55));
    if (do_insert) {
      ElementId e;
      do {
        e = static_cast<ElementId>(rng.uniform_int(0, n - 1));
      } while (universe.is_alive(e));
      apply_update(universe, UpdateStep::insert(e));
      lg.insert(e);
    } else {
      auto alive = universe.alive_ids();
      const ElementId e = alive[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(alive.size()) - 1))];
      apply_update(universe, UpdateStep::remove(e));
      lg.erase(e);
    }
    AuditReport report = lg.audit();
    if (!report.ok) {
      CAPTURE(step);
      CAPTURE(report.to_string());
      REQUIRE(report.ok);
    }
    CHECK(is_cover(system, universe, lg.current_cover()));
  }
}

TEST_CASE("corpse pile-ups in one holder settle correctly") {
  // One big cheap set plus singletons; kill the big set's cargo one by one
  // and re-insert, so its covering list cycles through dead-heavy states.
  std::vector<std::pair<double, std::vector<ElementId>>> sets;
  sets.push_back({0.5, {0, 1, 2, 3, 4, 5, 6, 7}});
  for (ElementId e = 0; e < 8; ++e) sets.push_back({1.0, {e}});
  SetSystem system = make_system(std::move(sets), 8, 2.0);
  LevelGreedy lg(system, 0.25);
  UniverseState universe(system);
  for (ElementId e = 0; e < 8; ++e) {
    apply_update(universe, UpdateStep::insert(e));
    lg.insert(e);
  }
  REQUIRE(lg.audit().ok);
  Rng rng(1618);
  for (int round = 0; round < 200; ++round) {
    const auto e = static_cast<ElementId>(rng.uniform_int(0, 7));
    if (universe.is_alive(e)) {
      apply_update(universe, UpdateStep::remove(e));
      lg.erase(e);
    } else {
      apply_update(universe, UpdateStep::insert(e));
      lg.insert(e);
    }
    AuditReport report = lg.audit();
    if (!report.ok) {
      CAPTURE(round);
      CAPTURE(report.to_string());
      REQUIRE(report.ok);
    }
  }
}

TEST_CASE("hand-corrupted element level is flagged by the audit") {
  SetSystem system = make_system({{1.0, {0, 1}}, {1.0, {1, 2}}}, 3, 1.0);
  LevelGreedy lg(system, 0.2);
  lg.insert(0);
  lg.insert(1);
  lg.insert(2);
  REQUIRE(lg.audit().ok);
  lg.debug_set_element_level(0, lg.levels());
  AuditReport report = lg.audit();
  CHECK_FALSE(report.ok);
  bool mentions_rule = false;
  for (const auto& f : report.findings) {
    mentions_rule = mentions_rule || f.find("highest-level") != std::string::npos ||
                    f.find("lev differs") != std::string::npos ||
                    f.find("histogram") != std::string::npos;
  }
  CHECK(mentions_rule);
}
