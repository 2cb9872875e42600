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

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dyncover/core.hpp"
#include "dyncover/instance_io.hpp"
#include "dyncover/numeric.hpp"
#include "dyncover/rng.hpp"
#include "test_support.hpp"

using namespace dyncover;
using dyncover::testing::all_alive;
using dyncover::testing::make_system;

namespace {

Instance worked_example() {
  Instance instance;
  instance.system = make_system({{1.0, {0, 1}}, {1.0, {2, 3}}, {1.0, {0, 1, 2}}});
  for (ElementId e = 0; e < 4; ++e) instance.trace.push_back(UpdateStep::insert(e));
  instance.trace.push_back(UpdateStep::remove(3));
  return instance;
}

std::string temp_path(const char* name) {
  return std::string("/tmp/dyncover_test_") + name;
}

}  // namespace

TEST_CASE("minimal instance parses") {
  std::istringstream in(
      "# smallest legal instance\n"
      "setcover v1 n=1 C=1\n"
      "S 0 1 1\n"
      "TRACE\n"
      "+ 1\n");
  Instance instance = parse_instance_text(in);
  instance.system.validate();
  CHECK(instance.system.num_sets() == 1);
  CHECK(instance.system.num_elements() == 1);
  CHECK(instance.system.frequency == 1);
  CHECK(instance.system.aspect_ratio == 1.0);
  REQUIRE(instance.trace.size() == 1);
  CHECK(instance.trace[0].kind == UpdateStep::Kind::Insert);
  CHECK(instance.trace[0].element == 0);  // ids remapped densely
}

TEST_CASE("cost below 1/C is rejected") {
  std::istringstream in(
      "setcover v1 n=1 C=1\n"
      "S 0 0 1\n"
      "TRACE\n");
  Instance instance = parse_instance_text(in);
  CHECK_THROWS_AS(instance.system.validate(), ValidationError);
}

TEST_CASE("trace element outside every set is rejected") {
  std::istringstream in(
      "setcover v1 n=2 C=1\n"
      "S 0 1 1\n"
      "TRACE\n"
      "+ 7\n");
  CHECK_THROWS_AS(parse_instance_text(in), ValidationError);
}

TEST_CASE("duplicate elements within one set are rejected") {
  std::istringstream in(
      "setcover v1 n=2 C=1\n"
      "S 0 1 1 2 1\n"
      "TRACE\n");
  Instance instance = parse_instance_text(in);
  CHECK_THROWS_AS(instance.system.validate(), ValidationError);
}

TEST_CASE("parse errors carry line numbers") {
  std::istringstream in(
      "setcover v1 n=1 C=1\n"
      "S 0 huh 1\n");
  try {
    parse_instance_text(in);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("save then load is a fixed point (text and json)") {
  Instance instance = worked_example();
  for (const char* name : {"roundtrip.sc", "roundtrip.json"}) {
    const std::string path = temp_path(name);
    save_instance(instance, path);
    Instance loaded = load_instance(path);
    const std::string path2 = temp_path((std::string("2_") + name).c_str());
    save_instance(loaded, path2);
    std::ifstream a(path), b(path2);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(loaded.system.num_sets() == 3);
    CHECK(loaded.trace.size() == 5);
    std::remove(path.c_str());
    std::remove(path2.c_str());
  }
}

TEST_CASE("apply_update lifecycle") {
  SetSystem system = make_system({{1.0, {0, 1}}});
  UniverseState universe(system);

  SUBCASE("insert then delete then re-insert bumps the lifespan") {
    apply_update(universe, UpdateStep::insert(0));
    CHECK(universe.is_alive(0));
    CHECK(universe.lifespan[0] == 1);
    apply_update(universe, UpdateStep::remove(0));
    CHECK(universe.is_dead(0));
    apply_update(universe, UpdateStep::insert(0));
    CHECK(universe.is_alive(0));
    CHECK(universe.lifespan[0] == 2);
  }
  SUBCASE("double insert is a trace error") {
    apply_update(universe, UpdateStep::insert(0));
    CHECK_THROWS_AS(apply_update(universe, UpdateStep::insert(0)), TraceError);
  }
  SUBCASE("delete of a never-inserted element is a trace error") {
    CHECK_THROWS_AS(apply_update(universe, UpdateStep::remove(1)), TraceError);
  }
  SUBCASE("capacity bound is enforced") {
    system.capacity = 1;
    UniverseState tight(system);
    apply_update(tight, UpdateStep::insert(0));
    CHECK_THROWS_AS(apply_update(tight, UpdateStep::insert(1)), TraceError);
  }
}

TEST_CASE("is_cover on the worked example") {
  SetSystem system = make_system({{1.0, {0, 1}}, {1.0, {2, 3}}, {1.0, {0, 1, 2}}});
  UniverseState universe = all_alive(system);
  CoverSolution s3_s2 = CoverSolution::from_members(system, {1, 2});
  CoverSolution s3_s1 = CoverSolution::from_members(system, {0, 2});
  CHECK(is_cover(system, universe, s3_s2));
  CHECK_FALSE(is_cover(system, universe, s3_s1));  // element 3 uncovered

  SUBCASE("vacuous cover") {
    UniverseState empty(system);
    CHECK(is_cover(system, empty, CoverSolution{}));
  }
  SUBCASE("uncovered element") {
    UniverseState one(system);
    apply_update(one, UpdateStep::insert(0));
    CHECK_FALSE(is_cover(system, one, CoverSolution{}));
  }
}

TEST_CASE("is_cover is monotone in the solution and in deletions") {
  Rng rng(20260809);
  for (int trial = 0; trial < 50; ++trial) {
    SetSystem system = make_system({{1.0, {0, 1}},
                                    {0.5, {1, 2}},
                                    {1.0, {3}},
                                    {0.5, {0, 2, 3}}});
    UniverseState universe = all_alive(system);
    std::vector<SetId> base;
    for (SetId s = 0; s < system.num_sets(); ++s) {
      if (rng.bernoulli(0.5)) base.push_back(s);
    }
    CoverSolution small = CoverSolution::from_members(system, base);
    base.push_back(static_cast<SetId>(rng.uniform_int(0, 3)));
    CoverSolution big = CoverSolution::from_members(system, base);
    if (is_cover(system, universe, small)) {
      CHECK(is_cover(system, universe, big));
      apply_update(universe, UpdateStep::remove(
                                 static_cast<ElementId>(rng.uniform_int(0, 3))));
      CHECK(is_cover(system, universe, small));
    }
  }
}

TEST_CASE("solution_cost sums and validates") {
  SetSystem system = make_system({{0.5, {0}}, {1.0, {0}}, {1.0, {0}}});
  CoverSolution empty;
  CHECK(solution_cost(system, empty) == 0.0);
  CoverSolution half = CoverSolution::from_members(system, {0});
  CHECK(half.total_cost == 0.5);
  CoverSolution two = CoverSolution::from_members(system, {1, 2});
  CHECK(two.total_cost == 2.0);
  CoverSolution bogus;
  bogus.members = {7};
  CHECK_THROWS_AS(solution_cost(system, bogus), ValidationError);
}

TEST_CASE("replaying any accepted trace keeps universe invariants") {
  std::istringstream in(
      "setcover v1 n=2 C=2\n"
      "S 0 0.5 1 2\n"
      "S 1 1 3\n"
      "TRACE\n"
      "+ 1\n"
      "+ 3\n"
      "- 1\n"
      "+ 1\n"
      "- 3\n");
  Instance instance = parse_instance_text(in);
  instance.system.validate();
  UniverseState universe(instance.system);
  for (const UpdateStep& step : instance.trace) {
    apply_update(universe, step);
    CHECK(universe.alive_count <= universe.capacity);
  }
  CHECK(universe.alive_count == 1);
}
