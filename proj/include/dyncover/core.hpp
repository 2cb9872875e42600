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

#ifndef DYNCOVER_CORE_HPP
#define DYNCOVER_CORE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dyncover {

using ElementId = std::int32_t;
using SetId = std::int32_t;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Structurally valid input that breaks a type invariant (cost bounds,
/// frequency, unknown ids, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Illegal update for the current universe (double insert, dangling delete,
/// capacity overflow).
class TraceError : public Error {
 public:
  using Error::Error;
};

/// Out-of-range configuration parameter (epsilon, delta, generator knobs).
class ParamError : public Error {
 public:
  using Error::Error;
};

/// An alive element that no set can cover.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Instance data
// ---------------------------------------------------------------------------

/// Fixed family of weighted sets over a dense element-id space. Element and
/// set ids are remapped to 0..k-1 at parse time; the capacity n (maximum
/// number of simultaneously alive elements) and aspect ratio C come from the
/// instance header. All costs lie in [1/C, 1].
struct SetSystem {
  std::vector<double> cost;                        // per set
  std::vector<std::vector<ElementId>> members;     // per set, sorted unique
  std::vector<std::vector<SetId>> incidence;       // per element, sorted
  std::int32_t frequency = 0;                      // f = max incidence size
  double aspect_ratio = 1.0;                       // C
  std::int32_t capacity = 0;                       // n

  std::int32_t num_sets() const { return static_cast<std::int32_t>(cost.size()); }
  std::int32_t num_elements() const {
    return static_cast<std::int32_t>(incidence.size());
  }

  /// Rebuilds incidence/frequency from members. Call after constructing a
  /// system by hand.
  void finalize(std::int32_t element_count);

  /// Throws ValidationError on any broken type invariant.
  void validate() const;
};

/// The adversary's view of the universe: which ids are alive, which were
/// deleted (and may be re-inserted as a fresh lifespan), and per-id
/// generation counters.
struct UniverseState {
  std::int32_t capacity = 0;
  std::int32_t alive_count = 0;
  std::vector<std::uint8_t> alive;      // per element id
  std::vector<std::int32_t> lifespan;   // per element id, 0 = never seen

  explicit UniverseState(const SetSystem& system)
      : capacity(system.capacity),
        alive(static_cast<std::size_t>(system.num_elements()), 0),
        lifespan(static_cast<std::size_t>(system.num_elements()), 0) {}

  bool is_alive(ElementId e) const {
    return alive[static_cast<std::size_t>(e)] != 0;
  }
  bool ever_seen(ElementId e) const {
    return lifespan[static_cast<std::size_t>(e)] > 0;
  }
  /// Deleted but previously seen.
  bool is_dead(ElementId e) const { return ever_seen(e) && !is_alive(e); }

  std::vector<ElementId> alive_ids() const;

  /// Bitmask of alive ids; only valid when num_elements <= 64.
  std::uint64_t alive_mask() const;
};

/// One adversarial update step.
struct UpdateStep {
  enum class Kind : std::uint8_t { Insert, Delete };
  Kind kind = Kind::Insert;
  ElementId element = 0;

  static UpdateStep insert(ElementId e) { return {Kind::Insert, e}; }
  static UpdateStep remove(ElementId e) { return {Kind::Delete, e}; }
};

/// A set of set-ids with its cached total cost.
struct CoverSolution {
  std::vector<SetId> members;  // sorted unique
  double total_cost = 0.0;

  bool contains(SetId s) const;
  static CoverSolution from_members(const SetSystem& system,
                                    std::vector<SetId> ids);
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Applies one update in place. Insert requires a dead-or-never-seen element
/// and free capacity; Delete requires an alive element. Re-insertion starts a
/// new lifespan. Throws TraceError otherwise.
void apply_update(UniverseState& universe, const UpdateStep& step);

/// True iff every alive element has at least one containing set in sol.
/// Dead elements are ignored. Total function.
bool is_cover(const SetSystem& system, const UniverseState& universe,
              const CoverSolution& sol);

/// Sum of member costs; refreshes the cache on the passed solution.
/// Throws ValidationError on an unknown set id.
double solution_cost(const SetSystem& system, CoverSolution& sol);

}  // namespace dyncover

#endif  // DYNCOVER_CORE_HPP
