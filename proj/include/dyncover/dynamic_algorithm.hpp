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

#ifndef DYNCOVER_DYNAMIC_ALGORITHM_HPP
#define DYNCOVER_DYNAMIC_ALGORITHM_HPP

#include <cstdint>
#include <memory>
#include <string>

#include "dyncover/core.hpp"

namespace dyncover {

/// Contract every background algorithm satisfies: after each insert/erase
/// the maintained cover is feasible for the alive universe, approx_alpha()
/// is a constant of the configuration, and work_counter() measures the
/// elementary operations spent so far.
class DynamicAlgorithm {
 public:
  virtual ~DynamicAlgorithm() = default;

  virtual void insert(ElementId e) = 0;
  virtual void erase(ElementId e) = 0;

  virtual CoverSolution current_cover() const = 0;
  virtual double current_cover_cost() const = 0;

  virtual double approx_alpha() const = 0;
  virtual std::uint64_t work_counter() const = 0;

  /// Cover additions plus removals caused by the most recent update.
  virtual std::int64_t last_recourse() const = 0;

  /// Whether a frozen solution of this algorithm stays near-optimal under
  /// naive maintenance; required by the high-frequency transform mode.
  virtual bool robust() const = 0;

  virtual std::string name() const = 0;
};

std::unique_ptr<DynamicAlgorithm> make_algorithm(const std::string& name,
                                                 const SetSystem& system,
                                                 double epsilon);

}  // namespace dyncover

#endif  // DYNCOVER_DYNAMIC_ALGORITHM_HPP
