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

#ifndef DYNCOVER_INSTANCE_IO_HPP
#define DYNCOVER_INSTANCE_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "dyncover/core.hpp"

namespace dyncover {

struct Instance {
  SetSystem system;
  std::vector<UpdateStep> trace;
};

/// Parses an instance file. Text format:
///
///   # comment
///   setcover v1 n=<int> C=<decimal>
///   S <id> <cost> <elem> <elem> ...
///   TRACE
///   + <elem>
///   - <elem>
///
/// A JSON mirror of the same schema is used when the path ends in ".json".
/// Ids are remapped to dense indices (sets in declaration order, elements by
/// first appearance). The system is validated and the trace dry-replayed, so
/// an accepted instance never violates universe invariants on replay.
Instance load_instance(const std::string& path);

/// Canonical serialization (dense ids, shortest round-trip cost literals).
/// save followed by load is the identity on the canonical form.
void save_instance(const Instance& instance, const std::string& path);

Instance parse_instance_text(std::istream& in);
void write_instance_text(const Instance& instance, std::ostream& out);

/// Shortest decimal literal that parses back to exactly x.
std::string format_double(double x);

}  // namespace dyncover

#endif  // DYNCOVER_INSTANCE_IO_HPP
