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

#ifndef DYNCOVER_AUDIT_HPP
#define DYNCOVER_AUDIT_HPP

#include <string>
#include <vector>

namespace dyncover {

/// Outcome of a full structural recount. Findings list every violated
/// property with its slack; an empty list means the state is consistent.
struct AuditReport {
  bool ok = true;
  std::vector<std::string> findings;

  void fail(std::string what) {
    ok = false;
    findings.push_back(std::move(what));
  }

  std::string to_string() const {
    if (ok) return "clean";
    std::string out;
    for (const auto& f : findings) {
      out += f;
      out += '\n';
    }
    return out;
  }
};

}  // namespace dyncover

#endif  // DYNCOVER_AUDIT_HPP
