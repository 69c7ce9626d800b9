// Copyright 2026 The fdoprof Authors. All rights reserved.
//
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

#ifndef FDOPROF_SOURCE_PROFILE_HPP
#define FDOPROF_SOURCE_PROFILE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "fdoprof/counts.hpp"

namespace fdoprof {

// (line offset, discriminator) of a statement, relative to the start line of
// the enclosing function or inline frame.
struct BodyKey {
  std::uint32_t offset = 0;
  std::uint32_t discriminator = 0;

  friend bool operator==(const BodyKey &, const BodyKey &) = default;
  friend auto operator<=>(const BodyKey &, const BodyKey &) = default;
};

// Identifies one inlined callee instance: the call site plus the callee's
// debug name.
struct CallsiteKey {
  std::uint32_t offset = 0;
  std::uint32_t discriminator = 0;
  std::string callee_bfd_name;

  friend bool operator==(const CallsiteKey &, const CallsiteKey &) = default;
  friend auto operator<=>(const CallsiteKey &, const CallsiteKey &) = default;
};

// Per-function slice of the source profile.
//
// Invariants:
//   - total_count == sum of body counts plus inlined subprofile totals
//     (recompute_totals re-establishes it bottom-up).
//   - Inlined subprofiles carry no head count; the entry event belongs to the
//     out-of-line symbol.
struct FunctionProfile {
  std::string asm_name;
  std::string bfd_name;  // == asm_name unless the description says otherwise
  std::uint64_t head_count = 0;
  std::uint64_t total_count = 0;
  std::map<BodyKey, std::uint64_t> body;
  std::map<CallsiteKey, FunctionProfile> inlined;

  // Recomputes total_count from body and inlined subtrees.
  std::uint64_t recompute_totals() {
    std::uint64_t total = 0;
    for (const auto &[key, count] : body) total = sat_add(total, count);
    for (auto &[key, sub] : inlined) {
      total = sat_add(total, sub.recompute_totals());
    }
    total_count = total;
    return total;
  }

  bool totals_consistent() const {
    std::uint64_t total = 0;
    for (const auto &[key, count] : body) total = sat_add(total, count);
    for (const auto &[key, sub] : inlined) {
      if (!sub.totals_consistent()) return false;
      total = sat_add(total, sub.total_count);
    }
    return total == total_count;
  }

  friend bool operator==(const FunctionProfile &,
                         const FunctionProfile &) = default;
};

// The whole source-level profile: one FunctionProfile per out-of-line
// function, keyed and emitted by assembler name.
struct SourceProfile {
  std::map<std::string, FunctionProfile> functions;

  bool empty() const { return functions.empty(); }

  std::uint64_t total_count() const {
    std::uint64_t total = 0;
    for (const auto &[name, fp] : functions) total += fp.total_count;
    return total;
  }

  friend bool operator==(const SourceProfile &, const SourceProfile &) = default;
};

}  // namespace fdoprof

#endif  // FDOPROF_SOURCE_PROFILE_HPP
