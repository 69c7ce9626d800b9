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

#ifndef FDOPROF_CFG_HPP
#define FDOPROF_CFG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fdoprof/source_profile.hpp"

namespace fdoprof {

struct CfgBlock {
  std::uint32_t id = 0;
  std::vector<BodyKey> statements;  // may be empty (e.g. latch blocks)

  friend bool operator==(const CfgBlock &, const CfgBlock &) = default;
};

struct CfgEdge {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;

  friend bool operator==(const CfgEdge &, const CfgEdge &) = default;
  friend auto operator<=>(const CfgEdge &, const CfgEdge &) = default;
};

// Control-flow graph of one function, with per-block statement spans.
// Parallel edges are allowed and keep their identity by list position.
struct Cfg {
  std::string asm_name;
  std::uint32_t start_line = 1;
  std::vector<CfgBlock> blocks;
  std::vector<CfgEdge> edges;
  std::uint32_t entry = 0;  // no predecessors
  std::uint32_t exit = 0;   // no successors

  // Checks entry/exit degree rules, id uniqueness, edge endpoints, and
  // reachability from entry. Throws ValidationError.
  void validate() const;

  const CfgBlock *find_block(std::uint32_t id) const {
    for (const CfgBlock &b : blocks)
      if (b.id == id) return &b;
    return nullptr;
  }

  friend bool operator==(const Cfg &, const Cfg &) = default;
};

// Result of annotating a Cfg: block counts from the profile, edge counts
// from flow propagation. Edges are addressed by their index in Cfg::edges.
struct EdgeProfile {
  std::map<std::uint32_t, std::uint64_t> block_counts;
  std::vector<std::uint64_t> edge_counts;  // 0 for unresolved edges
  std::vector<bool> edge_resolved;
  std::uint64_t unresolved = 0;  // edges left unknown by propagation
  std::uint64_t clamped = 0;     // negative inferences clamped to zero
  std::uint64_t rounds = 0;      // productive propagation sweeps
};

}  // namespace fdoprof

#endif  // FDOPROF_CFG_HPP
