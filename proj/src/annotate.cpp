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

#include "fdoprof/annotate.hpp"

#include <algorithm>
#include <optional>
#include <vector>

#include "fdoprof/counts.hpp"

namespace fdoprof {

std::map<std::uint32_t, std::uint64_t> annotate_blocks(
    const Cfg &cfg, const SourceProfile &profile) {
  std::map<std::uint32_t, std::uint64_t> counts;
  auto fit = profile.functions.find(cfg.asm_name);
  const FunctionProfile *fp =
      fit == profile.functions.end() ? nullptr : &fit->second;

  for (const CfgBlock &block : cfg.blocks) {
    std::uint64_t count = 0;
    if (fp != nullptr && !block.statements.empty()) {
      std::uint64_t sum = 0;
      for (const BodyKey &key : block.statements) {
        auto it = fp->body.find(key);
        if (it != fp->body.end()) sum = sat_add(sum, it->second);
      }
      count = div_round_half_up(sum, block.statements.size());
    }
    counts[block.id] = count;
  }

  // A function with samples must not end up with a dead entry block; IRA-style
  // consumers treat entry count zero as "never called".
  if (fp != nullptr && fp->total_count > 0 && counts[cfg.entry] == 0) {
    counts[cfg.entry] = std::max<std::uint64_t>(1, fp->head_count);
  }
  return counts;
}

EdgeProfile propagate_edges(
    const Cfg &cfg, const std::map<std::uint32_t, std::uint64_t> &block_counts) {
  EdgeProfile result;
  result.block_counts = block_counts;
  const std::size_t n_edges = cfg.edges.size();
  std::vector<std::optional<std::uint64_t>> edges(n_edges);

  // Incident edge indexes per block.
  std::map<std::uint32_t, std::vector<std::size_t>> in_edges, out_edges;
  for (const CfgBlock &block : cfg.blocks) {
    in_edges[block.id];
    out_edges[block.id];
  }
  for (std::size_t i = 0; i < n_edges; ++i) {
    out_edges[cfg.edges[i].src].push_back(i);
    in_edges[cfg.edges[i].dst].push_back(i);
  }

  auto block_count = [&](std::uint32_t id) -> std::uint64_t {
    auto it = block_counts.find(id);
    return it == block_counts.end() ? 0 : it->second;
  };

  // Sweep all blocks; on each side (in or out) where every incident edge but
  // one is known, the last one is forced by conservation. Every productive
  // sweep resolves at least one edge, so there are at most |edges| rounds.
  std::uint64_t rounds = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (const CfgBlock &block : cfg.blocks) {
      for (const std::vector<std::size_t> *side :
           {&in_edges[block.id], &out_edges[block.id]}) {
        if (side->empty()) continue;
        std::size_t unknown_count = 0;
        std::size_t unknown_edge = 0;
        std::uint64_t known_sum = 0;
        for (std::size_t e : *side) {
          if (edges[e].has_value()) {
            known_sum = sat_add(known_sum, *edges[e]);
          } else {
            ++unknown_count;
            unknown_edge = e;
          }
        }
        if (unknown_count != 1) continue;
        const std::uint64_t count = block_count(block.id);
        if (known_sum > count) {
          edges[unknown_edge] = 0;  // inconsistent data; do not go negative
          ++result.clamped;
        } else {
          edges[unknown_edge] = count - known_sum;
        }
        progress = true;
      }
    }
    if (progress) ++rounds;
  }
  result.rounds = rounds;

  result.edge_counts.resize(n_edges, 0);
  result.edge_resolved.resize(n_edges, false);
  for (std::size_t i = 0; i < n_edges; ++i) {
    if (edges[i].has_value()) {
      result.edge_counts[i] = *edges[i];
      result.edge_resolved[i] = true;
    } else {
      ++result.unresolved;
    }
  }
  return result;
}

}  // namespace fdoprof
