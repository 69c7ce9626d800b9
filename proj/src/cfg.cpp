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

#include "fdoprof/cfg.hpp"

#include <deque>
#include <set>

#include "fdoprof/error.hpp"

namespace fdoprof {

void Cfg::validate() const {
  std::set<std::uint32_t> ids;
  for (const CfgBlock &block : blocks) {
    if (!ids.insert(block.id).second) {
      throw ValidationError("cfg " + asm_name + ": duplicate block id " +
                            std::to_string(block.id));
    }
  }
  if (ids.empty()) throw ValidationError("cfg " + asm_name + " has no blocks");
  if (!ids.count(entry) || !ids.count(exit)) {
    throw ValidationError("cfg " + asm_name +
                          ": entry or exit references a missing block");
  }
  for (const CfgEdge &edge : edges) {
    if (!ids.count(edge.src) || !ids.count(edge.dst)) {
      throw ValidationError("cfg " + asm_name + ": edge " +
                            std::to_string(edge.src) + "->" +
                            std::to_string(edge.dst) +
                            " references a missing block");
    }
    if (edge.dst == entry) {
      throw ValidationError("cfg " + asm_name + ": entry block " +
                            std::to_string(entry) + " has a predecessor");
    }
    if (edge.src == exit) {
      throw ValidationError("cfg " + asm_name + ": exit block " +
                            std::to_string(exit) + " has a successor");
    }
  }

  std::set<std::uint32_t> reached{entry};
  std::deque<std::uint32_t> work{entry};
  while (!work.empty()) {
    std::uint32_t id = work.front();
    work.pop_front();
    for (const CfgEdge &edge : edges) {
      if (edge.src == id && reached.insert(edge.dst).second) {
        work.push_back(edge.dst);
      }
    }
  }
  if (reached.size() != ids.size()) {
    for (std::uint32_t id : ids) {
      if (!reached.count(id)) {
        throw ValidationError("cfg " + asm_name + ": block " +
                              std::to_string(id) +
                              " is unreachable from the entry");
      }
    }
  }
}

}  // namespace fdoprof
