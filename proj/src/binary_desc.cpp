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

#include "fdoprof/binary_desc.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "fdoprof/error.hpp"

namespace fdoprof {

namespace {

std::string hex(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "0x%llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

void BinaryDescription::finalize() {
  insn_index_.clear();
  func_by_low_.clear();
  func_by_asm_.clear();
  func_by_bfd_.clear();

  std::set<std::string> seen_names;
  for (const FunctionDesc &func : functions) {
    if (func.range.low >= func.range.high) {
      throw ValidationError("function " + func.asm_name + " has empty range " +
                            hex(func.range.low) + "-" + hex(func.range.high));
    }
    if (!seen_names.insert(func.asm_name).second) {
      throw ValidationError("duplicate function name " + func.asm_name);
    }
  }

  // Disjointness over [low, high) intervals, checked on the sorted order.
  std::vector<const FunctionDesc *> by_low;
  by_low.reserve(functions.size());
  for (const FunctionDesc &func : functions) by_low.push_back(&func);
  std::sort(by_low.begin(), by_low.end(),
            [](const FunctionDesc *a, const FunctionDesc *b) {
              return a->range.low < b->range.low;
            });
  for (std::size_t i = 1; i < by_low.size(); ++i) {
    if (by_low[i]->range.low < by_low[i - 1]->range.high) {
      throw ValidationError("functions " + by_low[i - 1]->asm_name + " and " +
                            by_low[i]->asm_name +
                            " have overlapping address ranges");
    }
  }

  for (const FunctionDesc &func : functions) {
    std::uint64_t prev_block_end = func.range.low;
    for (std::size_t bi = 0; bi < func.blocks.size(); ++bi) {
      const BlockDesc &block = func.blocks[bi];
      if (block.range.low >= block.range.high) {
        throw ValidationError("function " + func.asm_name + " block " +
                              std::to_string(bi) + " has empty range");
      }
      if (block.range.low < prev_block_end ||
          block.range.high > func.range.high) {
        throw ValidationError("function " + func.asm_name + " block " +
                              std::to_string(bi) +
                              " lies outside the function range or overlaps "
                              "the previous block");
      }
      prev_block_end = block.range.high;
      if (block.instructions.empty()) {
        throw ValidationError("function " + func.asm_name + " block " +
                              std::to_string(bi) + " has no instructions");
      }
      std::uint64_t prev_addr = 0;
      bool first = true;
      for (const InstructionDesc &insn : block.instructions) {
        if (!block.range.contains(insn.address)) {
          throw ValidationError("instruction " + hex(insn.address) +
                                " lies outside block " + std::to_string(bi) +
                                " of function " + func.asm_name);
        }
        if (!first && insn.address <= prev_addr) {
          throw ValidationError("instruction addresses not increasing in "
                                "block " +
                                std::to_string(bi) + " of function " +
                                func.asm_name + " at " + hex(insn.address));
        }
        if (insn.source_key.frames.empty()) {
          throw ValidationError("instruction " + hex(insn.address) +
                                " has an empty inline stack");
        }
        first = false;
        prev_addr = insn.address;
        insn_index_.emplace(insn.address, &insn);
      }
    }
    func_by_low_.emplace(func.range.low, &func);
    func_by_asm_.emplace(func.asm_name, &func);
    func_by_bfd_.emplace(func.bfd_name, &func);
  }
}

const InstructionDesc *BinaryDescription::find_instruction(
    std::uint64_t addr) const {
  auto it = insn_index_.find(addr);
  return it == insn_index_.end() ? nullptr : it->second;
}

const FunctionDesc *BinaryDescription::find_function_by_address(
    std::uint64_t addr) const {
  auto it = func_by_low_.upper_bound(addr);
  if (it == func_by_low_.begin()) return nullptr;
  --it;
  return it->second->range.contains(addr) ? it->second : nullptr;
}

const FunctionDesc *BinaryDescription::find_function(
    const std::string &asm_name) const {
  auto it = func_by_asm_.find(asm_name);
  return it == func_by_asm_.end() ? nullptr : it->second;
}

const FunctionDesc *BinaryDescription::find_function_by_bfd(
    const std::string &bfd_name, const std::string &file) const {
  auto [begin, end] = func_by_bfd_.equal_range(bfd_name);
  if (begin == end) return nullptr;
  const FunctionDesc *best = nullptr;
  for (auto it = begin; it != end; ++it) {
    const FunctionDesc *candidate = it->second;
    const bool file_match = candidate->file == file;
    const bool best_file_match = best != nullptr && best->file == file;
    if (best == nullptr || (file_match && !best_file_match) ||
        (file_match == best_file_match &&
         candidate->asm_name < best->asm_name)) {
      best = candidate;
    }
  }
  return best;
}

}  // namespace fdoprof
