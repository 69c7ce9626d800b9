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

#include "fdoprof/lbr.hpp"

#include "fdoprof/counts.hpp"
#include "fdoprof/error.hpp"

namespace fdoprof {

AddressProfile walk_ranges(const SampleSet &samples,
                           const BinaryDescription &bd) {
  if (samples.mode != SampleMode::kLbr) {
    throw ModeError("walk_ranges needs an lbr-mode sample set");
  }
  AddressProfile ap;
  for (const BranchStack &stack : samples.lbr_samples) {
    for (std::size_t i = 0; i + 1 < stack.pairs.size(); ++i) {
      const std::uint64_t low = stack.pairs[i].to_addr;
      const std::uint64_t high = stack.pairs[i + 1].from_addr;
      if (low > high) {
        ap.dropped_samples += 1;
        continue;
      }
      const FunctionDesc *from_func = bd.find_function_by_address(low);
      const FunctionDesc *to_func = bd.find_function_by_address(high);
      if (from_func == nullptr || from_func != to_func) {
        ap.dropped_samples += 1;
        continue;
      }
      bd.for_each_instruction_in(low, high, [&](const InstructionDesc &insn) {
        std::uint64_t &slot = ap.counts[insn.address];
        slot = sat_add(slot, 1);
      });
    }
  }
  return ap;
}

BlockProfile block_counts(const AddressProfile &ap,
                          const BinaryDescription &bd) {
  BlockProfile blocks;
  for (const FunctionDesc &func : bd.functions) {
    for (std::size_t bi = 0; bi < func.blocks.size(); ++bi) {
      const BlockDesc &block = func.blocks[bi];
      std::uint64_t sum = 0;
      for (const InstructionDesc &insn : block.instructions) {
        auto it = ap.counts.find(insn.address);
        if (it != ap.counts.end()) sum = sat_add(sum, it->second);
      }
      blocks.counts[{func.asm_name, static_cast<std::uint32_t>(bi)}] =
          div_round_half_up(sum, block.instructions.size());
    }
  }
  return blocks;
}

AddressProfile expand_block_counts(const BlockProfile &blocks,
                                   const BinaryDescription &bd,
                                   std::uint64_t dropped_samples) {
  AddressProfile ap;
  ap.dropped_samples = dropped_samples;
  for (const FunctionDesc &func : bd.functions) {
    for (std::size_t bi = 0; bi < func.blocks.size(); ++bi) {
      auto it =
          blocks.counts.find({func.asm_name, static_cast<std::uint32_t>(bi)});
      if (it == blocks.counts.end() || it->second == 0) continue;
      for (const InstructionDesc &insn : func.blocks[bi].instructions) {
        ap.counts[insn.address] = it->second;
      }
    }
  }
  return ap;
}

}  // namespace fdoprof
