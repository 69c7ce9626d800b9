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

#include "fdoprof/attribution.hpp"

#include "fdoprof/counts.hpp"
#include "fdoprof/error.hpp"

namespace fdoprof {

const InlineStack *resolve(std::uint64_t addr, const BinaryDescription &bd) {
  const InstructionDesc *insn = bd.find_instruction(addr);
  return insn == nullptr ? nullptr : &insn->source_key;
}

AddressProfile build_address_profile(const SampleSet &samples,
                                     const BinaryDescription &bd) {
  if (samples.mode != SampleMode::kCycles) {
    throw ModeError("build_address_profile needs a cycles-mode sample set");
  }
  AddressProfile ap;
  for (const SampleSet::PcSample &sample : samples.pc_samples) {
    if (bd.find_instruction(sample.address) != nullptr) {
      std::uint64_t &slot = ap.counts[sample.address];
      slot = sat_add(slot, sample.count);
    } else {
      ap.dropped_samples = sat_add(ap.dropped_samples, sample.count);
    }
  }
  return ap;
}

SourceAccumulator to_source_accumulator(const AddressProfile &ap,
                                        const BinaryDescription &bd) {
  SourceAccumulator acc;
  for (const FunctionDesc &func : bd.functions) {
    for (const BlockDesc &block : func.blocks) {
      for (const InstructionDesc &insn : block.instructions) {
        SourceAccumulator::Entry &entry = acc.entries[insn.source_key];
        entry.mapped_instructions += 1;
        auto it = ap.counts.find(insn.address);
        if (it != ap.counts.end()) {
          entry.count_sum = sat_add(entry.count_sum, it->second);
        }
      }
    }
  }
  return acc;
}

}  // namespace fdoprof
