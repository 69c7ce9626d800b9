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

#ifndef FDOPROF_ATTRIBUTION_HPP
#define FDOPROF_ATTRIBUTION_HPP

#include <cstdint>
#include <map>

#include "fdoprof/binary_desc.hpp"
#include "fdoprof/samples.hpp"

namespace fdoprof {

// Per-instruction event counts, plus the samples that matched no instruction.
// Only addresses present in the BinaryDescription appear in `counts`.
struct AddressProfile {
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t dropped_samples = 0;

  std::uint64_t total() const {
    std::uint64_t sum = 0;
    for (const auto &[addr, count] : counts) sum += count;
    return sum;
  }
};

// Counts folded onto source keys: the event total and the number of binary
// instructions carrying each key. Zero-count keys are kept so normalization
// denominators stay stable.
struct SourceAccumulator {
  struct Entry {
    std::uint64_t count_sum = 0;
    std::uint64_t mapped_instructions = 0;  // >= 1 for every present key
  };

  std::map<InlineStack, Entry> entries;
};

// Source key of the instruction at exactly `addr`; nullptr when no
// instruction starts there. Sampled PCs in this model are always
// instruction starts, so there is no nearest-preceding fallback.
const InlineStack *resolve(std::uint64_t addr, const BinaryDescription &bd);

// Sums cycles-mode PC samples per instruction address. Samples at addresses
// with no instruction are tallied in dropped_samples, never silently lost:
// counts total + dropped == sample count total. Throws ModeError unless
// samples.mode == cycles.
AddressProfile build_address_profile(const SampleSet &samples,
                                     const BinaryDescription &bd);

// Folds an address profile onto source keys. Every key present in `bd` gets
// an entry (possibly with count_sum 0); mapped_instructions counts all
// instructions carrying the key.
SourceAccumulator to_source_accumulator(const AddressProfile &ap,
                                        const BinaryDescription &bd);

}  // namespace fdoprof

#endif  // FDOPROF_ATTRIBUTION_HPP
