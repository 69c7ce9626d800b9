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

#ifndef FDOPROF_LBR_HPP
#define FDOPROF_LBR_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "fdoprof/attribution.hpp"
#include "fdoprof/binary_desc.hpp"
#include "fdoprof/samples.hpp"

namespace fdoprof {

// A basic block named by its function and position in the function's block
// list.
struct BlockRef {
  std::string function_asm_name;
  std::uint32_t block_index = 0;

  friend bool operator==(const BlockRef &, const BlockRef &) = default;
  friend auto operator<=>(const BlockRef &, const BlockRef &) = default;
};

struct BlockProfile {
  std::map<BlockRef, std::uint64_t> counts;
};

// Decodes branch stacks into instruction counts. For each consecutive pair
// (oldest first) within a stack, every instruction in the closed interval
// [pair[i].to_addr, pair[i+1].from_addr] gains one count. Intervals whose
// endpoints fall in different functions (or outside any function), and
// backwards intervals, are discarded and tallied in dropped_samples.
// Throws ModeError unless samples.mode == lbr.
AddressProfile walk_ranges(const SampleSet &samples,
                           const BinaryDescription &bd);

// Per-block execution counts: the mean of the block's instruction counts,
// rounded half up, so block size carries no weight. Every block of `bd`
// gets an entry, zero ones included.
BlockProfile block_counts(const AddressProfile &ap,
                          const BinaryDescription &bd);

// Writes each block's count back onto all of its instructions, giving the
// uniform per-instruction profile the LBR pipeline feeds downstream.
// dropped_samples is carried over from `ap`.
AddressProfile expand_block_counts(const BlockProfile &blocks,
                                   const BinaryDescription &bd,
                                   std::uint64_t dropped_samples = 0);

}  // namespace fdoprof

#endif  // FDOPROF_LBR_HPP
