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

#ifndef FDOPROF_BINARY_DESC_HPP
#define FDOPROF_BINARY_DESC_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fdoprof {

// One frame of an inline stack: where a statement lives in the source, and
// through which function. Functions are referred to by their debug (BFD)
// name here; only top-level symbols have assembler names.
struct Frame {
  std::string function_bfd_name;
  std::string file;
  std::uint32_t line = 1;           // >= 1
  std::uint32_t discriminator = 0;  // distinguishes statements on one line

  friend bool operator==(const Frame &, const Frame &) = default;
  friend auto operator<=>(const Frame &, const Frame &) = default;
};

// The source key of a binary instruction. frames[0] is the instruction's own
// location (the leaf); each following frame is the call site through which
// the preceding frame was inlined. Uninlined instructions have one frame.
struct InlineStack {
  std::vector<Frame> frames;  // leaf first, never empty

  const Frame &leaf() const { return frames.front(); }
  const Frame &outermost() const { return frames.back(); }

  friend bool operator==(const InlineStack &, const InlineStack &) = default;
  friend auto operator<=>(const InlineStack &, const InlineStack &) = default;
};

struct InstructionDesc {
  std::uint64_t address = 0;
  InlineStack source_key;
  bool is_branch = false;

  friend bool operator==(const InstructionDesc &,
                         const InstructionDesc &) = default;
};

// Half-open address interval [low, high).
struct AddrRange {
  std::uint64_t low = 0;
  std::uint64_t high = 0;

  bool contains(std::uint64_t addr) const { return addr >= low && addr < high; }
  friend bool operator==(const AddrRange &, const AddrRange &) = default;
};

struct BlockDesc {
  AddrRange range;
  std::vector<InstructionDesc> instructions;  // non-empty, ascending addresses

  friend bool operator==(const BlockDesc &, const BlockDesc &) = default;
};

struct FunctionDesc {
  std::string asm_name;  // mangled symbol name, unique in the description
  std::string bfd_name;  // debug-symbol display name
  std::string file;
  std::uint32_t start_line = 1;
  AddrRange range;
  std::vector<BlockDesc> blocks;

  friend bool operator==(const FunctionDesc &, const FunctionDesc &) = default;
};

// Everything the converter knows about the profiled binary: symbol ranges,
// basic blocks, and the inline stack of every instruction. Built from the
// sidecar description file; `finalize` checks the structural invariants and
// builds the lookup indexes.
class BinaryDescription {
 public:
  std::vector<FunctionDesc> functions;

  // Validates invariants (disjoint function ranges, unique asm names, blocks
  // and instructions nested and ordered) and rebuilds the address indexes.
  // Throws ValidationError naming the offending entities.
  void finalize();

  // Exact-address instruction lookup; nullptr when no instruction starts at
  // `addr`.
  const InstructionDesc *find_instruction(std::uint64_t addr) const;

  // Function whose [low, high) range covers `addr`; nullptr when none does.
  const FunctionDesc *find_function_by_address(std::uint64_t addr) const;

  // First function with this assembler name, nullptr when absent.
  const FunctionDesc *find_function(const std::string &asm_name) const;

  // Resolves a debug name to a function. When several functions share the
  // BFD name, prefers one declared in `file`, then the lowest asm_name.
  const FunctionDesc *find_function_by_bfd(const std::string &bfd_name,
                                           const std::string &file) const;

  // All instructions with low <= address <= high, in address order.
  // Visits nothing when the interval is empty or out of range.
  template <typename Fn>
  void for_each_instruction_in(std::uint64_t low, std::uint64_t high,
                               Fn &&fn) const {
    if (low > high) return;
    auto it = insn_index_.lower_bound(low);
    for (; it != insn_index_.end() && it->first <= high; ++it) {
      fn(*it->second);
    }
  }

  std::uint64_t instruction_count() const { return insn_index_.size(); }

  friend bool operator==(const BinaryDescription &a,
                         const BinaryDescription &b) {
    return a.functions == b.functions;
  }

 private:
  std::map<std::uint64_t, const InstructionDesc *> insn_index_;
  std::map<std::uint64_t, const FunctionDesc *> func_by_low_;
  std::map<std::string, const FunctionDesc *> func_by_asm_;
  std::multimap<std::string, const FunctionDesc *> func_by_bfd_;
};

}  // namespace fdoprof

#endif  // FDOPROF_BINARY_DESC_HPP
