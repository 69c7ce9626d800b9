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
//
// Parsers and emitters for every external file format. All formats are
// line-oriented text; lines whose first non-blank character is '#' and blank
// lines are ignored everywhere. Addresses are hexadecimal with a mandatory
// 0x prefix; counts are decimal unsigned 64-bit.
//
// Sample file
// -----------
//     mode: cycles|lbr
//     event: <identifier>
//     period: <decimal u64>
//     S <0xaddr> <decimal count>               (cycles mode)
//     L <0xfrom>-><0xto>[,<0xfrom>-><0xto>]...  (lbr mode, 1..16 pairs,
//                                                oldest first)
//
// The three header lines come first, in that order. Record kind must match
// the declared mode.
//
// Binary description file
// -----------------------
//     func name=<asm> bfd=<bfd> file=<path> line=<n> range=<0xlo>-<0xhi>
//     block range=<0xlo>-<0xhi>
//     insn addr=<0xa> loc=<frame>[;<frame>]... [branch]
//
// A block belongs to the most recent func, an insn to the most recent block.
// Each frame is <bfd>:<file>:<line>.<disc>, leaf first; the frame is split
// from the right so BFD names may contain colons, file names may not.
//
// Profile file
// ------------
//     <asm_name> total:<u64> head:<u64> [bfd:<name>]
//       <offset>.<disc>: <u64>
//       <offset>.<disc>: <bfd_callee> total:<u64>
//         <offset>.<disc>: <u64>
//
// Two spaces of indentation per inline level. Offsets are relative to the
// start line of the enclosing function or inline frame. The bfd: token
// appears only when the debug name differs from the assembler name. Body
// lines are emitted sorted by (offset, discriminator), then inlined callees
// sorted by (offset, discriminator, callee).
//
// CFG file
// --------
//     cfg name=<asm_name> line=<n> entry=<id> exit=<id>
//     node id=<id> [stmts=<off>.<disc>[,<off>.<disc>]...]
//     edge <id>-><id>
//
// A file may hold several cfg sections. The annotated form produced by the
// annotate command carries count=<u64> on node and edge lines and a final
// unresolved=<n> trailer per cfg.

#ifndef FDOPROF_FORMATS_HPP
#define FDOPROF_FORMATS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "fdoprof/binary_desc.hpp"
#include "fdoprof/cfg.hpp"
#include "fdoprof/samples.hpp"
#include "fdoprof/source_profile.hpp"

namespace fdoprof {

SampleSet parse_samples(std::string_view text);
std::string emit_samples(const SampleSet &samples);

BinaryDescription parse_binary_desc(std::string_view text);
std::string emit_binary_desc(const BinaryDescription &bd);

SourceProfile parse_profile(std::string_view text);
std::string emit_profile(const SourceProfile &profile);

std::vector<Cfg> parse_cfgs(std::string_view text);
std::string emit_cfg(const Cfg &cfg);
std::string emit_annotated_cfg(const Cfg &cfg, const EdgeProfile &annotation);

}  // namespace fdoprof

#endif  // FDOPROF_FORMATS_HPP
