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

#ifndef FDOPROF_PROFILE_OPS_HPP
#define FDOPROF_PROFILE_OPS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fdoprof/attribution.hpp"
#include "fdoprof/binary_desc.hpp"
#include "fdoprof/samples.hpp"
#include "fdoprof/source_profile.hpp"

namespace fdoprof {

struct BuildStats {
  std::uint64_t unknown_frames = 0;  // frames whose BFD name matched nothing
  std::uint64_t dropped_keys = 0;    // keys with no resolvable root function
  std::uint64_t saturations = 0;
};

// Builds the source profile from accumulated key counts. Each key's count is
// normalized to round(count_sum / mapped_instructions); the leaf frame picks
// the (offset, discriminator) body entry and outer frames create nested
// inlined subprofiles. Zero-count entries are elided; totals are recomputed
// bottom-up; head counts come from `head`. Functions with neither samples
// nor head events are left out entirely, but a function with head > 0 and an
// empty body is kept so it cannot be mistaken for dead code downstream.
//
// A key whose outermost frame matches no function is attributed under the
// outermost frame that does match one; descent stops at the first unknown
// callee and the remaining count lands on its call site. Both cases bump
// BuildStats.
SourceProfile build_source_profile(
    const SourceAccumulator &acc, const BinaryDescription &bd,
    const std::map<std::string, std::uint64_t> &head,
    BuildStats *stats = nullptr);

// Function entry counts keyed by asm name (every function of `bd` gets an
// entry). LBR mode counts branch-stack pairs targeting the function's first
// address, skipping a stack's oldest pair when it repeats the previous
// stack's newest one (re-reported carryover, see simulate). Cycles mode uses
// the normalized count of the block containing the function's first address.
std::map<std::string, std::uint64_t> compute_head_counts(
    const SampleSet &samples, const BinaryDescription &bd);

struct MergeStats {
  std::uint64_t saturations = 0;
};

// Pointwise saturating addition over the union of functions, body entries,
// and inlined callees; totals recomputed bottom-up. Commutative and
// associative up to saturation; the empty profile is the identity.
SourceProfile merge(const SourceProfile &a, const SourceProfile &b,
                    MergeStats *stats = nullptr);

struct Report {
  std::uint64_t function_count = 0;
  std::uint64_t total_count = 0;
  std::uint64_t head_total = 0;
  std::uint64_t dropped_samples = 0;
  std::vector<std::pair<std::string, std::uint64_t>> hottest;  // by total desc
};

// Summary of a profile: counts plus the hottest `top_n` functions, ties
// broken by ascending asm name. `dropped_samples` is conversion-time context
// the profile itself does not carry.
Report summarize(const SourceProfile &profile, std::size_t top_n = 10,
                 std::uint64_t dropped_samples = 0);

std::string format_report(const Report &report);

}  // namespace fdoprof

#endif  // FDOPROF_PROFILE_OPS_HPP
