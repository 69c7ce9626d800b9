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

#ifndef FDOPROF_ANNOTATE_HPP
#define FDOPROF_ANNOTATE_HPP

#include <cstdint>
#include <map>

#include "fdoprof/cfg.hpp"
#include "fdoprof/source_profile.hpp"

namespace fdoprof {

// Block counts from the profile: the mean of the function body counts of the
// block's statement keys (absent keys count as zero), rounded half up.
// Blocks without statements get zero. When the function has samples but its
// entry block resolves to zero, the entry count is lifted to
// max(1, head_count) so a demonstrably-executed function is never annotated
// as dead.
std::map<std::uint32_t, std::uint64_t> annotate_blocks(
    const Cfg &cfg, const SourceProfile &profile);

// Derives edge counts from block counts by flow conservation: wherever all
// of a block's incident edges on one side are known except one, the missing
// edge must make the side sum to the block count (clamped at zero when the
// data is inconsistent). Runs to a fixpoint; edges the rule can never force
// are reported in `unresolved` and set to zero rather than guessed.
EdgeProfile propagate_edges(
    const Cfg &cfg, const std::map<std::uint32_t, std::uint64_t> &block_counts);

}  // namespace fdoprof

#endif  // FDOPROF_ANNOTATE_HPP
