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

#ifndef FDOPROF_CONVERT_HPP
#define FDOPROF_CONVERT_HPP

#include <cstdint>

#include "fdoprof/binary_desc.hpp"
#include "fdoprof/profile_ops.hpp"
#include "fdoprof/samples.hpp"
#include "fdoprof/source_profile.hpp"

namespace fdoprof {

struct ConvertResult {
  SourceProfile profile;
  std::uint64_t dropped_samples = 0;
  BuildStats build_stats;
};

// The whole samples-to-profile pipeline. Cycles mode attributes PC samples
// to instructions directly; LBR mode walks branch ranges, normalizes per
// basic block, and spreads each block's count uniformly over its
// instructions before attribution.
ConvertResult convert_samples(const SampleSet &samples,
                              const BinaryDescription &bd);

}  // namespace fdoprof

#endif  // FDOPROF_CONVERT_HPP
