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

#include "fdoprof/convert.hpp"

#include "fdoprof/attribution.hpp"
#include "fdoprof/lbr.hpp"

namespace fdoprof {

ConvertResult convert_samples(const SampleSet &samples,
                              const BinaryDescription &bd) {
  ConvertResult result;

  AddressProfile ap;
  if (samples.mode == SampleMode::kCycles) {
    ap = build_address_profile(samples, bd);
  } else {
    // Branch ranges -> per-block counts -> one uniform count per instruction,
    // so block size never skews the source profile.
    const AddressProfile walked = walk_ranges(samples, bd);
    ap = expand_block_counts(block_counts(walked, bd), bd,
                             walked.dropped_samples);
  }
  result.dropped_samples = ap.dropped_samples;

  const SourceAccumulator acc = to_source_accumulator(ap, bd);
  const auto heads = compute_head_counts(samples, bd);
  result.profile = build_source_profile(acc, bd, heads, &result.build_stats);
  return result;
}

}  // namespace fdoprof
