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

#ifndef FDOPROF_SAMPLES_HPP
#define FDOPROF_SAMPLES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace fdoprof {

// How the session's counter overflow was configured.
enum class SampleMode { kCycles, kLbr };

inline const char *to_string(SampleMode mode) {
  return mode == SampleMode::kCycles ? "cycles" : "lbr";
}

// One record of the CPU's branch trace buffer: up to 16 (source, target)
// address pairs of retired taken branches, oldest first.
struct BranchStack {
  static constexpr std::size_t kMaxPairs = 16;

  struct Pair {
    std::uint64_t from_addr = 0;
    std::uint64_t to_addr = 0;
    friend bool operator==(const Pair &, const Pair &) = default;
  };

  std::vector<Pair> pairs;

  friend bool operator==(const BranchStack &, const BranchStack &) = default;
};

// A parsed sampling session. Exactly one of pc_samples / lbr_samples is
// populated, matching `mode`.
struct SampleSet {
  struct PcSample {
    std::uint64_t address = 0;
    std::uint64_t count = 0;
    friend bool operator==(const PcSample &, const PcSample &) = default;
  };

  SampleMode mode = SampleMode::kCycles;
  std::string event_name;
  std::uint64_t period = 1;  // events per counter overflow, >= 1
  std::vector<PcSample> pc_samples;
  std::vector<BranchStack> lbr_samples;  // file order preserved

  std::uint64_t total_pc_count() const {
    std::uint64_t total = 0;
    for (const PcSample &s : pc_samples) total += s.count;
    return total;
  }

  friend bool operator==(const SampleSet &, const SampleSet &) = default;
};

}  // namespace fdoprof

#endif  // FDOPROF_SAMPLES_HPP
