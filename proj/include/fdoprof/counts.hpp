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

#ifndef FDOPROF_COUNTS_HPP
#define FDOPROF_COUNTS_HPP

#include <cstdint>
#include <limits>

namespace fdoprof {

// Sample counters are unsigned 64-bit and saturate instead of wrapping.
// Call sites that care pass a counter that is bumped on every clamp.
inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b,
                             std::uint64_t *saturations = nullptr) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    if (saturations != nullptr) ++*saturations;
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a + b;
}

// num/den rounded half up, den >= 1. Saturates instead of overflowing.
inline std::uint64_t div_round_half_up(std::uint64_t num, std::uint64_t den) {
  const std::uint64_t half = den / 2;
  if (num > std::numeric_limits<std::uint64_t>::max() - half) {
    return num / den;  // num is within den/2 of the max; rounding is moot
  }
  return (num + half) / den;
}

}  // namespace fdoprof

#endif  // FDOPROF_COUNTS_HPP
