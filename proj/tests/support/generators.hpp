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
// Seeded random inputs for property tests. Test-only; production code never
// depends on this header.

#ifndef FDOPROF_TESTS_GENERATORS_HPP
#define FDOPROF_TESTS_GENERATORS_HPP

#include <string>

#include "fdoprof/cfg.hpp"
#include "fdoprof/simulate.hpp"
#include "fdoprof/source_profile.hpp"

namespace fdoprof::testing {

inline FunctionProfile random_function_profile(Rng &rng, std::string asm_name,
                                               int depth) {
  FunctionProfile fp;
  fp.asm_name = asm_name;
  // Exercise the separate-debug-name path for a third of the functions.
  fp.bfd_name = rng.below(3) == 0 ? asm_name + "_dbg" : asm_name;
  if (depth == 0) fp.head_count = rng.below(50);

  const std::uint64_t n_body = rng.below(6);
  for (std::uint64_t i = 0; i < n_body; ++i) {
    BodyKey key{static_cast<std::uint32_t>(rng.below(40)),
                static_cast<std::uint32_t>(rng.below(3))};
    fp.body[key] = 1 + rng.below(1000);
  }
  if (depth < 2) {
    const std::uint64_t n_inlined = rng.below(3);
    for (std::uint64_t i = 0; i < n_inlined; ++i) {
      CallsiteKey key{static_cast<std::uint32_t>(rng.below(40)),
                      static_cast<std::uint32_t>(rng.below(2)),
                      "callee" + std::to_string(rng.below(4))};
      FunctionProfile sub =
          random_function_profile(rng, key.callee_bfd_name, depth + 1);
      sub.bfd_name = sub.asm_name;  // nested names are debug names already
      sub.head_count = 0;           // entry events belong to the symbol
      fp.inlined[key] = std::move(sub);
    }
  }
  fp.recompute_totals();
  return fp;
}

// A structurally valid profile; the text round trip must reproduce it
// field for field.
inline SourceProfile random_profile(std::uint64_t seed) {
  Rng rng(seed);
  SourceProfile profile;
  const std::uint64_t n = 1 + rng.below(5);
  for (std::uint64_t i = 0; i < n; ++i) {
    std::string name = "_Z4fn" + std::to_string(rng.below(30)) + "v";
    FunctionProfile fp = random_function_profile(rng, name, 0);
    if (fp.total_count == 0 && fp.head_count == 0) fp.head_count = 1;
    profile.functions[name] = std::move(fp);
  }
  for (auto &[name, fp] : profile.functions) fp.asm_name = name;
  return profile;
}

// A random DAG with a fall-through spine, so every block is reachable and
// the exit is last. Valid per Cfg::validate.
inline Cfg random_dag_cfg(std::uint64_t seed) {
  Rng rng(seed);
  Cfg cfg;
  cfg.asm_name = "_Z3cfgv";
  cfg.start_line = 10 + static_cast<std::uint32_t>(rng.below(50));
  const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(7));
  cfg.entry = 0;
  cfg.exit = n - 1;
  std::uint32_t next_offset = 1;
  for (std::uint32_t b = 0; b < n; ++b) {
    CfgBlock block;
    block.id = b;
    const std::uint32_t n_stmts = static_cast<std::uint32_t>(rng.below(3));
    for (std::uint32_t s = 0; s < n_stmts; ++s) {
      block.statements.push_back(
          {next_offset++, static_cast<std::uint32_t>(rng.below(2))});
    }
    cfg.blocks.push_back(std::move(block));
  }
  for (std::uint32_t b = 0; b + 1 < n; ++b) {
    cfg.edges.push_back({b, b + 1});
    if (b + 2 < n && rng.below(2) == 0) {
      cfg.edges.push_back(
          {b, static_cast<std::uint32_t>(rng.between(b + 2, n - 1))});
    }
  }
  return cfg;
}

}  // namespace fdoprof::testing

#endif  // FDOPROF_TESTS_GENERATORS_HPP
