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
// Acceptance suite. Each numbered check prints one PASS/FAIL line; the
// process exits nonzero if any check fails. Everything is seeded and runs
// the same way on every machine.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fdoprof/annotate.hpp"
#include "fdoprof/convert.hpp"
#include "fdoprof/counts.hpp"
#include "fdoprof/formats.hpp"
#include "fdoprof/lbr.hpp"
#include "fdoprof/profile_ops.hpp"
#include "fdoprof/simulate.hpp"
#include "support/generators.hpp"

using namespace fdoprof;

namespace {

int g_failures = 0;

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string &what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

void report(int number, const std::string &name, const Check &check,
            double seconds) {
  if (check.ok) {
    std::printf("PASS  %d %-38s (%.2fs)\n", number, name.c_str(), seconds);
  } else {
    std::printf("FAIL  %d %-38s (%.2fs): %s\n", number, name.c_str(), seconds,
                check.detail.c_str());
    ++g_failures;
  }
}

void run(int number, const std::string &name,
         const std::function<void(Check &)> &body) {
  Check check;
  const auto start = Clock::now();
  try {
    body(check);
  } catch (const std::exception &err) {
    check.require(false, std::string("exception: ") + err.what());
  }
  const double seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  report(number, name, check, seconds);
}

GenParams varied_params(std::uint64_t seed, bool allow_loops) {
  GenParams params;
  params.num_functions = 1 + seed % 6;
  params.max_blocks = 1 + (seed / 7) % 8;  // at most 48 blocks per program
  params.max_insns_per_block = 1 + seed % 5;
  params.allow_loops = allow_loops;
  params.sequence_length =
      static_cast<std::uint32_t>(params.num_functions * (2 + seed % 10));
  return params;
}

// 1. Period-1 full-depth LBR sessions, taken end to end through the text
//    formats, must reproduce the oracle's block and head counts exactly.
void criterion_lossless_lbr(Check &check) {
  constexpr std::uint64_t kMaxTrace = 100000;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GenParams params = varied_params(seed, true);
    // Every fifth session chains enough runs to reach tens of thousands of
    // retired instructions.
    if (seed % 5 == 0) params.sequence_length *= 40;
    SyntheticProgram prog = gen_program(seed, params);
    Trace trace = run_trace(prog, seed + 1000, kMaxTrace);
    check.require(trace.addresses.size() < kMaxTrace,
                  "trace truncated at seed " + std::to_string(seed));

    SampleSet session =
        parse_samples(emit_samples(sample_lbr(trace, 1, 16, seed)));
    BinaryDescription bd = parse_binary_desc(emit_binary_desc(prog.binary));
    GroundTruth truth = ground_truth(trace, prog);

    AddressProfile walked = walk_ranges(session, bd);
    check.require(walked.dropped_samples == 0,
                  "dropped ranges at seed " + std::to_string(seed));
    BlockProfile blocks = block_counts(walked, bd);
    check.require(blocks.counts == truth.blocks.counts,
                  "block counts diverge at seed " + std::to_string(seed));

    auto heads = compute_head_counts(session, bd);
    check.require(heads == truth.heads,
                  "head counts diverge at seed " + std::to_string(seed));
    if (!check.ok) return;
  }

  // A few sessions close to the trace budget.
  for (std::uint64_t seed : {7ULL, 13ULL, 29ULL, 41ULL}) {
    GenParams params;
    params.num_functions = 6;
    params.max_blocks = 8;
    params.max_insns_per_block = 5;
    params.allow_loops = true;
    params.sequence_length = 6000;
    SyntheticProgram prog = gen_program(seed, params);
    Trace trace = run_trace(prog, seed + 1000, kMaxTrace);
    check.require(trace.addresses.size() < kMaxTrace,
                  "large trace truncated at seed " + std::to_string(seed));
    SampleSet session =
        parse_samples(emit_samples(sample_lbr(trace, 1, 16, seed)));
    BinaryDescription bd = parse_binary_desc(emit_binary_desc(prog.binary));
    GroundTruth truth = ground_truth(trace, prog);
    BlockProfile blocks = block_counts(walk_ranges(session, bd), bd);
    check.require(blocks.counts == truth.blocks.counts &&
                      compute_head_counts(session, bd) == truth.heads,
                  "large session diverges at seed " + std::to_string(seed));
    if (!check.ok) return;
  }
}

// 2. Cycles mode: unjittered sampling satisfies the per-address period
//    bound, and jittered sampling estimates hot blocks within 10%.
void criterion_cycles_accuracy(Check &check) {
  // Per-address bound, one execution per function so the bound is sharp.
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    GenParams params = varied_params(seed, false);
    params.sequence_length = params.num_functions;
    SyntheticProgram prog = gen_program(seed, params);
    Trace trace = run_trace(prog, seed + 1, 100000);
    GroundTruth truth = ground_truth(trace, prog);
    for (std::uint64_t period : {1ULL, 3ULL, 7ULL, 13ULL}) {
      SampleSet session = sample_cycles(trace, period, 0.0, seed);
      AddressProfile ap = build_address_profile(session, prog.binary);
      for (const FunctionDesc &func : prog.binary.functions) {
        for (const BlockDesc &block : func.blocks) {
          for (const InstructionDesc &insn : block.instructions) {
            auto cit = ap.counts.find(insn.address);
            const std::uint64_t sampled =
                cit == ap.counts.end() ? 0 : cit->second;
            auto tit = truth.addresses.find(insn.address);
            const std::uint64_t executed =
                tit == truth.addresses.end() ? 0 : tit->second;
            const std::int64_t diff =
                static_cast<std::int64_t>(sampled * period) -
                static_cast<std::int64_t>(executed);
            check.require(static_cast<std::uint64_t>(std::llabs(diff)) <=
                              period,
                          "per-address bound violated at seed " +
                              std::to_string(seed));
          }
        }
      }
    }
    if (!check.ok) return;
  }

  // Jittered estimation on a long loopy trace.
  const std::uint64_t period = 10;
  GenParams params;
  params.num_functions = 3;
  params.max_blocks = 6;
  params.allow_loops = true;
  params.sequence_length = 15000;
  SyntheticProgram prog = gen_program(424242, params);
  Trace trace = run_trace(prog, 424243, 600000);
  check.require(trace.addresses.size() < 600000, "jitter trace truncated");
  GroundTruth truth = ground_truth(trace, prog);
  SampleSet session = sample_cycles(trace, period, 0.2, 424244);
  BlockProfile estimated =
      block_counts(build_address_profile(session, prog.binary), prog.binary);

  std::size_t hot_blocks = 0;
  for (const FunctionDesc &func : prog.binary.functions) {
    for (std::size_t b = 0; b < func.blocks.size(); ++b) {
      const BlockRef ref{func.asm_name, static_cast<std::uint32_t>(b)};
      const std::uint64_t executions = truth.blocks.counts.at(ref);
      const std::uint64_t retired =
          executions * func.blocks[b].instructions.size();
      if (retired < 200 * period) continue;  // expects < 200 samples
      ++hot_blocks;
      const double estimate =
          static_cast<double>(estimated.counts.at(ref) * period);
      const double exact = static_cast<double>(executions);
      check.require(std::abs(estimate - exact) <= 0.10 * exact,
                    "hot block " + ref.function_asm_name + "/" +
                        std::to_string(ref.block_index) + " off by more "
                        "than 10%: estimate " + std::to_string(estimate) +
                        " truth " + std::to_string(exact));
    }
  }
  check.require(hot_blocks >= 3, "too few hot blocks to judge accuracy");
}

// 3. Two inlined copies of one callee must produce two distinct nested
//    subprofiles whose counts equal the per-copy truth exactly.
void criterion_inline_disambiguation(Check &check) {
  for (std::uint64_t seed = 200; seed < 210; ++seed) {
    GenParams params;
    params.num_functions = 2 + seed % 3;
    params.max_blocks = 4 + seed % 4;
    SyntheticProgram prog = gen_program(seed, params);
    Trace trace = run_trace(prog, seed + 1, 100000);
    SampleSet session = sample_lbr(trace, 1, 16, seed);
    GroundTruth truth = ground_truth(trace, prog);
    ConvertResult result = convert_samples(session, prog.binary);

    // The host is the generator's first function. Collect its inlined
    // instruction groups: per distinct stack, the containing block.
    const FunctionDesc &host = prog.binary.functions[0];
    std::map<InlineStack, std::pair<std::uint32_t, std::uint64_t>> copies;
    for (std::size_t b = 0; b < host.blocks.size(); ++b) {
      for (const InstructionDesc &insn : host.blocks[b].instructions) {
        if (insn.source_key.frames.size() < 2) continue;
        copies[insn.source_key] = {
            static_cast<std::uint32_t>(b),
            truth.blocks.counts.at(
                {host.asm_name, static_cast<std::uint32_t>(b)})};
      }
    }
    check.require(copies.size() >= 2, "generator lost the inline pattern");

    auto hit = result.profile.functions.find(host.asm_name);
    check.require(hit != result.profile.functions.end(),
                  "host function missing from profile");
    if (!check.ok) return;

    std::set<CallsiteKey> seen_sites;
    for (const auto &[stack, where] : copies) {
      const auto &[block_index, executions] = where;
      const Frame &site = stack.frames[1];
      const Frame &leaf = stack.frames[0];
      const FunctionDesc *callee =
          prog.binary.find_function_by_bfd(leaf.function_bfd_name, leaf.file);
      check.require(callee != nullptr, "callee not described");
      if (!check.ok) return;
      CallsiteKey key{site.line - host.start_line, site.discriminator,
                      leaf.function_bfd_name};
      seen_sites.insert(key);
      auto sit = hit->second.inlined.find(key);
      if (executions == 0) continue;  // copy never ran; nothing to compare
      check.require(sit != hit->second.inlined.end(),
                    "inlined subprofile missing at seed " +
                        std::to_string(seed));
      if (!check.ok) return;
      const BodyKey leaf_key{leaf.line - callee->start_line,
                             leaf.discriminator};
      auto bit = sit->second.body.find(leaf_key);
      check.require(bit != sit->second.body.end() && bit->second == executions,
                    "per-copy count diverges at seed " + std::to_string(seed));
    }
    check.require(seen_sites.size() == copies.size(),
                  "inline copies collapsed into one call site");
    if (!check.ok) return;
  }
}

// 4. Merge: commutative, associative, empty identity, byte-stable.
void criterion_merge_algebra(Check &check) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SourceProfile a = testing::random_profile(seed * 5 + 1);
    SourceProfile b = testing::random_profile(seed * 5 + 2);
    SourceProfile c = testing::random_profile(seed * 5 + 3);
    SourceProfile ab = merge(a, b);
    SourceProfile ba = merge(b, a);
    check.require(ab == ba, "merge not commutative at seed " +
                                std::to_string(seed));
    check.require(emit_profile(ab) == emit_profile(ba),
                  "merge emission differs at seed " + std::to_string(seed));
    check.require(merge(ab, c) == merge(a, merge(b, c)),
                  "merge not associative at seed " + std::to_string(seed));
    check.require(merge(a, SourceProfile{}) == a &&
                      merge(SourceProfile{}, a) == a,
                  "empty profile is not the identity at seed " +
                      std::to_string(seed));
    if (!check.ok) return;
  }
}

// 5. emit-then-parse is the identity for profiles and CFGs.
void criterion_round_trips(Check &check) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SourceProfile p = testing::random_profile(seed);
    const std::string text = emit_profile(p);
    check.require(parse_profile(text) == p,
                  "profile round trip broke at seed " + std::to_string(seed));
    check.require(emit_profile(p) == text, "profile emission unstable");
    if (!check.ok) return;
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Cfg cfg = testing::random_dag_cfg(seed);
    const std::string text = emit_cfg(cfg);
    std::vector<Cfg> reparsed = parse_cfgs(text);
    check.require(reparsed.size() == 1 && reparsed[0] == cfg,
                  "cfg round trip broke at seed " + std::to_string(seed));
    if (!check.ok) return;
  }
}

// 6. Propagation from oracle block counts: resolved edges equal oracle edge
//    tallies, conservation holds at fully resolved unclamped nodes, and the
//    sweep count stays within the edge count.
void criterion_edge_propagation(Check &check) {
  for (std::uint64_t seed = 300; seed < 330; ++seed) {
    SyntheticProgram prog = gen_program(seed, varied_params(seed, false));
    Trace trace = run_trace(prog, seed + 1, 50000);
    GroundTruth truth = ground_truth(trace, prog);
    for (std::size_t f = 0; f < prog.cfgs.size(); ++f) {
      const Cfg &cfg = prog.cfgs[f];
      std::map<std::uint32_t, std::uint64_t> counts;
      for (const CfgBlock &block : cfg.blocks) {
        counts[block.id] = truth.blocks.counts.at({cfg.asm_name, block.id});
      }
      EdgeProfile ep = propagate_edges(cfg, counts);
      check.require(ep.clamped == 0, "clamped on consistent oracle data");
      check.require(ep.rounds <= cfg.edges.size(),
                    "propagation exceeded one round per edge");
      const auto &tallies = truth.edges[cfg.asm_name];
      for (std::size_t e = 0; e < cfg.edges.size(); ++e) {
        if (!ep.edge_resolved[e]) continue;
        auto it = tallies.find(cfg.edges[e]);
        const std::uint64_t expected = it == tallies.end() ? 0 : it->second;
        check.require(ep.edge_counts[e] == expected,
                      "resolved edge diverges from oracle at seed " +
                          std::to_string(seed));
      }
      // Conservation at fully resolved, unclamped blocks.
      for (const CfgBlock &block : cfg.blocks) {
        std::uint64_t in_sum = 0, out_sum = 0;
        bool in_all = true, out_all = true, has_in = false, has_out = false;
        for (std::size_t e = 0; e < cfg.edges.size(); ++e) {
          if (cfg.edges[e].dst == block.id) {
            has_in = true;
            in_all = in_all && ep.edge_resolved[e];
            in_sum += ep.edge_counts[e];
          }
          if (cfg.edges[e].src == block.id) {
            has_out = true;
            out_all = out_all && ep.edge_resolved[e];
            out_sum += ep.edge_counts[e];
          }
        }
        if (has_in && in_all) {
          check.require(in_sum == counts.at(block.id),
                        "inflow conservation broke at seed " +
                            std::to_string(seed));
        }
        if (has_out && out_all) {
          check.require(out_sum == counts.at(block.id),
                        "outflow conservation broke at seed " +
                            std::to_string(seed));
        }
      }
      if (!check.ok) return;
    }
  }
}

// 7. Any function with samples gets a nonzero entry block count.
void criterion_dead_function_guard(Check &check) {
  // The crafted case: entry statements resolve to zero.
  Cfg cfg;
  cfg.asm_name = "f";
  cfg.start_line = 1;
  cfg.entry = 0;
  cfg.exit = 1;
  cfg.blocks = {{0, {{0, 0}}}, {1, {{5, 0}}}};
  cfg.edges = {{0, 1}};
  SourceProfile p;
  FunctionProfile &fp = p.functions["f"];
  fp.asm_name = fp.bfd_name = "f";
  fp.head_count = 4;
  fp.body[{5, 0}] = 50;
  fp.recompute_totals();
  auto counts = annotate_blocks(cfg, p);
  check.require(counts.at(0) == 4, "entry not lifted to the head count");
  fp.head_count = 0;
  check.require(annotate_blocks(cfg, p).at(0) == 1,
                "entry not lifted to one without head events");

  // And across simulated conversions.
  for (std::uint64_t seed = 400; seed < 420; ++seed) {
    SyntheticProgram prog = gen_program(seed, varied_params(seed, true));
    Trace trace = run_trace(prog, seed + 1, 50000);
    SampleSet session = sample_lbr(trace, 1, 16, seed);
    ConvertResult result = convert_samples(session, prog.binary);
    for (const Cfg &fcfg : prog.cfgs) {
      auto fit = result.profile.functions.find(fcfg.asm_name);
      if (fit == result.profile.functions.end() ||
          fit->second.total_count == 0) {
        continue;
      }
      auto block_map = annotate_blocks(fcfg, result.profile);
      check.require(block_map.at(fcfg.entry) > 0,
                    "sampled function annotated dead at seed " +
                        std::to_string(seed));
    }
    if (!check.ok) return;
  }
}

// 8. A million PC samples against a ten-thousand-instruction description
//    convert in under ten seconds, text parsing included.
void criterion_throughput(Check &check) {
  std::string desc;
  const std::uint32_t kFunctions = 100, kBlocks = 10, kInsns = 10;
  std::uint64_t addr = 0x400000;
  for (std::uint32_t f = 0; f < kFunctions; ++f) {
    const std::string name = "func" + std::to_string(f);
    const std::uint64_t low = addr;
    const std::uint64_t high = low + 4 * kBlocks * kInsns;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "func name=%s bfd=%s file=%s.c line=10 range=0x%llx-0x%llx\n",
                  name.c_str(), name.c_str(), name.c_str(),
                  static_cast<unsigned long long>(low),
                  static_cast<unsigned long long>(high));
    desc += buf;
    for (std::uint32_t b = 0; b < kBlocks; ++b) {
      std::snprintf(buf, sizeof(buf), "block range=0x%llx-0x%llx\n",
                    static_cast<unsigned long long>(addr),
                    static_cast<unsigned long long>(addr + 4 * kInsns));
      desc += buf;
      for (std::uint32_t k = 0; k < kInsns; ++k) {
        std::snprintf(buf, sizeof(buf), "insn addr=0x%llx loc=%s:%s.c:%u.0\n",
                      static_cast<unsigned long long>(addr), name.c_str(),
                      name.c_str(), 11 + b * kInsns + k);
        desc += buf;
        addr += 4;
      }
    }
    addr += 0x1000;  // gap between functions
  }

  std::string samples = "mode: cycles\nevent: UNHALTED_CORE_CYCLES\n"
                        "period: 2000000\n";
  samples.reserve(samples.size() + 30000000);
  Rng rng(99);
  const std::uint64_t span = 4ULL * kBlocks * kInsns;
  for (std::uint64_t i = 0; i < 1000000; ++i) {
    const std::uint64_t f = rng.below(kFunctions);
    const std::uint64_t a =
        0x400000 + f * (span + 0x1000) + 4 * rng.below(kBlocks * kInsns);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "S 0x%llx 1\n",
                  static_cast<unsigned long long>(a));
    samples += buf;
  }

  const auto start = Clock::now();
  SampleSet session = parse_samples(samples);
  BinaryDescription bd = parse_binary_desc(desc);
  ConvertResult result = convert_samples(session, bd);
  const std::string out = emit_profile(result.profile);
  const double seconds =
      std::chrono::duration<double>(Clock::now() - start).count();

  check.require(session.pc_samples.size() == 1000000, "sample count wrong");
  check.require(bd.instruction_count() == 10000, "instruction count wrong");
  check.require(result.dropped_samples == 0, "samples dropped");
  check.require(!out.empty(), "profile empty");
  check.require(seconds < 10.0, "conversion took " + std::to_string(seconds) +
                                    "s, limit is 10s");
}

}  // namespace

int main() {
  run(1, "lossless-lbr-oracle-equivalence", criterion_lossless_lbr);
  run(2, "cycles-mode-accuracy", criterion_cycles_accuracy);
  run(3, "inline-disambiguation", criterion_inline_disambiguation);
  run(4, "merge-algebra", criterion_merge_algebra);
  run(5, "format-round-trips", criterion_round_trips);
  run(6, "edge-propagation", criterion_edge_propagation);
  run(7, "dead-function-guard", criterion_dead_function_guard);
  run(8, "throughput-sanity", criterion_throughput);
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
