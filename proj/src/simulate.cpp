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

#include "fdoprof/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "fdoprof/error.hpp"

namespace fdoprof {

namespace {

constexpr std::uint64_t kFunctionBase = 0x400000;
constexpr std::uint64_t kFunctionStride = 0x10000;
constexpr std::uint64_t kInsnSize = 4;

std::string hex(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "0x%llx", static_cast<unsigned long long>(v));
  return buf;
}

// A statement to place in a block: its source key and how many instructions
// implement it. Own statements carry one frame; inlined ones carry the full
// stack.
struct StmtSpec {
  InlineStack key;
  std::uint32_t n_insns = 1;
  bool own = true;  // listed in the CFG's statement span
};

struct FunctionPlan {
  std::string name;
  std::string asm_name;
  std::string bfd_name;
  std::string file;
  std::uint32_t start_line = 1;
  std::uint64_t base = 0;
  std::uint32_t n_blocks = 1;
  std::vector<std::vector<StmtSpec>> block_stmts;
};

}  // namespace

SyntheticProgram gen_program(std::uint64_t seed, const GenParams &params) {
  if (params.num_functions == 0 || params.max_blocks == 0 ||
      params.max_insns_per_block == 0) {
    throw ValidationError("degenerate size parameters: functions, blocks and "
                          "instructions per block must all be >= 1");
  }
  Rng rng(seed);

  // Names, files and start lines first, so inline stacks can reference the
  // callee's declaration before its body is laid out.
  std::vector<FunctionPlan> plans(params.num_functions);
  for (std::uint32_t i = 0; i < params.num_functions; ++i) {
    FunctionPlan &plan = plans[i];
    plan.name = "f" + std::to_string(i);
    plan.asm_name = "_Z" + std::to_string(plan.name.size()) + plan.name + "v";
    plan.bfd_name = plan.name;
    plan.file = plan.name + ".cc";
    plan.start_line = 10 + static_cast<std::uint32_t>(rng.below(90));
    plan.base = kFunctionBase + i * kFunctionStride;
    plan.n_blocks = 1 + static_cast<std::uint32_t>(rng.below(params.max_blocks));
  }

  const std::uint32_t host = 0;
  const std::uint32_t callee = params.num_functions > 1 ? 1 : 0;
  const std::uint32_t copy_block_a = 0;
  const std::uint32_t copy_block_b =
      plans[host].n_blocks > 1 ? plans[host].n_blocks - 1 : 0;

  for (std::uint32_t i = 0; i < params.num_functions; ++i) {
    FunctionPlan &plan = plans[i];
    std::uint32_t next_line = plan.start_line + 1;
    plan.block_stmts.resize(plan.n_blocks);

    for (std::uint32_t b = 0; b < plan.n_blocks; ++b) {
      std::uint32_t own =
          1 + static_cast<std::uint32_t>(rng.below(params.max_insns_per_block));
      // Two statements on one line, told apart by discriminator, in the
      // host's entry block.
      if (i == host && b == 0) {
        const std::uint32_t line = next_line++;
        plan.block_stmts[b].push_back(
            {InlineStack{{Frame{plan.bfd_name, plan.file, line, 0}}}, 1, true});
        plan.block_stmts[b].push_back(
            {InlineStack{{Frame{plan.bfd_name, plan.file, line, 1}}}, 1, true});
        own = own > 2 ? own - 2 : 0;
      }
      while (own > 0) {
        const std::uint32_t size = std::min<std::uint32_t>(
            own, 1 + static_cast<std::uint32_t>(rng.below(2)));
        plan.block_stmts[b].push_back(
            {InlineStack{{Frame{plan.bfd_name, plan.file, next_line++, 0}}},
             size, true});
        own -= size;
      }
      // Two inlined copies of the callee in the host: same leaf statement,
      // different call sites.
      if (i == host && (b == copy_block_a || b == copy_block_b)) {
        const std::uint32_t callsite_line = next_line++;
        const std::uint32_t leaf_line = plans[callee].start_line + 1;
        InlineStack stack;
        stack.frames.push_back(
            Frame{plans[callee].bfd_name, plans[callee].file, leaf_line, 0});
        stack.frames.push_back(
            Frame{plan.bfd_name, plan.file, callsite_line, 0});
        plan.block_stmts[b].push_back({stack, 2, false});
        if (copy_block_a == copy_block_b && b == copy_block_a) {
          // Single-block host: place the second copy right away.
          const std::uint32_t callsite2 = next_line++;
          InlineStack stack2 = stack;
          stack2.frames[1].line = callsite2;
          plan.block_stmts[b].push_back({stack2, 2, false});
        }
      }
    }
  }

  SyntheticProgram prog;
  for (std::uint32_t i = 0; i < params.num_functions; ++i) {
    const FunctionPlan &plan = plans[i];
    FunctionDesc func;
    func.asm_name = plan.asm_name;
    func.bfd_name = plan.bfd_name;
    func.file = plan.file;
    func.start_line = plan.start_line;

    Cfg cfg;
    cfg.asm_name = plan.asm_name;
    cfg.start_line = plan.start_line;
    cfg.entry = 0;
    cfg.exit = plan.n_blocks - 1;

    std::uint64_t cursor = plan.base;
    for (std::uint32_t b = 0; b < plan.n_blocks; ++b) {
      BlockDesc block;
      block.range.low = cursor;
      CfgBlock cfg_block;
      cfg_block.id = b;
      for (const StmtSpec &stmt : plan.block_stmts[b]) {
        for (std::uint32_t k = 0; k < stmt.n_insns; ++k) {
          InstructionDesc insn;
          insn.address = cursor;
          insn.source_key = stmt.key;
          block.instructions.push_back(std::move(insn));
          cursor += kInsnSize;
        }
        if (stmt.own) {
          const Frame &leaf = stmt.key.frames.front();
          cfg_block.statements.push_back(
              {leaf.line - plan.start_line, leaf.discriminator});
        }
      }
      block.range.high = cursor;
      func.blocks.push_back(std::move(block));
      cfg.blocks.push_back(std::move(cfg_block));
    }
    func.range = {plan.base, cursor};

    // Edges: a fall-through chain keeps every block reachable; optional
    // forward jumps and (when allowed) back or self edges add shape. Forward
    // edges get the heavier weights so loops stay short.
    std::vector<std::vector<std::size_t>> out_edges(plan.n_blocks);
    std::vector<double> weights;
    for (std::uint32_t b = 0; b + 1 < plan.n_blocks; ++b) {
      out_edges[b].push_back(cfg.edges.size());
      cfg.edges.push_back({b, b + 1});
      weights.push_back(1.0 + rng.unit());
      if (b + 2 < plan.n_blocks && rng.below(2) == 0) {
        const std::uint32_t target =
            static_cast<std::uint32_t>(rng.between(b + 2, plan.n_blocks - 1));
        out_edges[b].push_back(cfg.edges.size());
        cfg.edges.push_back({b, target});
        weights.push_back(1.0 + rng.unit());
      }
      if (params.allow_loops && b >= 1 && rng.below(3) == 0) {
        const std::uint32_t target =
            static_cast<std::uint32_t>(rng.between(1, b));
        out_edges[b].push_back(cfg.edges.size());
        cfg.edges.push_back({b, target});
        weights.push_back(0.2 + 0.3 * rng.unit());
      }
    }

    std::vector<double> probs(cfg.edges.size(), 0.0);
    for (std::uint32_t b = 0; b < plan.n_blocks; ++b) {
      double total = 0.0;
      for (std::size_t e : out_edges[b]) total += weights[e];
      for (std::size_t e : out_edges[b]) probs[e] = weights[e] / total;
    }

    // The last instruction of a block is a branch when the block can leave
    // the fall-through path; the exit block always branches away.
    for (std::uint32_t b = 0; b < plan.n_blocks; ++b) {
      bool branches_out = b + 1 == plan.n_blocks;
      for (std::size_t e : out_edges[b]) {
        if (cfg.edges[e].dst != b + 1) branches_out = true;
      }
      if (branches_out) func.blocks[b].instructions.back().is_branch = true;
    }

    prog.binary.functions.push_back(std::move(func));
    prog.cfgs.push_back(std::move(cfg));
    prog.edge_probs.push_back(std::move(probs));
  }

  prog.binary.finalize();
  for (const Cfg &cfg : prog.cfgs) cfg.validate();

  // Run order: every function once, shuffled, plus optional extra runs.
  std::uint32_t length = params.sequence_length > 0 ? params.sequence_length
                                                    : params.num_functions;
  for (std::uint32_t i = 0; i < length; ++i) {
    prog.call_sequence.push_back(
        i < params.num_functions
            ? i
            : static_cast<std::uint32_t>(rng.below(params.num_functions)));
  }
  for (std::size_t i = prog.call_sequence.size(); i > 1; --i) {
    std::swap(prog.call_sequence[i - 1], prog.call_sequence[rng.below(i)]);
  }
  return prog;
}

Trace run_trace(const SyntheticProgram &prog, std::uint64_t seed,
                std::uint64_t max_insns) {
  if (max_insns == 0) throw ValidationError("max_insns must be >= 1");
  Rng rng(seed);
  Trace trace;

  // Per-function out-edge index, built once.
  std::vector<std::vector<std::vector<std::size_t>>> out_edges(prog.cfgs.size());
  for (std::size_t f = 0; f < prog.cfgs.size(); ++f) {
    const Cfg &cfg = prog.cfgs[f];
    out_edges[f].resize(cfg.blocks.size());
    for (std::size_t e = 0; e < cfg.edges.size(); ++e) {
      out_edges[f][cfg.edges[e].src].push_back(e);
    }
  }

  bool budget_left = true;
  for (std::size_t s = 0; s < prog.call_sequence.size() && budget_left; ++s) {
    const std::uint32_t f = prog.call_sequence[s];
    const FunctionDesc &func = prog.binary.functions[f];
    const Cfg &cfg = prog.cfgs[f];

    trace.branches.push_back(
        {trace.addresses.empty() ? SyntheticProgram::kEntryStub
                                 : trace.addresses.back(),
         func.range.low});

    std::uint32_t block = cfg.entry;
    while (budget_left) {
      const BlockDesc &desc = func.blocks[block];
      for (const InstructionDesc &insn : desc.instructions) {
        trace.addresses.push_back(insn.address);
        if (trace.addresses.size() >= max_insns) {
          budget_left = false;
          break;
        }
      }
      if (!budget_left || block == cfg.exit) break;

      const std::vector<std::size_t> &outs = out_edges[f][block];
      std::size_t chosen = outs.back();
      if (outs.size() > 1) {
        double draw = rng.unit();
        for (std::size_t e : outs) {
          const double p = prog.edge_probs[f][e];
          if (draw < p) {
            chosen = e;
            break;
          }
          draw -= p;
        }
      }
      const std::uint32_t next = prog.cfgs[f].edges[chosen].dst;
      if (next != block + 1) {
        trace.branches.push_back(
            {desc.instructions.back().address, func.blocks[next].range.low});
      }
      block = next;
    }
  }

  // Cap the trace so the last retired instruction is branch-delimited even
  // when the budget ran out mid-block.
  if (!trace.addresses.empty()) {
    trace.branches.push_back(
        {trace.addresses.back(), SyntheticProgram::kExitStub});
  } else {
    trace.branches.clear();
  }
  return trace;
}

SampleSet sample_cycles(const Trace &trace, std::uint64_t period,
                        double jitter, std::uint64_t seed) {
  if (period == 0) throw ValidationError("period must be >= 1");
  SampleSet set;
  set.mode = SampleMode::kCycles;
  set.event_name = "UNHALTED_CORE_CYCLES";
  set.period = period;

  Rng rng(seed);
  const double p = static_cast<double>(period);
  // Gaps accumulate as reals and round to retirement indices, so fractional
  // jitter still shifts the sample phase at small periods.
  double position = 0.0;
  std::uint64_t last_index = 0;
  while (true) {
    position += jitter <= 0.0 ? p : p * (1.0 - jitter) + rng.unit() * 2.0 * p * jitter;
    std::uint64_t index =
        std::max<std::uint64_t>(last_index + 1,
                                static_cast<std::uint64_t>(std::llround(position)));
    if (index > trace.addresses.size()) break;
    set.pc_samples.push_back({trace.addresses[index - 1], 1});
    last_index = index;
  }
  return set;
}

SampleSet sample_lbr(const Trace &trace, std::uint64_t period,
                     std::uint32_t depth, std::uint64_t seed) {
  if (period == 0) throw ValidationError("period must be >= 1");
  if (depth == 0 || depth > BranchStack::kMaxPairs) {
    throw ValidationError("depth must be between 1 and 16");
  }
  (void)seed;  // branch sampling is unjittered

  SampleSet set;
  set.mode = SampleMode::kLbr;
  set.event_name = "BRANCH_INST_RETIRED";
  set.period = period;

  // window_start is the previous sample's newest branch: reporting it again
  // lets the consumer walk the range between two sample windows; the head
  // counter recognizes and skips the duplicate.
  std::size_t window_start = 0;
  for (std::size_t i = 0; i < trace.branches.size(); ++i) {
    if ((i + 1) % period != 0) continue;
    std::size_t start = window_start;
    if (i + 1 - start > depth) start = i + 1 - depth;
    BranchStack stack;
    for (std::size_t j = start; j <= i; ++j) {
      stack.pairs.push_back(trace.branches[j]);
    }
    set.lbr_samples.push_back(std::move(stack));
    window_start = i;
  }
  return set;
}

GroundTruth ground_truth(const Trace &trace, const SyntheticProgram &prog) {
  GroundTruth truth;

  struct Slot {
    const FunctionDesc *func = nullptr;
    std::size_t func_index = 0;
    std::uint32_t block = 0;
    bool first = false;
    bool last = false;
  };
  std::map<std::uint64_t, Slot> slots;
  std::vector<std::set<std::pair<std::uint32_t, std::uint32_t>>> edge_sets(
      prog.cfgs.size());
  for (std::size_t f = 0; f < prog.binary.functions.size(); ++f) {
    const FunctionDesc &func = prog.binary.functions[f];
    truth.heads[func.asm_name] = 0;
    for (const CfgEdge &edge : prog.cfgs[f].edges) {
      edge_sets[f].insert({edge.src, edge.dst});
    }
    for (std::size_t b = 0; b < func.blocks.size(); ++b) {
      const BlockDesc &block = func.blocks[b];
      truth.blocks.counts[{func.asm_name, static_cast<std::uint32_t>(b)}] = 0;
      for (std::size_t k = 0; k < block.instructions.size(); ++k) {
        Slot slot;
        slot.func = &func;
        slot.func_index = f;
        slot.block = static_cast<std::uint32_t>(b);
        slot.first = k == 0;
        slot.last = k + 1 == block.instructions.size();
        slots.emplace(block.instructions[k].address, slot);
      }
    }
  }

  const Slot *prev = nullptr;
  for (std::uint64_t addr : trace.addresses) {
    ++truth.addresses[addr];
    auto it = slots.find(addr);
    const Slot *cur = it == slots.end() ? nullptr : &it->second;
    if (cur != nullptr) {
      if (addr == cur->func->range.low) ++truth.heads[cur->func->asm_name];
      if (cur->first) {
        ++truth.blocks.counts[{cur->func->asm_name, cur->block}];
        // Only transitions along declared edges count; a re-entry into the
        // same function is a call, not a control-flow edge.
        if (prev != nullptr && prev->last && prev->func == cur->func &&
            edge_sets[cur->func_index].count({prev->block, cur->block})) {
          ++truth.edges[cur->func->asm_name][{prev->block, cur->block}];
        }
      }
    }
    prev = cur;
  }
  return truth;
}

std::string emit_ground_truth(const GroundTruth &truth) {
  std::string out;
  for (const auto &[ref, count] : truth.blocks.counts) {
    out += "block " + ref.function_asm_name + " " +
           std::to_string(ref.block_index) + " " + std::to_string(count) + "\n";
  }
  for (const auto &[func, edges] : truth.edges) {
    for (const auto &[edge, count] : edges) {
      out += "edge " + func + " " + std::to_string(edge.src) + "->" +
             std::to_string(edge.dst) + " " + std::to_string(count) + "\n";
    }
  }
  for (const auto &[addr, count] : truth.addresses) {
    out += "addr " + hex(addr) + " " + std::to_string(count) + "\n";
  }
  for (const auto &[func, count] : truth.heads) {
    out += "head " + func + " " + std::to_string(count) + "\n";
  }
  return out;
}

}  // namespace fdoprof
