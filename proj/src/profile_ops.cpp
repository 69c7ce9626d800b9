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

#include "fdoprof/profile_ops.hpp"

#include <algorithm>

#include "fdoprof/counts.hpp"
#include "fdoprof/error.hpp"
#include "fdoprof/lbr.hpp"

namespace fdoprof {

namespace {

// Offsets are relative to the enclosing frame's start line; locations above
// it (macro expansions and the like) land on offset 0.
std::uint32_t offset_from(std::uint32_t line, std::uint32_t start_line) {
  return line < start_line ? 0 : line - start_line;
}

}  // namespace

SourceProfile build_source_profile(
    const SourceAccumulator &acc, const BinaryDescription &bd,
    const std::map<std::string, std::uint64_t> &head, BuildStats *stats) {
  BuildStats local;
  BuildStats &st = stats != nullptr ? *stats : local;
  SourceProfile profile;

  for (const auto &[key, entry] : acc.entries) {
    const std::uint64_t normalized =
        div_round_half_up(entry.count_sum, entry.mapped_instructions);
    if (normalized == 0) continue;

    // Root the stack at the outermost frame whose debug name resolves to a
    // described function.
    const std::vector<Frame> &frames = key.frames;
    std::size_t root = frames.size();
    const FunctionDesc *root_func = nullptr;
    while (root > 0) {
      const Frame &frame = frames[root - 1];
      root_func = bd.find_function_by_bfd(frame.function_bfd_name, frame.file);
      if (root_func != nullptr) break;
      ++st.unknown_frames;
      --root;
    }
    if (root_func == nullptr) {
      ++st.dropped_keys;
      continue;
    }

    FunctionProfile &top = profile.functions[root_func->asm_name];
    if (top.asm_name.empty()) {
      top.asm_name = root_func->asm_name;
      top.bfd_name = root_func->bfd_name;
    }

    FunctionProfile *context = &top;
    std::uint32_t context_start = root_func->start_line;
    bool descended = true;
    for (std::size_t i = root - 1; i >= 1; --i) {
      // frames[i] is the call site of frames[i - 1].
      const Frame &site = frames[i];
      const Frame &callee = frames[i - 1];
      const std::uint32_t off = offset_from(site.line, context_start);
      const FunctionDesc *callee_func =
          bd.find_function_by_bfd(callee.function_bfd_name, callee.file);
      if (callee_func == nullptr) {
        // Unknown callee: charge the count to the call site itself.
        ++st.unknown_frames;
        std::uint64_t &slot = context->body[{off, site.discriminator}];
        slot = sat_add(slot, normalized, &st.saturations);
        descended = false;
        break;
      }
      CallsiteKey callsite{off, site.discriminator, callee.function_bfd_name};
      FunctionProfile &sub = context->inlined[callsite];
      if (sub.asm_name.empty()) {
        sub.asm_name = callsite.callee_bfd_name;
        sub.bfd_name = callsite.callee_bfd_name;
      }
      context = &sub;
      context_start = callee_func->start_line;
    }
    if (descended) {
      const Frame &leaf = frames[0];
      const std::uint32_t off = offset_from(leaf.line, context_start);
      std::uint64_t &slot = context->body[{off, leaf.discriminator}];
      slot = sat_add(slot, normalized, &st.saturations);
    }
  }

  // Head counts; a function entered but never sampled stays in the profile
  // so it cannot look dead downstream.
  for (const auto &[asm_name, head_count] : head) {
    if (head_count == 0) continue;
    const FunctionDesc *func = bd.find_function(asm_name);
    FunctionProfile &fp = profile.functions[asm_name];
    if (fp.asm_name.empty()) {
      fp.asm_name = asm_name;
      fp.bfd_name = func != nullptr ? func->bfd_name : asm_name;
    }
    fp.head_count = head_count;
  }

  for (auto &[name, fp] : profile.functions) fp.recompute_totals();
  return profile;
}

std::map<std::string, std::uint64_t> compute_head_counts(
    const SampleSet &samples, const BinaryDescription &bd) {
  std::map<std::string, std::uint64_t> heads;
  for (const FunctionDesc &func : bd.functions) heads[func.asm_name] = 0;

  if (samples.mode == SampleMode::kLbr) {
    std::map<std::uint64_t, const FunctionDesc *> entries;
    for (const FunctionDesc &func : bd.functions) {
      entries.emplace(func.range.low, &func);
    }
    const BranchStack::Pair *carryover = nullptr;
    for (const BranchStack &stack : samples.lbr_samples) {
      for (std::size_t i = 0; i < stack.pairs.size(); ++i) {
        const BranchStack::Pair &pair = stack.pairs[i];
        if (i == 0 && carryover != nullptr && pair == *carryover) {
          continue;  // re-reported by the sampler, already counted
        }
        auto it = entries.find(pair.to_addr);
        if (it != entries.end()) ++heads[it->second->asm_name];
      }
      if (!stack.pairs.empty()) carryover = &stack.pairs.back();
    }
    return heads;
  }

  // Cycles mode: the normalized count of the block holding the entry address.
  const AddressProfile ap = build_address_profile(samples, bd);
  for (const FunctionDesc &func : bd.functions) {
    for (const BlockDesc &block : func.blocks) {
      if (!block.range.contains(func.range.low)) continue;
      std::uint64_t sum = 0;
      for (const InstructionDesc &insn : block.instructions) {
        auto it = ap.counts.find(insn.address);
        if (it != ap.counts.end()) sum = sat_add(sum, it->second);
      }
      heads[func.asm_name] =
          div_round_half_up(sum, block.instructions.size());
      break;
    }
  }
  return heads;
}

namespace {

void merge_into(FunctionProfile &dst, const FunctionProfile &src,
                MergeStats &stats) {
  if (dst.bfd_name != src.bfd_name) {
    dst.bfd_name = std::min(dst.bfd_name, src.bfd_name);
  }
  dst.head_count = sat_add(dst.head_count, src.head_count, &stats.saturations);
  for (const auto &[key, count] : src.body) {
    std::uint64_t &slot = dst.body[key];
    slot = sat_add(slot, count, &stats.saturations);
  }
  for (const auto &[key, sub] : src.inlined) {
    auto it = dst.inlined.find(key);
    if (it == dst.inlined.end()) {
      dst.inlined.emplace(key, sub);
    } else {
      merge_into(it->second, sub, stats);
    }
  }
}

}  // namespace

SourceProfile merge(const SourceProfile &a, const SourceProfile &b,
                    MergeStats *stats) {
  MergeStats local;
  MergeStats &st = stats != nullptr ? *stats : local;
  SourceProfile out = a;
  for (const auto &[name, fp] : b.functions) {
    auto it = out.functions.find(name);
    if (it == out.functions.end()) {
      out.functions.emplace(name, fp);
    } else {
      merge_into(it->second, fp, st);
    }
  }
  for (auto &[name, fp] : out.functions) fp.recompute_totals();
  return out;
}

Report summarize(const SourceProfile &profile, std::size_t top_n,
                 std::uint64_t dropped_samples) {
  Report report;
  report.dropped_samples = dropped_samples;
  report.function_count = profile.functions.size();
  for (const auto &[name, fp] : profile.functions) {
    report.total_count = sat_add(report.total_count, fp.total_count);
    report.head_total = sat_add(report.head_total, fp.head_count);
    report.hottest.emplace_back(name, fp.total_count);
  }
  std::sort(report.hottest.begin(), report.hottest.end(),
            [](const auto &a, const auto &b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  if (report.hottest.size() > top_n) report.hottest.resize(top_n);
  return report;
}

std::string format_report(const Report &report) {
  std::string out;
  out += "functions: " + std::to_string(report.function_count) + "\n";
  out += "total samples: " + std::to_string(report.total_count) + "\n";
  out += "head total: " + std::to_string(report.head_total) + "\n";
  out += "dropped samples: " + std::to_string(report.dropped_samples) + "\n";
  if (!report.hottest.empty()) {
    out += "hottest:\n";
    for (const auto &[name, total] : report.hottest) {
      out += "  " + name + " " + std::to_string(total) + "\n";
    }
  }
  return out;
}

}  // namespace fdoprof
