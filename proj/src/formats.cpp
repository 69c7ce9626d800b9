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

#include "fdoprof/formats.hpp"

#include <charconv>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fdoprof/error.hpp"

namespace fdoprof {

namespace {

struct Line {
  std::size_t number = 0;  // 1-based position in the raw input
  std::string_view text;   // trailing whitespace stripped, indent kept
};

bool is_blank_or_comment(std::string_view s) {
  std::size_t i = s.find_first_not_of(" \t");
  return i == std::string_view::npos || s[i] == '#';
}

std::string_view rstrip(std::string_view s) {
  std::size_t end = s.find_last_not_of(" \t\r");
  return end == std::string_view::npos ? std::string_view{}
                                       : s.substr(0, end + 1);
}

// Splits the input into lines, dropping blanks and comments but keeping the
// original 1-based numbering for diagnostics.
std::vector<Line> significant_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw = eol == std::string_view::npos
                               ? text.substr(pos)
                               : text.substr(pos, eol - pos);
    ++number;
    if (!is_blank_or_comment(raw)) lines.push_back({number, rstrip(raw)});
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return lines;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) tokens.push_back(s.substr(start, i - start));
  }
  return tokens;
}

std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::optional<std::uint64_t> parse_u64(std::string_view s) {
  std::uint64_t value = 0;
  if (s.empty()) return std::nullopt;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<std::uint32_t> parse_u32(std::string_view s) {
  auto v = parse_u64(s);
  if (!v || *v > 0xffffffffULL) return std::nullopt;
  return static_cast<std::uint32_t>(*v);
}

std::optional<std::uint64_t> parse_hex(std::string_view s) {
  if (s.size() < 3 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X')) {
    return std::nullopt;
  }
  s.remove_prefix(2);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, 16);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// "<off>.<disc>" with both parts decimal.
std::optional<BodyKey> parse_body_key(std::string_view s) {
  std::size_t dot = s.rfind('.');
  if (dot == std::string_view::npos) return std::nullopt;
  auto off = parse_u32(s.substr(0, dot));
  auto disc = parse_u32(s.substr(dot + 1));
  if (!off || !disc) return std::nullopt;
  return BodyKey{*off, *disc};
}

[[noreturn]] void fail(const Line &line, const std::string &what) {
  throw ParseError(line.number, std::string(line.text), what);
}

// "key=value" accessor over a token list; returns nullopt when absent.
std::optional<std::string_view> attr(
    const std::vector<std::string_view> &tokens, std::string_view key) {
  for (std::string_view tok : tokens) {
    if (tok.size() > key.size() + 1 && tok.substr(0, key.size()) == key &&
        tok[key.size()] == '=') {
      return tok.substr(key.size() + 1);
    }
  }
  return std::nullopt;
}

std::string hex(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "0x%llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

// --- Sample files -----------------------------------------------------------

SampleSet parse_samples(std::string_view text) {
  std::vector<Line> lines = significant_lines(text);
  if (lines.size() < 3) {
    throw ParseError(lines.empty() ? 1 : lines.back().number, "",
                     "sample file needs mode:, event: and period: headers");
  }

  auto header = [](const Line &line, std::string_view key) -> std::string_view {
    auto tokens = split_ws(line.text);
    if (tokens.size() != 2 || tokens[0] != key) {
      fail(line, "expected '" + std::string(key) + " <value>' header");
    }
    return tokens[1];
  };

  SampleSet set;
  std::string_view mode = header(lines[0], "mode:");
  if (mode == "cycles") {
    set.mode = SampleMode::kCycles;
  } else if (mode == "lbr") {
    set.mode = SampleMode::kLbr;
  } else {
    fail(lines[0], "mode must be cycles or lbr");
  }
  set.event_name = std::string(header(lines[1], "event:"));
  auto period = parse_u64(header(lines[2], "period:"));
  if (!period || *period == 0) fail(lines[2], "period must be a positive integer");
  set.period = *period;

  for (std::size_t i = 3; i < lines.size(); ++i) {
    const Line &line = lines[i];
    auto tokens = split_ws(line.text);
    if (tokens[0] == "S") {
      if (set.mode != SampleMode::kCycles) {
        fail(line, "S record in lbr-mode file");
      }
      if (tokens.size() != 3) fail(line, "expected 'S <0xaddr> <count>'");
      auto addr = parse_hex(tokens[1]);
      auto count = parse_u64(tokens[2]);
      if (!addr) fail(line, "bad address " + std::string(tokens[1]));
      if (!count || *count == 0) fail(line, "sample count must be >= 1");
      set.pc_samples.push_back({*addr, *count});
    } else if (tokens[0] == "L") {
      if (set.mode != SampleMode::kLbr) {
        fail(line, "L record in cycles-mode file");
      }
      if (tokens.size() != 2) fail(line, "expected 'L <from>-><to>[,...]'");
      BranchStack stack;
      for (std::string_view pair : split_on(tokens[1], ',')) {
        std::size_t arrow = pair.find("->");
        if (arrow == std::string_view::npos) {
          fail(line, "branch pair missing '->': " + std::string(pair));
        }
        auto from = parse_hex(pair.substr(0, arrow));
        auto to = parse_hex(pair.substr(arrow + 2));
        if (!from || !to) fail(line, "bad branch pair " + std::string(pair));
        stack.pairs.push_back({*from, *to});
      }
      if (stack.pairs.size() > BranchStack::kMaxPairs) {
        fail(line, "branch stack holds more than 16 pairs");
      }
      set.lbr_samples.push_back(std::move(stack));
    } else {
      fail(line, "unknown record kind " + std::string(tokens[0]));
    }
  }
  return set;
}

std::string emit_samples(const SampleSet &samples) {
  std::string out;
  out += "mode: ";
  out += to_string(samples.mode);
  out += "\nevent: " + samples.event_name;
  out += "\nperiod: " + std::to_string(samples.period) + "\n";
  for (const SampleSet::PcSample &s : samples.pc_samples) {
    out += "S " + hex(s.address) + " " + std::to_string(s.count) + "\n";
  }
  for (const BranchStack &stack : samples.lbr_samples) {
    out += "L ";
    for (std::size_t i = 0; i < stack.pairs.size(); ++i) {
      if (i > 0) out += ",";
      out += hex(stack.pairs[i].from_addr) + "->" + hex(stack.pairs[i].to_addr);
    }
    out += "\n";
  }
  return out;
}

// --- Binary descriptions ----------------------------------------------------

namespace {

// "<0xlo>-<0xhi>"
std::optional<AddrRange> parse_range(std::string_view s) {
  std::size_t dash = s.find('-');
  if (dash == std::string_view::npos) return std::nullopt;
  auto lo = parse_hex(s.substr(0, dash));
  auto hi = parse_hex(s.substr(dash + 1));
  if (!lo || !hi) return std::nullopt;
  return AddrRange{*lo, *hi};
}

// "<bfd>:<file>:<line>.<disc>", split from the right so the BFD name may
// contain colons.
std::optional<Frame> parse_frame(std::string_view s) {
  std::size_t last = s.rfind(':');
  if (last == std::string_view::npos || last == 0) return std::nullopt;
  auto key = parse_body_key(s.substr(last + 1));
  if (!key || key->offset == 0) return std::nullopt;  // frame lines are 1-based
  std::size_t mid = s.rfind(':', last - 1);
  if (mid == std::string_view::npos) return std::nullopt;
  Frame frame;
  frame.function_bfd_name = std::string(s.substr(0, mid));
  frame.file = std::string(s.substr(mid + 1, last - mid - 1));
  frame.line = key->offset;
  frame.discriminator = key->discriminator;
  if (frame.function_bfd_name.empty() || frame.file.empty()) {
    return std::nullopt;
  }
  return frame;
}

}  // namespace

BinaryDescription parse_binary_desc(std::string_view text) {
  BinaryDescription bd;
  FunctionDesc *func = nullptr;
  BlockDesc *block = nullptr;

  for (const Line &line : significant_lines(text)) {
    auto tokens = split_ws(line.text);
    if (tokens[0] == "func") {
      auto name = attr(tokens, "name");
      auto bfd = attr(tokens, "bfd");
      auto file = attr(tokens, "file");
      auto decl_line = attr(tokens, "line");
      auto range = attr(tokens, "range");
      if (!name || !bfd || !file || !decl_line || !range) {
        fail(line, "func needs name=, bfd=, file=, line= and range=");
      }
      auto ln = parse_u32(*decl_line);
      auto rng = parse_range(*range);
      if (!ln || *ln == 0) fail(line, "func line must be >= 1");
      if (!rng) fail(line, "bad func range " + std::string(*range));
      FunctionDesc f;
      f.asm_name = std::string(*name);
      f.bfd_name = std::string(*bfd);
      f.file = std::string(*file);
      f.start_line = *ln;
      f.range = *rng;
      bd.functions.push_back(std::move(f));
      func = &bd.functions.back();
      block = nullptr;
    } else if (tokens[0] == "block") {
      if (func == nullptr) fail(line, "block before any func");
      auto range = attr(tokens, "range");
      if (!range) fail(line, "block needs range=");
      auto rng = parse_range(*range);
      if (!rng) fail(line, "bad block range " + std::string(*range));
      func->blocks.push_back(BlockDesc{*rng, {}});
      block = &func->blocks.back();
    } else if (tokens[0] == "insn") {
      if (block == nullptr) fail(line, "insn before any block");
      auto addr = attr(tokens, "addr");
      auto loc = attr(tokens, "loc");
      if (!addr || !loc) fail(line, "insn needs addr= and loc=");
      auto a = parse_hex(*addr);
      if (!a) fail(line, "bad insn address " + std::string(*addr));
      InstructionDesc insn;
      insn.address = *a;
      for (std::string_view frame_text : split_on(*loc, ';')) {
        auto frame = parse_frame(frame_text);
        if (!frame) fail(line, "bad frame " + std::string(frame_text));
        insn.source_key.frames.push_back(std::move(*frame));
      }
      insn.is_branch = tokens.back() == "branch";
      block->instructions.push_back(std::move(insn));
    } else {
      fail(line, "unknown directive " + std::string(tokens[0]));
    }
  }

  bd.finalize();
  return bd;
}

std::string emit_binary_desc(const BinaryDescription &bd) {
  std::string out;
  for (const FunctionDesc &func : bd.functions) {
    out += "func name=" + func.asm_name + " bfd=" + func.bfd_name +
           " file=" + func.file + " line=" + std::to_string(func.start_line) +
           " range=" + hex(func.range.low) + "-" + hex(func.range.high) + "\n";
    for (const BlockDesc &block : func.blocks) {
      out += "block range=" + hex(block.range.low) + "-" +
             hex(block.range.high) + "\n";
      for (const InstructionDesc &insn : block.instructions) {
        out += "insn addr=" + hex(insn.address) + " loc=";
        for (std::size_t i = 0; i < insn.source_key.frames.size(); ++i) {
          const Frame &frame = insn.source_key.frames[i];
          if (i > 0) out += ";";
          out += frame.function_bfd_name + ":" + frame.file + ":" +
                 std::to_string(frame.line) + "." +
                 std::to_string(frame.discriminator);
        }
        if (insn.is_branch) out += " branch";
        out += "\n";
      }
    }
  }
  return out;
}

// --- Profiles ---------------------------------------------------------------

namespace {

void emit_function_profile(const FunctionProfile &fp, int level,
                           std::string &out) {
  const std::string indent(static_cast<std::size_t>(level) * 2, ' ');
  for (const auto &[key, count] : fp.body) {
    out += indent + std::to_string(key.offset) + "." +
           std::to_string(key.discriminator) + ": " + std::to_string(count) +
           "\n";
  }
  for (const auto &[key, sub] : fp.inlined) {
    out += indent + std::to_string(key.offset) + "." +
           std::to_string(key.discriminator) + ": " + key.callee_bfd_name +
           " total:" + std::to_string(sub.total_count) + "\n";
    emit_function_profile(sub, level + 1, out);
  }
}

}  // namespace

std::string emit_profile(const SourceProfile &profile) {
  std::string out;
  for (const auto &[name, fp] : profile.functions) {
    out += name + " total:" + std::to_string(fp.total_count) +
           " head:" + std::to_string(fp.head_count);
    if (fp.bfd_name != fp.asm_name) out += " bfd:" + fp.bfd_name;
    out += "\n";
    emit_function_profile(fp, 1, out);
  }
  return out;
}

SourceProfile parse_profile(std::string_view text) {
  SourceProfile profile;
  // Innermost context per indentation level; stack[0] is the current
  // top-level function.
  std::vector<FunctionProfile *> stack;

  for (const Line &line : significant_lines(text)) {
    std::size_t indent = line.text.find_first_not_of(' ');
    if (indent == std::string_view::npos) continue;
    if (indent % 2 != 0) fail(line, "indentation must be a multiple of two");
    std::size_t level = indent / 2;
    auto tokens = split_ws(line.text);

    if (level == 0) {
      if (tokens.size() < 3) {
        fail(line, "expected '<name> total:<n> head:<n>'");
      }
      std::string asm_name(tokens[0]);
      FunctionProfile fp;
      fp.asm_name = asm_name;
      fp.bfd_name = asm_name;
      bool seen_total = false, seen_head = false;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        std::string_view tok = tokens[i];
        if (tok.substr(0, 6) == "total:") {
          auto v = parse_u64(tok.substr(6));
          if (!v) fail(line, "bad total in " + std::string(tok));
          fp.total_count = *v;
          seen_total = true;
        } else if (tok.substr(0, 5) == "head:") {
          auto v = parse_u64(tok.substr(5));
          if (!v) fail(line, "bad head in " + std::string(tok));
          fp.head_count = *v;
          seen_head = true;
        } else if (tok.substr(0, 4) == "bfd:") {
          fp.bfd_name = std::string(tok.substr(4));
        } else {
          fail(line, "unknown token " + std::string(tok));
        }
      }
      if (!seen_total || !seen_head) {
        fail(line, "function header needs total: and head:");
      }
      auto [it, inserted] = profile.functions.emplace(asm_name, std::move(fp));
      if (!inserted) fail(line, "duplicate function " + asm_name);
      stack.assign(1, &it->second);
      continue;
    }

    if (level > stack.size()) {
      fail(line, "indentation skips a level");
    }
    stack.resize(level);
    FunctionProfile *parent = stack.back();

    if (tokens[0].empty() || tokens[0].back() != ':') {
      fail(line, "expected '<offset>.<disc>:'");
    }
    auto key = parse_body_key(tokens[0].substr(0, tokens[0].size() - 1));
    if (!key) fail(line, "bad offset.discriminator " + std::string(tokens[0]));

    if (tokens.size() == 2 && parse_u64(tokens[1])) {
      // Body entry.
      auto [it, inserted] = parent->body.emplace(*key, *parse_u64(tokens[1]));
      if (!inserted) {
        fail(line, "duplicate body entry " + std::string(tokens[0]));
      }
    } else if (tokens.size() == 3 && tokens[2].substr(0, 6) == "total:") {
      // Inlined callee header.
      auto total = parse_u64(tokens[2].substr(6));
      if (!total) fail(line, "bad total in " + std::string(tokens[2]));
      CallsiteKey callsite{key->offset, key->discriminator,
                           std::string(tokens[1])};
      FunctionProfile sub;
      sub.asm_name = callsite.callee_bfd_name;
      sub.bfd_name = callsite.callee_bfd_name;
      sub.total_count = *total;
      auto [it, inserted] = parent->inlined.emplace(callsite, std::move(sub));
      if (!inserted) {
        fail(line, "duplicate inlined callee " + callsite.callee_bfd_name +
                       " at " + std::string(tokens[0]));
      }
      stack.push_back(&it->second);
    } else {
      fail(line, "expected a count or '<callee> total:<n>'");
    }
  }

  for (const auto &[name, fp] : profile.functions) {
    if (!fp.totals_consistent()) {
      throw ValidationError("function " + name +
                            ": declared totals do not match the body");
    }
  }
  return profile;
}

// --- CFGs -------------------------------------------------------------------

namespace {

std::string cfg_header_line(const Cfg &cfg) {
  return "cfg name=" + cfg.asm_name + " line=" + std::to_string(cfg.start_line) +
         " entry=" + std::to_string(cfg.entry) +
         " exit=" + std::to_string(cfg.exit) + "\n";
}

std::string stmts_attr(const CfgBlock &block) {
  if (block.statements.empty()) return "";
  std::string out = " stmts=";
  for (std::size_t i = 0; i < block.statements.size(); ++i) {
    const BodyKey &key = block.statements[i];
    if (i > 0) out += ",";
    out += std::to_string(key.offset) + "." + std::to_string(key.discriminator);
  }
  return out;
}

}  // namespace

std::vector<Cfg> parse_cfgs(std::string_view text) {
  std::vector<Cfg> cfgs;
  Cfg *current = nullptr;

  for (const Line &line : significant_lines(text)) {
    auto tokens = split_ws(line.text);
    if (tokens[0] == "cfg") {
      auto name = attr(tokens, "name");
      auto decl_line = attr(tokens, "line");
      auto entry = attr(tokens, "entry");
      auto exit = attr(tokens, "exit");
      if (!name || !decl_line || !entry || !exit) {
        fail(line, "cfg needs name=, line=, entry= and exit=");
      }
      auto ln = parse_u32(*decl_line);
      auto en = parse_u32(*entry);
      auto ex = parse_u32(*exit);
      if (!ln || *ln == 0) fail(line, "cfg line must be >= 1");
      if (!en || !ex) fail(line, "bad entry/exit id");
      Cfg cfg;
      cfg.asm_name = std::string(*name);
      cfg.start_line = *ln;
      cfg.entry = *en;
      cfg.exit = *ex;
      cfgs.push_back(std::move(cfg));
      current = &cfgs.back();
    } else if (tokens[0] == "node") {
      if (current == nullptr) fail(line, "node before any cfg");
      auto id = attr(tokens, "id");
      if (!id) fail(line, "node needs id=");
      auto idv = parse_u32(*id);
      if (!idv) fail(line, "bad node id " + std::string(*id));
      CfgBlock block;
      block.id = *idv;
      if (auto stmts = attr(tokens, "stmts")) {
        for (std::string_view part : split_on(*stmts, ',')) {
          auto key = parse_body_key(part);
          if (!key) fail(line, "bad statement " + std::string(part));
          block.statements.push_back(*key);
        }
      }
      current->blocks.push_back(std::move(block));
    } else if (tokens[0] == "edge") {
      if (current == nullptr) fail(line, "edge before any cfg");
      if (tokens.size() < 2) fail(line, "expected 'edge <src>-><dst>'");
      std::size_t arrow = tokens[1].find("->");
      if (arrow == std::string_view::npos) {
        fail(line, "edge missing '->'");
      }
      auto src = parse_u32(tokens[1].substr(0, arrow));
      auto dst = parse_u32(tokens[1].substr(arrow + 2));
      if (!src || !dst) fail(line, "bad edge " + std::string(tokens[1]));
      current->edges.push_back({*src, *dst});
    } else {
      fail(line, "unknown directive " + std::string(tokens[0]));
    }
  }

  for (const Cfg &cfg : cfgs) cfg.validate();
  return cfgs;
}

std::string emit_cfg(const Cfg &cfg) {
  std::string out = cfg_header_line(cfg);
  for (const CfgBlock &block : cfg.blocks) {
    out += "node id=" + std::to_string(block.id) + stmts_attr(block) + "\n";
  }
  for (const CfgEdge &edge : cfg.edges) {
    out += "edge " + std::to_string(edge.src) + "->" +
           std::to_string(edge.dst) + "\n";
  }
  return out;
}

std::string emit_annotated_cfg(const Cfg &cfg, const EdgeProfile &annotation) {
  std::string out = cfg_header_line(cfg);
  for (const CfgBlock &block : cfg.blocks) {
    auto it = annotation.block_counts.find(block.id);
    std::uint64_t count = it == annotation.block_counts.end() ? 0 : it->second;
    out += "node id=" + std::to_string(block.id) + stmts_attr(block) +
           " count=" + std::to_string(count) + "\n";
  }
  for (std::size_t i = 0; i < cfg.edges.size(); ++i) {
    std::uint64_t count =
        i < annotation.edge_counts.size() ? annotation.edge_counts[i] : 0;
    out += "edge " + std::to_string(cfg.edges[i].src) + "->" +
           std::to_string(cfg.edges[i].dst) + " count=" +
           std::to_string(count) + "\n";
  }
  out += "unresolved=" + std::to_string(annotation.unresolved) + "\n";
  return out;
}

}  // namespace fdoprof
