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
// Command-line driver. One subcommand per pipeline stage so every stage can
// be scripted and tested on its own:
//
//   fdoprof convert   samples + binary description -> source profile
//   fdoprof merge     source profiles -> combined source profile
//   fdoprof annotate  CFG + source profile -> annotated CFG
//   fdoprof simulate  synthetic program, trace, samples and ground truth
//   fdoprof summary   print profile statistics

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fdoprof/annotate.hpp"
#include "fdoprof/convert.hpp"
#include "fdoprof/error.hpp"
#include "fdoprof/formats.hpp"
#include "fdoprof/profile_ops.hpp"
#include "fdoprof/simulate.hpp"

namespace {

namespace fs = std::filesystem;
using namespace fdoprof;

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError(path + ": cannot open for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw FileError(path + ": read failed");
  return buffer.str();
}

// Writes via a temp file and renames, so a failed run never leaves a partial
// artifact behind.
void write_file_atomic(const std::string &path, const std::string &content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FileError(path + ": cannot open for writing");
    out << content;
    out.flush();
    if (!out) throw FileError(path + ": write failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw FileError(path + ": rename failed");
  }
}

// ParseError knows the line; prefix it with the file for clickable output.
[[noreturn]] void rethrow_with_file(const std::string &path,
                                    const ParseError &err) {
  throw FileError(path + ":" + std::to_string(err.line()) + ": " + err.what());
}

[[noreturn]] void rethrow_with_file(const std::string &path,
                                    const ValidationError &err) {
  throw FileError(path + ": " + err.what());
}

int cmd_convert(const std::string &samples_path, const std::string &binary_path,
                const std::string &out_path, std::size_t top_n, bool verbose) {
  SampleSet samples;
  BinaryDescription bd;
  try {
    samples = parse_samples(read_file(samples_path));
  } catch (const ParseError &err) {
    rethrow_with_file(samples_path, err);
  }
  try {
    bd = parse_binary_desc(read_file(binary_path));
  } catch (const ParseError &err) {
    rethrow_with_file(binary_path, err);
  } catch (const ValidationError &err) {
    rethrow_with_file(binary_path, err);
  }

  if (samples.pc_samples.empty() && samples.lbr_samples.empty()) {
    std::cerr << "warning: " << samples_path << " carries no samples;"
              << " the profile will be empty\n";
  }

  const ConvertResult result = convert_samples(samples, bd);
  if (result.build_stats.unknown_frames > 0) {
    std::cerr << "warning: " << result.build_stats.unknown_frames
              << " inline frame(s) named functions missing from "
              << binary_path << "\n";
  }
  write_file_atomic(out_path, emit_profile(result.profile));

  std::cout << format_report(
      summarize(result.profile, top_n, result.dropped_samples));
  if (verbose) {
    std::cout << "dropped keys: " << result.build_stats.dropped_keys << "\n"
              << "saturated adds: " << result.build_stats.saturations << "\n";
  }
  return 0;
}

int cmd_merge(const std::vector<std::string> &inputs,
              const std::string &out_path) {
  std::vector<SourceProfile> profiles;
  for (const std::string &path : inputs) {
    try {
      profiles.push_back(parse_profile(read_file(path)));
    } catch (const ParseError &err) {
      rethrow_with_file(path, err);
    } catch (const ValidationError &err) {
      rethrow_with_file(path, err);
    }
  }
  SourceProfile combined;
  MergeStats stats;
  for (const SourceProfile &p : profiles) combined = merge(combined, p, &stats);
  if (stats.saturations > 0) {
    std::cerr << "warning: " << stats.saturations
              << " counter(s) saturated while merging\n";
  }
  write_file_atomic(out_path, emit_profile(combined));
  std::cout << format_report(summarize(combined));
  return 0;
}

int cmd_annotate(const std::string &cfg_path, const std::string &profile_path,
                 const std::string &out_path) {
  std::vector<Cfg> cfgs;
  SourceProfile profile;
  try {
    cfgs = parse_cfgs(read_file(cfg_path));
  } catch (const ParseError &err) {
    rethrow_with_file(cfg_path, err);
  } catch (const ValidationError &err) {
    rethrow_with_file(cfg_path, err);
  }
  try {
    profile = parse_profile(read_file(profile_path));
  } catch (const ParseError &err) {
    rethrow_with_file(profile_path, err);
  } catch (const ValidationError &err) {
    rethrow_with_file(profile_path, err);
  }

  std::string out;
  for (const Cfg &cfg : cfgs) {
    if (!profile.functions.count(cfg.asm_name)) {
      std::cerr << "warning: function " << cfg.asm_name << " not in "
                << profile_path << "; annotating zeros\n";
    }
    EdgeProfile annotation = propagate_edges(cfg, annotate_blocks(cfg, profile));
    if (annotation.unresolved > 0) {
      std::cerr << "warning: " << cfg.asm_name << ": "
                << annotation.unresolved << " edge(s) left unresolved\n";
    }
    out += emit_annotated_cfg(cfg, annotation);
  }
  write_file_atomic(out_path, out);
  return 0;
}

int cmd_simulate(std::uint64_t seed, const GenParams &params, SampleMode mode,
                 std::uint64_t period, double jitter, std::uint32_t depth,
                 std::uint64_t max_insns, const std::string &out_dir) {
  const SyntheticProgram prog = gen_program(seed, params);
  const Trace trace = run_trace(prog, seed + 1, max_insns);
  const SampleSet samples = mode == SampleMode::kLbr
                                ? sample_lbr(trace, period, depth, seed + 2)
                                : sample_cycles(trace, period, jitter, seed + 2);
  const GroundTruth truth = ground_truth(trace, prog);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw FileError(out_dir + ": cannot create directory");

  std::string cfg_text;
  for (const Cfg &cfg : prog.cfgs) cfg_text += emit_cfg(cfg);

  write_file_atomic(out_dir + "/binary.desc", emit_binary_desc(prog.binary));
  write_file_atomic(out_dir + "/samples.txt", emit_samples(samples));
  write_file_atomic(out_dir + "/cfg.txt", cfg_text);
  write_file_atomic(out_dir + "/ground_truth.txt", emit_ground_truth(truth));

  std::cout << "functions: " << prog.binary.functions.size() << "\n"
            << "trace instructions: " << trace.addresses.size() << "\n"
            << "trace branches: " << trace.branches.size() << "\n"
            << "samples: "
            << (mode == SampleMode::kLbr ? samples.lbr_samples.size()
                                         : samples.pc_samples.size())
            << "\n";
  return 0;
}

int cmd_summary(const std::string &profile_path, std::size_t top_n) {
  SourceProfile profile;
  try {
    profile = parse_profile(read_file(profile_path));
  } catch (const ParseError &err) {
    rethrow_with_file(profile_path, err);
  } catch (const ValidationError &err) {
    rethrow_with_file(profile_path, err);
  }
  std::cout << format_report(summarize(profile, top_n));
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"hardware-sample PGO profile toolchain"};
  app.require_subcommand(1);

  // convert
  std::string samples_path, binary_path, out_path;
  std::size_t top_n = 5;
  bool verbose = false;
  CLI::App *convert = app.add_subcommand(
      "convert", "convert a sample session into a source profile");
  convert->add_option("--samples", samples_path, "sample session file")
      ->required();
  convert->add_option("--binary", binary_path, "binary description file")
      ->required();
  convert->add_option("--out", out_path, "output profile path")->required();
  convert->add_option("--top", top_n, "functions listed in the summary");
  convert->add_flag("--verbose", verbose, "print conversion diagnostics");

  // merge
  std::vector<std::string> merge_inputs;
  std::string merge_out;
  CLI::App *merge_cmd =
      app.add_subcommand("merge", "merge source profiles pointwise");
  merge_cmd->add_option("inputs", merge_inputs, "profiles to merge")
      ->required()
      ->expected(-1);
  merge_cmd->add_option("--out", merge_out, "output profile path")->required();

  // annotate
  std::string cfg_path, profile_path, annotate_out;
  CLI::App *annotate = app.add_subcommand(
      "annotate", "apply a profile to a CFG: block and edge counts");
  annotate->add_option("--cfg", cfg_path, "CFG description file")->required();
  annotate->add_option("--profile", profile_path, "source profile file")
      ->required();
  annotate->add_option("--out", annotate_out, "annotated CFG path")->required();

  // simulate
  std::uint64_t seed = 1;
  std::uint32_t size = 8, functions = 3, depth = 16;
  std::uint64_t period = 0, max_insns = 100000, runs = 0;
  double jitter = 0.0;
  std::string mode_name = "lbr", out_dir;
  bool no_loops = false;
  CLI::App *simulate = app.add_subcommand(
      "simulate", "generate a synthetic program, trace and sampled session");
  simulate->add_option("--seed", seed, "generator seed");
  simulate->add_option("--size", size, "max basic blocks per function");
  simulate->add_option("--functions", functions, "number of functions");
  simulate->add_option("--mode", mode_name, "cycles or lbr")
      ->check(CLI::IsMember({"cycles", "lbr"}));
  simulate->add_option("--period", period,
                       "sampling period (default 2000000 cycles / 400000 lbr)");
  simulate->add_option("--jitter", jitter, "period randomization, 0..1")
      ->check(CLI::Range(0.0, 0.999));
  simulate->add_option("--depth", depth, "LBR stack depth, 1..16");
  simulate->add_option("--max-insns", max_insns, "trace instruction budget");
  simulate->add_option("--runs", runs, "function executions to chain");
  simulate->add_flag("--no-loops", no_loops, "generate loop-free CFGs");
  simulate->add_option("--out-dir,--out", out_dir, "output directory")
      ->required();

  // summary
  std::string summary_path;
  std::size_t summary_top = 10;
  CLI::App *summary =
      app.add_subcommand("summary", "print statistics for a profile");
  summary->add_option("--profile", summary_path, "source profile file")
      ->required();
  summary->add_option("--top", summary_top, "functions to list");

  CLI11_PARSE(app, argc, argv);

  try {
    if (convert->parsed()) {
      return cmd_convert(samples_path, binary_path, out_path, top_n, verbose);
    }
    if (merge_cmd->parsed()) {
      return cmd_merge(merge_inputs, merge_out);
    }
    if (annotate->parsed()) {
      return cmd_annotate(cfg_path, profile_path, annotate_out);
    }
    if (simulate->parsed()) {
      if (size == 0 || functions == 0) {
        std::cerr << "error: --size and --functions must be >= 1\n";
        return 2;
      }
      const SampleMode mode =
          mode_name == "cycles" ? SampleMode::kCycles : SampleMode::kLbr;
      if (period == 0) {
        period = mode == SampleMode::kCycles ? 2000000 : 400000;
      }
      GenParams params;
      params.num_functions = functions;
      params.max_blocks = size;
      params.allow_loops = !no_loops;
      params.sequence_length = static_cast<std::uint32_t>(runs);
      return cmd_simulate(seed, params, mode, period, jitter, depth, max_insns,
                          out_dir);
    }
    if (summary->parsed()) {
      return cmd_summary(summary_path, summary_top);
    }
  } catch (const std::exception &err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
