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
// Synthetic programs, execution traces, and sampled sessions with exact
// ground truth. Everything here is a pure function of its inputs and a
// 64-bit seed, so every test that compares the pipeline against the truth is
// reproducible bit for bit.

#ifndef FDOPROF_SIMULATE_HPP
#define FDOPROF_SIMULATE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fdoprof/binary_desc.hpp"
#include "fdoprof/cfg.hpp"
#include "fdoprof/lbr.hpp"
#include "fdoprof/samples.hpp"

namespace fdoprof {

// SplitMix64. Small, fast, and identical on every platform, unlike the
// standard library distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform-ish integer in [0, n). n >= 1.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // Uniform integer in [lo, hi], inclusive.
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    return lo + below(hi - lo + 1);
  }

  // Uniform double in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

struct GenParams {
  std::uint32_t num_functions = 3;
  std::uint32_t max_blocks = 8;          // per function, >= 1
  std::uint32_t max_insns_per_block = 5;  // own statements, >= 1
  bool allow_loops = true;
  // How many function executions the default trace chains together; 0 means
  // one pass over every function.
  std::uint32_t sequence_length = 0;
};

// A generated program: the binary description, one CFG per function whose
// blocks map 1:1 onto the description's blocks, runtime branch
// probabilities, and the order in which functions run.
struct SyntheticProgram {
  BinaryDescription binary;
  std::vector<Cfg> cfgs;  // cfgs[i] describes binary.functions[i]
  // edge_probs[i][e] is the probability of cfgs[i].edges[e] being taken when
  // leaving its source block; outgoing probabilities of a block sum to 1.
  std::vector<std::vector<double>> edge_probs;
  std::vector<std::uint32_t> call_sequence;  // function indices, in run order

  // Stub addresses bracketing the trace. The entry stub models the caller
  // that branches into the first profiled function; the exit stub is where
  // the final branch lands. Neither belongs to the binary description.
  static constexpr std::uint64_t kEntryStub = 0x100;
  static constexpr std::uint64_t kExitStub = 0x200;
};

// A simulated execution: the retired instruction addresses and the retired
// taken branches, in order. Fall-through never appears in `branches`. The
// trace is bracketed: branches.front() enters the first function from the
// entry stub and branches.back() leaves the last retired instruction for the
// exit stub, so every retired instruction lies between two taken branches.
struct Trace {
  std::vector<std::uint64_t> addresses;
  std::vector<BranchStack::Pair> branches;
};

// Exact counts from replaying a trace against its program.
struct GroundTruth {
  BlockProfile blocks;
  std::map<std::string, std::map<CfgEdge, std::uint64_t>> edges;  // per function
  std::map<std::uint64_t, std::uint64_t> addresses;
  std::map<std::string, std::uint64_t> heads;
};

// Deterministic in `seed`. Every program contains at least one function with
// two inlined copies of the same callee (same leaf source line, different
// inline stacks) and at least one line holding two statements told apart by
// discriminator. Throws ValidationError on degenerate size parameters.
SyntheticProgram gen_program(std::uint64_t seed, const GenParams &params);

// Runs the program's call sequence, choosing successors by edge probability.
// Stops when the sequence completes or after max_insns retired instructions;
// either way the final retired instruction is capped with a branch to the
// exit stub so the trace stays bracketed.
Trace run_trace(const SyntheticProgram &prog, std::uint64_t seed,
                std::uint64_t max_insns);

// PC sampling. With jitter 0, a sample (count 1) fires at every period-th
// retired instruction. With jitter j > 0, consecutive sample gaps are drawn
// uniformly from [period*(1-j), period*(1+j)], which breaks the resonance
// between the period and loop bodies.
SampleSet sample_cycles(const Trace &trace, std::uint64_t period,
                        double jitter, std::uint64_t seed);

// Branch sampling. A sample fires at every period-th retired branch and
// reports the branches retired since the previous sample plus the previous
// sample's newest branch (the carryover delimiting the first range), capped
// at `depth`, oldest first. No branch below the cap goes unreported and none
// is reported as new twice, so period-1 sessions reconstruct every executed
// range exactly once.
SampleSet sample_lbr(const Trace &trace, std::uint64_t period,
                     std::uint32_t depth, std::uint64_t seed);

// Replays the trace against the program: exact block, edge, address, and
// head tallies. Derives everything from the trace itself, independently of
// the sampling and conversion paths it is used to check.
GroundTruth ground_truth(const Trace &trace, const SyntheticProgram &prog);

std::string emit_ground_truth(const GroundTruth &truth);

}  // namespace fdoprof

#endif  // FDOPROF_SIMULATE_HPP
