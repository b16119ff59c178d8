// Copyright 2026 The Authors.
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

// Multi-chain mixing experiments and their CSV artifacts.
//
// Chains are advanced in blocks of check_every steps (in parallel, one chain
// per thread) and R-hat is updated from running moments after each block, so
// no trace is stored. Every chain's stream is derived from the master seed
// and a per-experiment tag, which makes the outputs independent of the
// thread count.

#ifndef SLC_EXPERIMENT_H_
#define SLC_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slc/diagnostics.h"
#include "slc/distributions.h"
#include "slc/sampler.h"

namespace slc {

// How the chains of one experiment are started.
//   kDefault:   every chain at DefaultInitialState.
//   kDispersed: chain 0 at DefaultInitialState, chain 1 at the all-dummy
//               state (if the empty set has positive weight), the rest at
//               RandomInitialState.
enum class InitKind { kDefault, kDispersed };

std::string ToString(InitKind kind);
InitKind ParseInitKind(const std::string& name);

struct ExperimentConfig {
  int n = 250;
  std::vector<int> d_list = {10, 20, 30, 40, 50};
  std::vector<int> n_list;  // Figure2 only
  double alpha = 1.0;
  SpectrumKind spectrum = SpectrumKind::kSmooth;
  int chains = 3;
  double psrf_threshold = 1.05;
  std::int64_t check_every = 1000;
  std::int64_t max_steps = 1000000;
  std::int64_t burnin = 0;
  std::uint64_t master_seed = 0;
  int repeats = 1;  // compare-proposals: number of kernels
  std::string output_dir = ".";
  ChainStatistic statistic = ChainStatistic::kLogWeight;
  ScoringMode scoring = ScoringMode::kIncremental;
  InitKind init = InitKind::kDispersed;
  PsrfOptions psrf;
};

// Seed of chain c in the experiment identified by tag.
std::uint64_t ChainSeed(std::uint64_t master, std::uint64_t tag, int chain);

std::vector<ExtendedState> InitialStates(const ExtendedWeightCtx& ctx, int chains,
                                         InitKind init, std::uint64_t master,
                                         std::uint64_t tag);

struct MixingRun {
  std::vector<std::pair<std::int64_t, double>> checkpoints;
  std::optional<std::int64_t> mixed_at;
  std::int64_t steps_run = 0;
  std::vector<double> acceptance_rate;  // per chain
};

// Runs cfg.chains chains until R-hat < threshold at a checkpoint or
// max_steps is reached. Checkpoint t includes the states at steps 0..t,
// matching EmpiricalMixingTime on full traces from the same seeds. A
// checkpoint with zero within-chain variance gets R-hat = +inf.
MixingRun RunUntilMixed(const ExtendedWeightCtx& ctx, ProposalKind kind,
                        const ExperimentConfig& cfg, std::uint64_t tag);

struct MixtimeRow {
  int key;  // d or n
  std::optional<std::int64_t> mixed_at;
};

// Writes psrf_d<D>.csv per d and mixtime.csv (d,mixed_at) into output_dir.
std::vector<MixtimeRow> Figure1(const ExperimentConfig& cfg);
// Fixed d = d_list[0], varying n over n_list: psrf_n<N>.csv and mixtime.csv
// (n,mixed_at).
std::vector<MixtimeRow> Figure2(const ExperimentConfig& cfg);

struct ProposalComparison {
  int repeat;
  std::uint64_t kernel_seed;
  std::optional<std::int64_t> rescaled;
  std::optional<std::int64_t> plain;
};
// n, d = d_list[0], cfg.repeats kernels. Writes compare.csv
// (repeat,kernel_seed,rescaled_mixed_at,plain_mixed_at) and
// psrf_<kind>_r<R>.csv.
std::vector<ProposalComparison> CompareProposals(const ExperimentConfig& cfg);

// CSV helpers. Doubles use %.17g; missing values are written as NA.
std::string FormatDouble(double x);
std::string FormatOptional(const std::optional<std::int64_t>& x);
void WriteTextFile(const std::string& path, const std::string& contents);
std::string PsrfCsv(const std::vector<std::pair<std::int64_t, double>>& checkpoints);
// Columns step,k,stat,accepted.
std::string TraceCsv(const ChainTrace& trace);
// Reads the stat column of a trace CSV.
std::vector<double> ReadTraceStats(const std::string& path);

}  // namespace slc

#endif  // SLC_EXPERIMENT_H_
