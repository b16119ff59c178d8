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

#include "slc/experiment.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace slc {
namespace {

// Tags keep the chain streams of different experiment kinds apart.
constexpr std::uint64_t kFigure1Tag = 1ULL << 32;
constexpr std::uint64_t kFigure2Tag = 2ULL << 32;
constexpr std::uint64_t kCompareTag = 3ULL << 32;
constexpr std::uint64_t kInitStream = 1000;

void ValidateConfig(const ExperimentConfig& cfg) {
  if (cfg.chains < 2) throw std::invalid_argument("need at least 2 chains");
  if (cfg.check_every < 1) throw std::invalid_argument("check_every must be >= 1");
  if (cfg.max_steps < 0) throw std::invalid_argument("max_steps must be >= 0");
  if (cfg.burnin < 0) throw std::invalid_argument("burn-in must be >= 0");
  if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
}

std::string Join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

}  // namespace

std::string ToString(InitKind kind) {
  return kind == InitKind::kDefault ? "default" : "dispersed";
}

InitKind ParseInitKind(const std::string& name) {
  if (name == "default") return InitKind::kDefault;
  if (name == "dispersed") return InitKind::kDispersed;
  throw std::invalid_argument("unknown init kind: " + name);
}

std::uint64_t ChainSeed(std::uint64_t master, std::uint64_t tag, int chain) {
  return Rng::Stream(master, tag, static_cast<std::uint64_t>(chain)).NextU64();
}

std::vector<ExtendedState> InitialStates(const ExtendedWeightCtx& ctx, int chains,
                                         InitKind init, std::uint64_t master,
                                         std::uint64_t tag) {
  std::vector<ExtendedState> out;
  const ExtendedState base = DefaultInitialState(ctx);
  for (int c = 0; c < chains; ++c) {
    if (init == InitKind::kDefault || c == 0) {
      out.push_back(base);
      continue;
    }
    if (c == 1 && ctx.base().LogWeight(Subset{}) != kNegInf) {
      ExtendedState dummies(ctx.d());
      for (int t = 0; t < ctx.d(); ++t) dummies[t] = ctx.n() + t;
      out.push_back(dummies);
      continue;
    }
    Rng rng = Rng::Stream(master, tag, kInitStream + static_cast<std::uint64_t>(c));
    out.push_back(RandomInitialState(ctx, rng));
  }
  return out;
}

MixingRun RunUntilMixed(const ExtendedWeightCtx& ctx, ProposalKind kind,
                        const ExperimentConfig& cfg, std::uint64_t tag) {
  ValidateConfig(cfg);
  const int m = cfg.chains;
  const std::vector<ExtendedState> starts =
      InitialStates(ctx, m, cfg.init, cfg.master_seed, tag);
  SamplerConfig sc;
  sc.proposal = kind;
  sc.statistic = cfg.statistic;
  sc.scoring = cfg.scoring;
  sc.keep_states = false;
  std::vector<std::unique_ptr<MhChain>> chains;
  for (int c = 0; c < m; ++c) {
    chains.push_back(std::make_unique<MhChain>(
        ctx, starts[c], Rng(ChainSeed(cfg.master_seed, tag, c)), sc));
  }
  std::vector<RunningMoments> moments(m);
  std::vector<std::int64_t> accepted(m, 0);
  if (cfg.burnin == 0) {
    for (int c = 0; c < m; ++c) moments[c].Add(chains[c]->statistic());
  }

  MixingRun run;
  std::int64_t t = 0;
  while (t < cfg.max_steps) {
    const std::int64_t block = std::min(cfg.check_every, cfg.max_steps - t);
#pragma omp parallel for schedule(static, 1)
    for (int c = 0; c < m; ++c) {
      MhChain& chain = *chains[c];
      for (std::int64_t s = 1; s <= block; ++s) {
        accepted[c] += chain.Step() ? 1 : 0;
        if (t + s >= cfg.burnin) moments[c].Add(chain.statistic());
      }
    }
    t += block;
    if (block != cfg.check_every || moments[0].count() < 2) continue;
    double w = 0.0;
    for (const RunningMoments& mom : moments) w += mom.variance();
    const double rhat = w > 0.0 ? PsrfFromMoments(moments, cfg.psrf)
                                : std::numeric_limits<double>::infinity();
    run.checkpoints.emplace_back(t, rhat);
    if (rhat < cfg.psrf_threshold) {
      run.mixed_at = t;
      break;
    }
  }
  run.steps_run = t;
  for (int c = 0; c < m; ++c) {
    run.acceptance_rate.push_back(
        t > 0 ? static_cast<double>(accepted[c]) / static_cast<double>(t) : 0.0);
  }
  return run;
}

std::vector<MixtimeRow> Figure1(const ExperimentConfig& cfg) {
  ValidateConfig(cfg);
  if (cfg.n < 1) throw std::invalid_argument("n must be >= 1");
  if (cfg.d_list.empty()) throw std::invalid_argument("d list is empty");
  auto kernel = std::make_shared<const KernelSpec>(
      RandomPsd(cfg.n, cfg.spectrum, cfg.master_seed));
  std::vector<MixtimeRow> rows;
  std::vector<std::pair<std::string, std::string>> files;
  for (int d : cfg.d_list) {
    if (d < 1 || d > cfg.n) throw std::invalid_argument("each d must lie in [1, n]");
    const ExtendedWeightCtx ctx(SubsetWeightFn::SqrtDeterminant(kernel, d, cfg.alpha));
    const MixingRun run = RunUntilMixed(ctx, ProposalKind::kRescaled, cfg,
                                        kFigure1Tag + static_cast<std::uint64_t>(d));
    rows.push_back({d, run.mixed_at});
    files.emplace_back("psrf_d" + std::to_string(d) + ".csv", PsrfCsv(run.checkpoints));
  }
  std::string mix = "d,mixed_at\n";
  for (const MixtimeRow& r : rows) {
    mix += std::to_string(r.key) + "," + FormatOptional(r.mixed_at) + "\n";
  }
  files.emplace_back("mixtime.csv", mix);
  std::filesystem::create_directories(cfg.output_dir);
  for (const auto& [name, text] : files) WriteTextFile(Join(cfg.output_dir, name), text);
  return rows;
}

std::vector<MixtimeRow> Figure2(const ExperimentConfig& cfg) {
  ValidateConfig(cfg);
  if (cfg.n_list.empty()) throw std::invalid_argument("n list is empty");
  if (cfg.d_list.empty()) throw std::invalid_argument("d is missing");
  const int d = cfg.d_list.front();
  std::vector<MixtimeRow> rows;
  std::vector<std::pair<std::string, std::string>> files;
  for (int n : cfg.n_list) {
    if (d < 1 || d > n) throw std::invalid_argument("d must lie in [1, n] for every n");
    const std::uint64_t kernel_seed =
        Rng::Stream(cfg.master_seed, kFigure2Tag, static_cast<std::uint64_t>(n)).NextU64();
    auto kernel = std::make_shared<const KernelSpec>(RandomPsd(n, cfg.spectrum, kernel_seed));
    const ExtendedWeightCtx ctx(SubsetWeightFn::SqrtDeterminant(kernel, d, cfg.alpha));
    const MixingRun run = RunUntilMixed(ctx, ProposalKind::kRescaled, cfg,
                                        kFigure2Tag + static_cast<std::uint64_t>(n));
    rows.push_back({n, run.mixed_at});
    files.emplace_back("psrf_n" + std::to_string(n) + ".csv", PsrfCsv(run.checkpoints));
  }
  std::string mix = "n,mixed_at\n";
  for (const MixtimeRow& r : rows) {
    mix += std::to_string(r.key) + "," + FormatOptional(r.mixed_at) + "\n";
  }
  files.emplace_back("mixtime.csv", mix);
  std::filesystem::create_directories(cfg.output_dir);
  for (const auto& [name, text] : files) WriteTextFile(Join(cfg.output_dir, name), text);
  return rows;
}

std::vector<ProposalComparison> CompareProposals(const ExperimentConfig& cfg) {
  ValidateConfig(cfg);
  if (cfg.d_list.empty()) throw std::invalid_argument("d is missing");
  if (cfg.repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  const int d = cfg.d_list.front();
  if (d < 1 || d > cfg.n) throw std::invalid_argument("d must lie in [1, n]");
  std::vector<ProposalComparison> out;
  std::vector<std::pair<std::string, std::string>> files;
  for (int r = 0; r < cfg.repeats; ++r) {
    const std::uint64_t tag = kCompareTag + static_cast<std::uint64_t>(r);
    const std::uint64_t kernel_seed = Rng::Stream(cfg.master_seed, tag).NextU64();
    auto kernel =
        std::make_shared<const KernelSpec>(RandomPsd(cfg.n, cfg.spectrum, kernel_seed));
    const ExtendedWeightCtx ctx(SubsetWeightFn::SqrtDeterminant(kernel, d, cfg.alpha));
    // Same starts and chain seeds for both variants.
    const MixingRun rescaled = RunUntilMixed(ctx, ProposalKind::kRescaled, cfg, tag);
    const MixingRun plain = RunUntilMixed(ctx, ProposalKind::kPlain, cfg, tag);
    out.push_back({r, kernel_seed, rescaled.mixed_at, plain.mixed_at});
    files.emplace_back("psrf_rescaled_r" + std::to_string(r) + ".csv",
                       PsrfCsv(rescaled.checkpoints));
    files.emplace_back("psrf_plain_r" + std::to_string(r) + ".csv",
                       PsrfCsv(plain.checkpoints));
  }
  std::string csv = "repeat,kernel_seed,rescaled_mixed_at,plain_mixed_at\n";
  for (const ProposalComparison& c : out) {
    csv += std::to_string(c.repeat) + "," + std::to_string(c.kernel_seed) + "," +
           FormatOptional(c.rescaled) + "," + FormatOptional(c.plain) + "\n";
  }
  files.emplace_back("compare.csv", csv);
  std::filesystem::create_directories(cfg.output_dir);
  for (const auto& [name, text] : files) WriteTextFile(Join(cfg.output_dir, name), text);
  return out;
}

std::string FormatDouble(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string FormatOptional(const std::optional<std::int64_t>& x) {
  return x ? std::to_string(*x) : "NA";
}

void WriteTextFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << contents;
  if (!out) throw std::runtime_error("failed writing " + path);
}

std::string PsrfCsv(const std::vector<std::pair<std::int64_t, double>>& checkpoints) {
  std::string csv = "iteration,rhat\n";
  for (const auto& [it, rhat] : checkpoints) {
    csv += std::to_string(it) + "," + FormatDouble(rhat) + "\n";
  }
  return csv;
}

std::string TraceCsv(const ChainTrace& trace) {
  std::string csv = "step,k,stat,accepted\n";
  for (std::size_t t = 0; t < trace.size(); ++t) {
    csv += std::to_string(t) + "," + std::to_string(trace.k[t]) + "," +
           FormatDouble(trace.stats[t]) + "," + (trace.accepted[t] ? "1" : "0") + "\n";
  }
  return csv;
}

std::vector<double> ReadTraceStats(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty trace file");
  int stat_col = -1;
  {
    std::stringstream header(line);
    std::string field;
    for (int col = 0; std::getline(header, field, ','); ++col) {
      if (field == "stat") stat_col = col;
    }
  }
  if (stat_col < 0) throw std::runtime_error(path + ": no 'stat' column");
  std::vector<double> stats;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string field;
    for (int col = 0; col <= stat_col; ++col) {
      if (!std::getline(row, field, ',')) {
        throw std::runtime_error(path + ": short row");
      }
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(field, &used);
    } catch (const std::exception&) {
      throw std::runtime_error(path + ": bad number '" + field + "'");
    }
    if (used != field.size()) throw std::runtime_error(path + ": bad number '" + field + "'");
    stats.push_back(v);
  }
  return stats;
}

}  // namespace slc
