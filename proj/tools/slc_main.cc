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

// slc: command-line driver for kernel generation, sampling, diagnostics,
// mode finding, SLC certificates and the mixing experiments.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.
//
// --config FILE reads flat key=value lines (keys are flag names without the
// leading dashes; '#' starts a comment). Config values are parsed before the
// command line, and every option keeps its last value, so flags win.

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slc/diagnostics.h"
#include "slc/distributions.h"
#include "slc/experiment.h"
#include "slc/greedy.h"
#include "slc/polynomial.h"
#include "slc/sampler.h"
#include "slc/transforms.h"
#include "slc/verify.h"

namespace {

using slc::Subset;

// Bad flag values that CLI11 cannot validate on its own.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<int> ParseIntList(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw UsageError(flag + ": '" + item + "' is not an integer");
    }
    if (used != item.size()) throw UsageError(flag + ": '" + item + "' is not an integer");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

nlohmann::json OneBased(const Subset& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (int e : s) arr.push_back(e + 1);
  return arr;
}

// Inserts "--key value" pairs from the config file right after the
// subcommand name, so that later command-line flags override them.
std::vector<std::string> ExpandConfig(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
    }
  }
  if (config_path.empty()) return out;
  std::ifstream in(config_path);
  if (!in) throw UsageError("cannot open config file " + config_path);
  std::vector<std::string> injected;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) throw UsageError("config line without '=': " + line);
    std::string key = trim(line.substr(0, eq));
    for (char& c : key) {
      if (c == '_') c = '-';
    }
    injected.push_back("--" + key);
    injected.push_back(trim(line.substr(eq + 1)));
  }
  // out[0] is the program name, out[1] the subcommand (if any).
  const std::size_t at = out.size() >= 2 ? 2 : out.size();
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(at), injected.begin(),
             injected.end());
  return out;
}

// Shared experiment flags.
struct ExperimentFlags {
  std::string spectrum = "smooth";
  std::string statistic = "log-weight";
  std::string init = "dispersed";
  std::string scoring = "incremental";
  slc::ExperimentConfig cfg;

  void Register(CLI::App* cmd) {
    cmd->add_option("--alpha", cfg.alpha, "exponent on sqrt(det)")->capture_default_str();
    cmd->add_option("--spectrum", spectrum, "smooth | one-big | step")
        ->check(CLI::IsMember({"smooth", "one-big", "step"}))
        ->capture_default_str();
    cmd->add_option("--chains", cfg.chains, "chains per run")->capture_default_str();
    cmd->add_option("--threshold", cfg.psrf_threshold, "PSRF threshold")->capture_default_str();
    cmd->add_option("--check-every", cfg.check_every, "steps between PSRF checkpoints")
        ->capture_default_str();
    cmd->add_option("--max-steps", cfg.max_steps, "step budget per run")->capture_default_str();
    cmd->add_option("--burnin", cfg.burnin, "steps excluded from PSRF")->capture_default_str();
    cmd->add_option("--seed", cfg.master_seed, "master seed")->capture_default_str();
    cmd->add_option("--out", cfg.output_dir, "output directory")->capture_default_str();
    cmd->add_option("--stat", statistic, "PSRF statistic: log-weight | size")
        ->check(CLI::IsMember({"log-weight", "size"}))
        ->capture_default_str();
    cmd->add_option("--init", init, "chain starts: default | dispersed")
        ->check(CLI::IsMember({"default", "dispersed"}))
        ->capture_default_str();
    cmd->add_option("--scoring", scoring, "incremental | reference")
        ->check(CLI::IsMember({"incremental", "reference"}))
        ->capture_default_str();
    cmd->add_flag("--gr-correction", cfg.psrf.between_chain_correction,
                  "apply the (m+1)/m factor to the between-chain term");
  }

  void Finish() {
    cfg.spectrum = slc::ParseSpectrumKind(spectrum);
    cfg.statistic = slc::ParseChainStatistic(statistic);
    cfg.init = slc::ParseInitKind(init);
    cfg.scoring = scoring == "reference" ? slc::ScoringMode::kReference
                                         : slc::ScoringMode::kIncremental;
    if (cfg.chains < 2) throw UsageError("--chains must be >= 2");
    if (cfg.check_every < 1) throw UsageError("--check-every must be >= 1");
    if (cfg.max_steps < 0) throw UsageError("--max-steps must be >= 0");
    if (cfg.burnin < 0) throw UsageError("--burnin must be >= 0");
  }
};

void PrintMixtime(const std::vector<slc::MixtimeRow>& rows, const char* key) {
  for (const auto& r : rows) {
    std::cout << key << "=" << r.key << " mixed_at=" << slc::FormatOptional(r.mixed_at)
              << "\n";
  }
}

int Run(int argc, char** argv) {
  if (const char* threads = std::getenv("SLC_THREADS")) {
    const int t = std::atoi(threads);
    if (t >= 1) omp_set_num_threads(t);
  }

  CLI::App app{"Sampling and mode finding for strongly log-concave subset distributions"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  // gen-kernel
  auto* gen = app.add_subcommand("gen-kernel", "write a random PSD kernel");
  int gen_n = 0;
  std::string gen_spectrum = "smooth";
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "ground set size")->required();
  gen->add_option("--spectrum", gen_spectrum, "smooth | one-big | step")
      ->check(CLI::IsMember({"smooth", "one-big", "step"}))
      ->capture_default_str();
  gen->add_option("--seed", gen_seed, "seed")->capture_default_str();
  gen->add_option("--out", gen_out, "kernel file")->required();

  // sample
  auto* sample = app.add_subcommand("sample", "run Metropolis-Hastings chains");
  std::string sample_kernel;
  int sample_d = 0;
  double sample_alpha = 1.0;
  std::int64_t sample_steps = 0;
  int sample_chains = 1;
  std::uint64_t sample_seed = 0;
  std::string sample_out;
  std::string sample_proposal = "rescaled";
  std::string sample_stat = "log-weight";
  std::string sample_init = "default";
  std::string sample_scoring = "incremental";
  sample->add_option("--kernel", sample_kernel, "kernel file")->required();
  sample->add_option("--d", sample_d, "cardinality cap")->required();
  sample->add_option("--alpha", sample_alpha, "exponent on sqrt(det)")->capture_default_str();
  sample->add_option("--steps", sample_steps, "steps per chain")->required();
  sample->add_option("--chains", sample_chains, "number of chains")->capture_default_str();
  sample->add_option("--seed", sample_seed, "master seed")->capture_default_str();
  sample->add_option("--out", sample_out, "output directory")->required();
  sample->add_option("--proposal", sample_proposal, "rescaled | plain")
      ->check(CLI::IsMember({"rescaled", "plain"}))
      ->capture_default_str();
  sample->add_option("--stat", sample_stat, "log-weight | size")
      ->check(CLI::IsMember({"log-weight", "size"}))
      ->capture_default_str();
  sample->add_option("--init", sample_init, "default | dispersed")
      ->check(CLI::IsMember({"default", "dispersed"}))
      ->capture_default_str();
  sample->add_option("--scoring", sample_scoring, "incremental | reference")
      ->check(CLI::IsMember({"incremental", "reference"}))
      ->capture_default_str();

  // diagnose
  auto* diagnose = app.add_subcommand("diagnose", "PSRF of chain trace CSVs");
  std::vector<std::string> diag_traces;
  double diag_threshold = 1.05;
  std::int64_t diag_check_every = 1000;
  std::int64_t diag_burnin = 0;
  std::string diag_out;
  bool diag_correction = false;
  diagnose->add_option("traces", diag_traces, "trace CSV files (>= 2)")
      ->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  diagnose->add_option("--threshold", diag_threshold, "PSRF threshold")->capture_default_str();
  diagnose->add_option("--check-every", diag_check_every, "checkpoint spacing")
      ->capture_default_str();
  diagnose->add_option("--burnin", diag_burnin, "leading steps to drop")->capture_default_str();
  diagnose->add_option("--out", diag_out, "PSRF CSV path (default: stdout only)");
  diagnose->add_flag("--gr-correction", diag_correction,
                     "apply the (m+1)/m factor to the between-chain term");

  // optimize
  auto* optimize = app.add_subcommand("optimize", "approximate mode finding");
  std::string opt_kernel;
  std::string opt_algo;
  int opt_k = 0;
  int opt_d = -1;
  double opt_alpha = 1.0;
  std::string opt_gamma = "auto";
  std::uint64_t opt_seed = 0;
  optimize->add_option("--kernel", opt_kernel, "kernel file")->required();
  optimize->add_option("--algo", opt_algo, "distorted | double | monotone | brute")
      ->required()
      ->check(CLI::IsMember({"distorted", "double", "monotone", "brute"}));
  optimize->add_option("--k", opt_k, "cardinality budget")->required();
  optimize->add_option("--d", opt_d, "cardinality cap of nu (default n)");
  optimize->add_option("--alpha", opt_alpha, "exponent on sqrt(det)")->capture_default_str();
  optimize->add_option("--gamma", opt_gamma, "auto or a number")->capture_default_str();
  optimize->add_option("--seed", opt_seed, "seed (double greedy)")->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "SLC certificate for a polynomial file");
  std::string verify_path;
  double verify_tol = 0.0;
  int verify_homogenize = 0;
  double verify_alpha = 1.0;
  verify->add_option("path", verify_path, "polynomial file")->required();
  verify->add_option("--tol", verify_tol, "eigenvalue tolerance (default scale-relative)");
  verify->add_option("--homogenize", verify_homogenize,
                     "apply scaled homogenization to degree K and polarize first");
  verify->add_option("--alpha", verify_alpha, "exponent for --homogenize")
      ->capture_default_str();

  // figure1
  auto* fig1 = app.add_subcommand("figure1", "mixing time versus d at fixed n");
  ExperimentFlags fig1_flags;
  std::string fig1_d = "10,20,30,40,50";
  fig1->add_option("--n", fig1_flags.cfg.n, "ground set size")->required();
  fig1->add_option("--d", fig1_d, "comma-separated caps")->capture_default_str();
  fig1_flags.Register(fig1);

  // figure2
  auto* fig2 = app.add_subcommand("figure2", "mixing time versus n at fixed d");
  ExperimentFlags fig2_flags;
  std::string fig2_n;
  int fig2_d = 40;
  fig2->add_option("--n", fig2_n, "comma-separated ground set sizes")->required();
  fig2->add_option("--d", fig2_d, "cardinality cap")->capture_default_str();
  fig2_flags.Register(fig2);

  // compare-proposals
  auto* cmp = app.add_subcommand("compare-proposals",
                                 "rescaled versus plain proposal mixing times");
  ExperimentFlags cmp_flags;
  int cmp_d = 20;
  cmp->add_option("--n", cmp_flags.cfg.n, "ground set size")->required();
  cmp->add_option("--d", cmp_d, "cardinality cap")->capture_default_str();
  cmp->add_option("--repeats", cmp_flags.cfg.repeats, "number of random kernels")
      ->capture_default_str();
  cmp_flags.Register(cmp);

  std::vector<std::string> args(argv, argv + argc);
  try {
    args = ExpandConfig(args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::vector<char*> cargs;
  for (std::string& a : args) cargs.push_back(a.data());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) {
      if (gen_n < 1) throw UsageError("--n must be >= 1");
      const slc::KernelSpec k =
          slc::RandomPsd(gen_n, slc::ParseSpectrumKind(gen_spectrum), gen_seed);
      slc::WriteKernelFile(gen_out, k);
      return 0;
    }

    if (*sample) {
      if (sample_steps < 0) throw UsageError("--steps must be >= 0");
      if (sample_chains < 1) throw UsageError("--chains must be >= 1");
      auto kernel = std::make_shared<const slc::KernelSpec>(slc::ReadKernelFile(sample_kernel));
      if (sample_d < 1 || sample_d > kernel->n) throw UsageError("--d must lie in [1, n]");
      const slc::ExtendedWeightCtx ctx(
          slc::SubsetWeightFn::SqrtDeterminant(kernel, sample_d, sample_alpha));
      slc::SamplerConfig sc;
      sc.proposal = slc::ParseProposalKind(sample_proposal);
      sc.statistic = slc::ParseChainStatistic(sample_stat);
      sc.scoring = sample_scoring == "reference" ? slc::ScoringMode::kReference
                                                 : slc::ScoringMode::kIncremental;
      sc.keep_states = false;
      const std::vector<slc::ExtendedState> starts = slc::InitialStates(
          ctx, sample_chains, slc::ParseInitKind(sample_init), sample_seed, 0);
      std::vector<slc::ChainTrace> traces(sample_chains);
#pragma omp parallel for schedule(static, 1)
      for (int c = 0; c < sample_chains; ++c) {
        traces[c] = slc::RunChain(ctx, starts[c], sample_steps,
                                  slc::ChainSeed(sample_seed, 0, c), sc);
      }
      std::filesystem::create_directories(sample_out);
      nlohmann::json summary;
      summary["chains"] = sample_chains;
      summary["steps"] = sample_steps;
      nlohmann::json rates = nlohmann::json::array();
      for (int c = 0; c < sample_chains; ++c) {
        slc::WriteTextFile(
            (std::filesystem::path(sample_out) / ("chain" + std::to_string(c) + ".csv")).string(),
            slc::TraceCsv(traces[c]));
        std::int64_t acc = 0;
        for (std::size_t t = 1; t < traces[c].accepted.size(); ++t) acc += traces[c].accepted[t];
        rates.push_back(sample_steps > 0 ? static_cast<double>(acc) / sample_steps : 0.0);
      }
      summary["acceptance_rate"] = rates;
      std::cout << summary.dump() << "\n";
      return 0;
    }

    if (*diagnose) {
      if (diag_traces.size() < 2) throw UsageError("need at least 2 trace files");
      if (diag_check_every < 1) throw UsageError("--check-every must be >= 1");
      if (diag_burnin < 0) throw UsageError("--burnin must be >= 0");
      std::vector<std::vector<double>> stats;
      for (const std::string& p : diag_traces) stats.push_back(slc::ReadTraceStats(p));
      slc::PsrfOptions opts;
      opts.between_chain_correction = diag_correction;
      const slc::PsrfReport report = slc::EmpiricalMixingTime(
          stats, diag_threshold, diag_check_every, diag_burnin, opts);
      const std::string csv = slc::PsrfCsv(report.checkpoints);
      if (!diag_out.empty()) {
        slc::WriteTextFile(diag_out, csv);
      } else {
        std::cout << csv;
      }
      std::cout << "mixed_at=" << slc::FormatOptional(report.mixed_at) << "\n";
      return 0;
    }

    if (*optimize) {
      auto kernel = std::make_shared<const slc::KernelSpec>(slc::ReadKernelFile(opt_kernel));
      const int n = kernel->n;
      const int cap = opt_d < 0 ? n : opt_d;
      if (cap < 0 || cap > n) throw UsageError("--d must lie in [0, n]");
      if (opt_k < 0) throw UsageError("--k must be >= 0");
      const slc::SubsetWeightFn nu = slc::SubsetWeightFn::SqrtDeterminant(kernel, cap, opt_alpha);
      const slc::SetFunction weight = slc::WeightFunction(nu);
      std::optional<double> gamma;
      if (opt_gamma != "auto") {
        try {
          gamma = std::stod(opt_gamma);
        } catch (const std::exception&) {
          throw UsageError("--gamma must be 'auto' or a number");
        }
      }
      const bool enumerable = n <= 20;
      nlohmann::json out;
      out["algo"] = opt_algo;
      out["k"] = opt_k;
      slc::GreedyResult result;
      std::optional<double> bound;
      if (opt_algo == "brute") {
        if (!enumerable) throw UsageError("brute force needs n <= 20");
        result = slc::BruteForceOpt(weight, n, opt_k);
      } else if (opt_algo == "distorted") {
        if (opt_k < 1) throw UsageError("--k must be >= 1 for distorted greedy");
        // Multiplicative guarantee for gamma-weakly log-submodular nu.
        const double g = gamma ? *gamma : (cap >= 2 ? slc::GammaWeak(cap) : 1.0);
        if (!(g > 0.0)) throw UsageError("--gamma must be positive for distorted greedy");
        gamma = g;
        result = slc::DistortedGreedyLog(nu, opt_k);
        if (enumerable) {
          const double log_empty = nu.LogWeight(Subset{});
          const slc::DecomposedObjective obj(
              [&nu, log_empty](const Subset& s) { return nu.LogWeight(s) - log_empty; }, n);
          const slc::GreedyResult opt =
              slc::BruteForceOpt(slc::LogWeightFunction(nu), n, opt_k);
          bound = std::exp(log_empty + slc::DistortedBound(obj, opt.selected, std::log(g)));
        }
      } else if (opt_algo == "double") {
        if (!gamma) {
          if (n > 14) throw UsageError("--gamma auto needs n <= 14; pass a value");
          gamma = slc::EmpiricalAdditiveGamma(weight, n);
        }
        if (*gamma < 0.0) throw UsageError("--gamma must be >= 0");
        result = slc::DoubleGreedy(weight, n, *gamma, opt_seed);
        if (enumerable) {
          const slc::GreedyResult opt = slc::BruteForceOpt(weight, n, n);
          bound = slc::DoubleGreedyBound(opt.value, n, *gamma);
        }
      } else {  // monotone
        if (opt_k > n) throw UsageError("--k must be <= n");
        if (!gamma) {
          if (n > 14) throw UsageError("--gamma auto needs n <= 14; pass a value");
          gamma = slc::EmpiricalAdditiveGamma(weight, n);
        }
        result = slc::MonotoneGreedy(weight, n, opt_k);
        if (enumerable) {
          const slc::GreedyResult opt = slc::BruteForceOpt(weight, n, opt_k);
          bound = slc::MonotoneBound(opt.value, opt_k, opt_k, *gamma);
        }
      }
      out["selected"] = OneBased(result.selected);
      out["value"] = result.value;
      out["gamma"] = gamma ? nlohmann::json(*gamma) : nlohmann::json(nullptr);
      out["bound"] = bound ? nlohmann::json(*bound) : nlohmann::json(nullptr);
      out["bound_satisfied"] =
          bound ? nlohmann::json(result.value >= *bound - 1e-9 * (1.0 + std::abs(*bound)))
                : nlohmann::json(nullptr);
      std::cout << out.dump() << "\n";
      return 0;
    }

    if (*verify) {
      std::ifstream in(verify_path);
      if (!in) throw std::runtime_error("cannot open " + verify_path);
      slc::SparsePolynomial f = slc::ParsePolynomial(in);
      if (verify_homogenize > 0) {
        f = slc::Polarize(slc::ScaledHomogenize(f, {verify_homogenize, verify_alpha}),
                          verify_homogenize);
      }
      std::cout << slc::ToJson(slc::IsSlcHomogeneous(f, verify_tol)) << "\n";
      return 0;
    }

    if (*fig1) {
      fig1_flags.Finish();
      fig1_flags.cfg.d_list = ParseIntList(fig1_d, "--d");
      PrintMixtime(slc::Figure1(fig1_flags.cfg), "d");
      return 0;
    }

    if (*fig2) {
      fig2_flags.Finish();
      fig2_flags.cfg.n_list = ParseIntList(fig2_n, "--n");
      fig2_flags.cfg.d_list = {fig2_d};
      PrintMixtime(slc::Figure2(fig2_flags.cfg), "n");
      return 0;
    }

    if (*cmp) {
      cmp_flags.Finish();
      cmp_flags.cfg.d_list = {cmp_d};
      for (const auto& c : slc::CompareProposals(cmp_flags.cfg)) {
        std::cout << "repeat=" << c.repeat << " rescaled=" << slc::FormatOptional(c.rescaled)
                  << " plain=" << slc::FormatOptional(c.plain) << "\n";
      }
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) { return Run(argc, argv); }
