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

#include "slc/diagnostics.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slc {
namespace {

double PsrfFromSummaries(std::span<const double> means,
                         std::span<const double> variances, std::int64_t t,
                         const PsrfOptions& opts) {
  const std::size_t m = means.size();
  if (m < 2) throw std::invalid_argument("PSRF needs at least 2 chains");
  if (t < 2) throw std::invalid_argument("PSRF needs chains of length >= 2");
  double w = 0.0;
  double grand = 0.0;
  for (std::size_t c = 0; c < m; ++c) {
    w += variances[c];
    grand += means[c];
  }
  w /= static_cast<double>(m);
  grand /= static_cast<double>(m);
  if (!(w > 0.0)) throw std::invalid_argument("PSRF undefined: within-chain variance is 0");
  double spread = 0.0;
  for (double mu : means) spread += (mu - grand) * (mu - grand);
  const double td = static_cast<double>(t);
  const double b = td * spread / static_cast<double>(m - 1);
  double between = b / td;
  if (opts.between_chain_correction) {
    between *= (static_cast<double>(m) + 1.0) / static_cast<double>(m);
  }
  const double pooled = (td - 1.0) / td * w + between;
  return std::sqrt(pooled / w);
}

}  // namespace

double Psrf(std::span<const std::vector<double>> chains, const PsrfOptions& opts) {
  if (chains.size() < 2) throw std::invalid_argument("PSRF needs at least 2 chains");
  const std::size_t t = chains[0].size();
  std::vector<double> means;
  std::vector<double> variances;
  for (const auto& chain : chains) {
    if (chain.size() != t) throw std::invalid_argument("chains differ in length");
    RunningMoments mom;
    for (double x : chain) mom.Add(x);
    means.push_back(mom.mean());
    variances.push_back(t >= 2 ? mom.variance() : 0.0);
  }
  return PsrfFromSummaries(means, variances, static_cast<std::int64_t>(t), opts);
}

void RunningMoments::Add(double x) {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

double RunningMoments::variance() const {
  if (count_ < 2) throw std::invalid_argument("variance needs >= 2 samples");
  return m2_ / static_cast<double>(count_ - 1);
}

double PsrfFromMoments(std::span<const RunningMoments> chains,
                       const PsrfOptions& opts) {
  if (chains.size() < 2) throw std::invalid_argument("PSRF needs at least 2 chains");
  const std::int64_t t = chains[0].count();
  std::vector<double> means;
  std::vector<double> variances;
  for (const RunningMoments& mom : chains) {
    if (mom.count() != t) throw std::invalid_argument("chains differ in length");
    means.push_back(mom.mean());
    variances.push_back(t >= 2 ? mom.variance() : 0.0);
  }
  return PsrfFromSummaries(means, variances, t, opts);
}

std::optional<std::int64_t> MixedAt(
    std::span<const std::pair<std::int64_t, double>> checkpoints,
    double threshold) {
  for (const auto& [it, rhat] : checkpoints) {
    if (rhat < threshold) return it;
  }
  return std::nullopt;
}

PsrfReport EmpiricalMixingTime(std::span<const std::vector<double>> stats,
                               double threshold, std::int64_t check_every,
                               std::int64_t burnin, const PsrfOptions& opts) {
  if (stats.size() < 2) throw std::invalid_argument("need at least 2 traces");
  if (check_every < 1) throw std::invalid_argument("check_every must be >= 1");
  if (burnin < 0) throw std::invalid_argument("burn-in must be >= 0");
  const std::size_t len = stats[0].size();
  for (const auto& s : stats) {
    if (s.size() != len) throw std::invalid_argument("traces differ in length");
  }
  PsrfReport report;
  report.threshold = threshold;
  std::vector<RunningMoments> moments(stats.size());
  // Index 0 is the initial state; iteration t has consumed indices 0..t.
  std::int64_t fed = 0;
  const std::int64_t last = static_cast<std::int64_t>(len) - 1;
  for (std::int64_t it = check_every; it <= last; it += check_every) {
    for (; fed <= it; ++fed) {
      if (fed < burnin) continue;
      for (std::size_t c = 0; c < stats.size(); ++c) moments[c].Add(stats[c][fed]);
    }
    if (moments[0].count() < 2) continue;
    report.checkpoints.emplace_back(it, PsrfFromMoments(moments, opts));
  }
  report.mixed_at = MixedAt(report.checkpoints, threshold);
  return report;
}

PsrfReport EmpiricalMixingTime(std::span<const ChainTrace> traces,
                               double threshold, std::int64_t check_every,
                               std::int64_t burnin, const PsrfOptions& opts) {
  std::vector<std::vector<double>> stats;
  stats.reserve(traces.size());
  for (const ChainTrace& t : traces) stats.push_back(t.stats);
  return EmpiricalMixingTime(stats, threshold, check_every, burnin, opts);
}

double L1Distance(const DistributionTable& p, const DistributionTable& q) {
  auto check = [](const DistributionTable& t) {
    double total = 0.0;
    for (const auto& [s, prob] : t) {
      if (prob < 0.0) throw std::invalid_argument("negative probability");
      total += prob;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw std::invalid_argument("distribution does not sum to 1");
    }
  };
  check(p);
  check(q);
  double dist = 0.0;
  for (const auto& [s, prob] : p) {
    const auto it = q.find(s);
    dist += std::abs(prob - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [s, prob] : q) {
    if (!p.count(s)) dist += prob;
  }
  return dist;
}

double TotalVariation(const DistributionTable& p, const DistributionTable& q) {
  return 0.5 * L1Distance(p, q);
}

DistributionTable EmpiricalGroundLaw(std::span<const ExtendedState> states,
                                     int n) {
  if (states.empty()) throw std::invalid_argument("no states");
  DistributionTable out;
  const double w = 1.0 / static_cast<double>(states.size());
  for (const ExtendedState& s : states) out[Marginalize(s, n)] += w;
  return out;
}

double LogMixingTimeBound(int d, int s0_ground, double log_nu_s0, double epsilon) {
  if (d < 8) throw std::invalid_argument("mixing-time bound needs d >= 8");
  if (s0_ground < 0 || s0_ground > d) {
    throw std::invalid_argument("|S0 & [n]| must lie in [0, d]");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  if (log_nu_s0 > 0.0) throw std::invalid_argument("nu(S0) must be <= 1");
  const double inner = LogBinomial(d, s0_ground) - log_nu_s0;
  if (!(inner > 1.0)) {
    throw std::invalid_argument("need C(d,|S0|)/nu(S0) > e for log log to be positive");
  }
  const double bracket = std::log(inner) + std::log(1.0 / (2.0 * epsilon * epsilon));
  if (!(bracket > 0.0)) throw std::invalid_argument("bound bracket is not positive");
  const double dd = static_cast<double>(d);
  const double log_prefactor = -1.0 - 0.5 * std::log(2.0 * std::numbers::pi) +
                               2.5 * std::log(dd) + dd * std::numbers::ln2;
  return log_prefactor + std::log(bracket);
}

double MixingTimeBound(int d, int s0_ground, double log_nu_s0, double epsilon) {
  return std::exp(LogMixingTimeBound(d, s0_ground, log_nu_s0, epsilon));
}

}  // namespace slc
