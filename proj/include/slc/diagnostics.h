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

// Convergence diagnostics: Gelman-Rubin PSRF over several chains, distances
// between distribution tables, and the closed-form mixing-time bound for the
// corrected base-exchange chain.

#ifndef SLC_DIAGNOSTICS_H_
#define SLC_DIAGNOSTICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "slc/sampler.h"

namespace slc {

struct PsrfOptions {
  // Multiplies the B/T term of the pooled variance by (m+1)/m, the classic
  // Gelman-Rubin correction. Off by default.
  bool between_chain_correction = false;
};

// R-hat = sqrt(((T-1)/T W + B/T) / W), W the mean within-chain variance and B
// = T times the variance of the chain means (both with n-1 denominators).
// Throws for fewer than 2 chains, T < 2, unequal lengths or W = 0.
double Psrf(std::span<const std::vector<double>> chains,
            const PsrfOptions& opts = {});

// Streaming first and second moments of one chain (Welford).
class RunningMoments {
 public:
  void Add(double x);
  std::int64_t count() const { return count_; }
  double mean() const { return mean_; }
  // Sample variance, denominator count - 1.
  double variance() const;

 private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// PSRF of the prefixes summarized by the moments; all counts must agree.
double PsrfFromMoments(std::span<const RunningMoments> chains,
                       const PsrfOptions& opts = {});

struct PsrfReport {
  std::vector<std::pair<std::int64_t, double>> checkpoints;  // (iteration, R-hat)
  std::optional<std::int64_t> mixed_at;
  double threshold = 1.05;
};

// First checkpoint whose R-hat is strictly below threshold.
std::optional<std::int64_t> MixedAt(
    std::span<const std::pair<std::int64_t, double>> checkpoints,
    double threshold);

// PSRF of the statistic traces on prefixes of length check_every, 2
// check_every, ... Iteration t covers steps 1..t (the initial state at index
// 0 is included as the first sample). Burn-in steps are dropped from every
// prefix.
PsrfReport EmpiricalMixingTime(std::span<const std::vector<double>> stats,
                               double threshold, std::int64_t check_every,
                               std::int64_t burnin = 0,
                               const PsrfOptions& opts = {});
PsrfReport EmpiricalMixingTime(std::span<const ChainTrace> traces,
                               double threshold, std::int64_t check_every,
                               std::int64_t burnin = 0,
                               const PsrfOptions& opts = {});

// sum |p - q| over the union of supports. Both tables must sum to 1 within
// 1e-9.
double L1Distance(const DistributionTable& p, const DistributionTable& q);
double TotalVariation(const DistributionTable& p, const DistributionTable& q);

// Frequencies of the ground parts of a sample of extended states.
DistributionTable EmpiricalGroundLaw(std::span<const ExtendedState> states,
                                     int n);

// log of the mixing-time bound
//   (1 / (e sqrt(2 pi))) d^{5/2} 2^d
//     * (log log(C(d, s0_ground) / nu(S0)) + log(1 / (2 eps^2)))
// with nu(S0) normalized, given as its log. Throws for d < 8, eps outside
// (0, 1), log(C/nu) <= 1, or a non-positive bracket.
double LogMixingTimeBound(int d, int s0_ground, double log_nu_s0, double epsilon);
double MixingTimeBound(int d, int s0_ground, double log_nu_s0, double epsilon);

}  // namespace slc

#endif  // SLC_DIAGNOSTICS_H_
