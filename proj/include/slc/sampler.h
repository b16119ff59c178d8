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

// Metropolis-Hastings chain on d-subsets of [n + d] whose stationary law is
// nu_sh, with the base-exchange walk for mu (or for the unrescaled H_d nu)
// as proposal. Marginalizing a state onto [n] gives a sample from nu.
//
// Also holds the enumeration oracles used to check the chain exactly: the
// one-step kernel, its stationary vector and the normalized targets.

#ifndef SLC_SAMPLER_H_
#define SLC_SAMPLER_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "slc/distributions.h"
#include "slc/rng.h"
#include "slc/subset.h"

namespace slc {

// Sorted d-subset of [n + d].
using ExtendedState = Subset;

enum class MoveType { kRemove, kStay, kAdd };

enum class ChainStatistic { kLogWeight, kGroundSize };

std::string ToString(ChainStatistic stat);
// "log-weight" or "size".
ChainStatistic ParseChainStatistic(const std::string& name);

// How candidate completions are scored. kReference recomputes every log-det
// from scratch; kIncremental factors L_G once per step and scores each
// candidate with a Schur complement. Non-determinantal weights ignore this.
enum class ScoringMode { kReference, kIncremental };

struct SamplerConfig {
  ProposalKind proposal = ProposalKind::kRescaled;
  ChainStatistic statistic = ChainStatistic::kLogWeight;
  ScoringMode scoring = ScoringMode::kIncremental;
  bool keep_states = true;
};

struct ChainTrace {
  std::uint64_t seed = 0;
  std::vector<ExtendedState> states;  // empty unless keep_states
  std::vector<int> k;                 // |S & [n]| per step
  std::vector<double> stats;
  std::vector<bool> accepted;         // accepted[0] is true by convention
  std::size_t size() const { return stats.size(); }
};

// Acceptance probability for a proposal out of a state with k ground
// elements:
//   rescaled: remove min{1, (e/d)(d-k+1)}, stay 1, add min{1, (d/e)/(d-k)}
//   plain:    remove 1,                    stay 1, add min{1, 1/(d-k)}
// Throws for k outside [0, d], remove at k = 0 and add at k = d.
double AcceptanceProbability(int d, int k, MoveType move,
                             ProposalKind kind = ProposalKind::kRescaled);

// Log weights of every completion (S \ i) + j, j ascending over the
// complement of S \ i (which contains i). Exposed for the oracles and the
// benchmark.
struct Completions {
  std::vector<int> candidates;
  std::vector<double> log_weights;
};
Completions ScoreCompletions(const ExtendedWeightCtx& ctx, ProposalKind kind,
                             std::span<const int> rest, ScoringMode mode);

// One draw from Q(S, .): drop a uniform element, re-add proportionally to
// the proposal measure.
ExtendedState BaseExchangePropose(const ExtendedWeightCtx& ctx,
                                  std::span<const int> s, Rng& rng,
                                  const SamplerConfig& cfg = {});

struct StepResult {
  ExtendedState state;
  bool accepted;
};
StepResult MhStep(const ExtendedWeightCtx& ctx, std::span<const int> s,
                  Rng& rng, const SamplerConfig& cfg = {});

// A chain that can be advanced in pieces; used by the multi-chain drivers.
class MhChain {
 public:
  MhChain(const ExtendedWeightCtx& ctx, ExtendedState start, Rng rng,
          SamplerConfig cfg);

  const ExtendedState& state() const { return state_; }
  int ground_count() const { return k_; }
  double statistic() const;
  // Returns whether the proposal was accepted.
  bool Step();

 private:
  const ExtendedWeightCtx* ctx_;
  ExtendedState state_;
  int k_;
  double log_weight_;
  Rng rng_;
  SamplerConfig cfg_;
};

// Throws std::invalid_argument if s0 is not a d-subset of [n+d] with
// positive weight.
void ValidateState(const ExtendedWeightCtx& ctx, std::span<const int> s0);

ChainTrace RunChain(const ExtendedWeightCtx& ctx, const ExtendedState& s0,
                    std::int64_t steps, std::uint64_t seed,
                    const SamplerConfig& cfg = {});

// Ground part: the d_cap heaviest singletons if that set has positive weight,
// else empty. Padded with the lowest-index dummies to size d.
ExtendedState DefaultInitialState(const ExtendedWeightCtx& ctx);

// A uniformly random ground set of size d with positive weight (falls back to
// smaller sizes), padded with dummies. Used to disperse chain starts.
ExtendedState RandomInitialState(const ExtendedWeightCtx& ctx, Rng& rng);

Subset Marginalize(std::span<const int> s, int n);

using DistributionTable = std::map<Subset, double>;

// Normalized nu over |S| <= d_cap with positive weight. n <= 20.
DistributionTable ExactDistribution(const SubsetWeightFn& nu);
// Normalized nu_sh over d-subsets of [n + d] with positive weight.
DistributionTable ExactNuSh(const ExtendedWeightCtx& ctx);
DistributionTable ExactProposalMeasure(const ExtendedWeightCtx& ctx,
                                       ProposalKind kind);

// Exact one-step kernel of MhStep over the positive-weight states, stored as
// sparse rows. states is sorted lexicographically.
struct TransitionMatrix {
  std::vector<ExtendedState> states;
  std::vector<std::vector<std::pair<int, double>>> rows;
  int Index(std::span<const int> s) const;  // -1 if absent
  double At(int from, int to) const;
};

// Requires C(n+d, d) <= 5000. Rows are computed in parallel.
TransitionMatrix BuildTransitionMatrix(const ExtendedWeightCtx& ctx,
                                       ProposalKind kind = ProposalKind::kRescaled);
TransitionMatrix BuildTransitionMatrixSerial(
    const ExtendedWeightCtx& ctx, ProposalKind kind = ProposalKind::kRescaled);

// Left fixed point by power iteration from the uniform vector, stopping when
// successive iterates differ by <= tol in L1.
std::vector<double> StationaryDistribution(const TransitionMatrix& p,
                                           double tol = 1e-13,
                                           int max_iters = 1000000);

}  // namespace slc

#endif  // SLC_SAMPLER_H_
