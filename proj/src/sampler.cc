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

#include "slc/sampler.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "slc/linalg.h"

namespace slc {
namespace {

// Log weight of G0 + j for every ground j outside G0, via one factorization of
// L_{G0}. Entries for j in G0 are left untouched.
void ScoreGroundIncremental(const SubsetWeightFn& nu, std::span<const int> g0,
                            std::vector<double>& out) {
  const KernelSpec& kernel = *nu.kernel();
  const PrincipalCholesky chol(kernel.L, g0);
  const double alpha = nu.alpha();
  std::size_t pos = 0;
  for (int j = 0; j < nu.n(); ++j) {
    if (pos < g0.size() && g0[pos] == j) {
      ++pos;
      continue;
    }
    const double ld = chol.ok() ? chol.LogDetWith(j) : kNegInf;
    out[j] = ld == kNegInf ? kNegInf : alpha * 0.5 * ld;
  }
}

void ScoreInto(const ExtendedWeightCtx& ctx, ProposalKind kind,
               std::span<const int> rest, ScoringMode mode,
               std::vector<double>& ground_scratch, Completions& out) {
  const int n = ctx.n();
  const int universe = ctx.universe();
  const int k0 = ctx.GroundCount(rest);
  const std::span<const int> g0 = rest.first(k0);
  out.candidates.clear();
  out.log_weights.clear();

  const SubsetWeightFn& nu = ctx.base();
  const bool incremental =
      mode == ScoringMode::kIncremental && nu.kernel() != nullptr;
  if (incremental) {
    ground_scratch.assign(n, kNegInf);
    ScoreGroundIncremental(nu, g0, ground_scratch);
  }
  const double add_offset =
      k0 + 1 <= ctx.d() ? ctx.ProposalOffset(kind, k0 + 1) : kNegInf;
  const double dummy_log_weight = [&] {
    const double lw = nu.LogWeight(g0);
    return lw == kNegInf ? kNegInf : ctx.ProposalOffset(kind, k0) + lw;
  }();

  Subset grown;
  grown.reserve(k0 + 1);
  std::size_t pos = 0;
  for (int j = 0; j < universe; ++j) {
    if (pos < rest.size() && rest[pos] == j) {
      ++pos;
      continue;
    }
    double lw;
    if (j >= n) {
      lw = dummy_log_weight;
    } else {
      double base;
      if (incremental) {
        base = ground_scratch[j];
      } else {
        grown.assign(g0.begin(), g0.end());
        grown.insert(std::upper_bound(grown.begin(), grown.end(), j), j);
        base = nu.LogWeight(grown);
      }
      lw = base == kNegInf ? kNegInf : add_offset + base;
    }
    out.candidates.push_back(j);
    out.log_weights.push_back(lw);
  }
}

// Index into the candidates drawn proportionally to exp(log_weights).
std::size_t DrawCandidate(const std::vector<double>& log_weights, Rng& rng) {
  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  if (top == kNegInf) {
    throw std::runtime_error("every completion has zero weight");
  }
  double total = 0.0;
  for (double lw : log_weights) total += std::exp(lw - top);
  const double u = rng.Uniform() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t c = 0; c < log_weights.size(); ++c) {
    if (log_weights[c] == kNegInf) continue;
    acc += std::exp(log_weights[c] - top);
    last_positive = c;
    if (u < acc) return c;
  }
  return last_positive;  // rounding in the running sum
}

MoveType Classify(int k_from, int k_to) {
  if (k_to < k_from) return MoveType::kRemove;
  if (k_to > k_from) return MoveType::kAdd;
  return MoveType::kStay;
}

Subset InsertSorted(std::span<const int> rest, int j) {
  Subset t(rest.begin(), rest.end());
  t.insert(std::upper_bound(t.begin(), t.end(), j), j);
  return t;
}

ExtendedState PadWithDummies(const ExtendedWeightCtx& ctx, Subset ground) {
  const int missing = ctx.d() - static_cast<int>(ground.size());
  for (int t = 0; t < missing; ++t) ground.push_back(ctx.n() + t);
  return ground;
}

DistributionTable Normalize(std::vector<Subset> sets,
                            const std::vector<double>& logw) {
  DistributionTable out;
  if (sets.empty()) throw std::invalid_argument("distribution has empty support");
  const double top = *std::max_element(logw.begin(), logw.end());
  double total = 0.0;
  for (double lw : logw) total += std::exp(lw - top);
  for (std::size_t t = 0; t < sets.size(); ++t) {
    out.emplace(std::move(sets[t]), std::exp(logw[t] - top) / total);
  }
  return out;
}

std::vector<std::pair<int, double>> TransitionRow(
    const ExtendedWeightCtx& ctx, ProposalKind kind, const TransitionMatrix& p,
    int from) {
  const ExtendedState& s = p.states[from];
  const int d = ctx.d();
  const int k = ctx.GroundCount(s);
  std::map<int, double> row;
  std::vector<double> scratch;
  Completions comps;
  Subset rest;
  for (int drop = 0; drop < d; ++drop) {
    rest.assign(s.begin(), s.end());
    rest.erase(rest.begin() + drop);
    ScoreInto(ctx, kind, rest, ScoringMode::kReference, scratch, comps);
    const double top =
        *std::max_element(comps.log_weights.begin(), comps.log_weights.end());
    double total = 0.0;
    for (double lw : comps.log_weights) total += std::exp(lw - top);
    for (std::size_t c = 0; c < comps.candidates.size(); ++c) {
      if (comps.log_weights[c] == kNegInf) continue;
      const double q = std::exp(comps.log_weights[c] - top) / total / d;
      const Subset t = InsertSorted(rest, comps.candidates[c]);
      const int kt = ctx.GroundCount(t);
      const double a = AcceptanceProbability(d, k, Classify(k, kt), kind);
      const int to = p.Index(t);
      if (to < 0) throw std::logic_error("proposal left the state space");
      row[to] += q * a;
      row[from] += q * (1.0 - a);
    }
  }
  return {row.begin(), row.end()};
}

TransitionMatrix TransitionStates(const ExtendedWeightCtx& ctx) {
  if (Binomial(ctx.universe(), ctx.d()) > 5000) {
    throw std::invalid_argument("transition matrix needs C(n+d, d) <= 5000");
  }
  TransitionMatrix p;
  ForEachCombination(ctx.universe(), ctx.d(), [&](const Subset& s) {
    if (LogNuSh(ctx, s) != kNegInf) p.states.push_back(s);
    return true;
  });
  p.rows.resize(p.states.size());
  return p;
}

}  // namespace

std::string ToString(ChainStatistic stat) {
  return stat == ChainStatistic::kLogWeight ? "log-weight" : "size";
}

ChainStatistic ParseChainStatistic(const std::string& name) {
  if (name == "log-weight") return ChainStatistic::kLogWeight;
  if (name == "size") return ChainStatistic::kGroundSize;
  throw std::invalid_argument("unknown chain statistic: " + name);
}

double AcceptanceProbability(int d, int k, MoveType move, ProposalKind kind) {
  if (d < 1 || k < 0 || k > d) {
    throw std::invalid_argument("need 0 <= k <= d and d >= 1");
  }
  const bool rescaled = kind == ProposalKind::kRescaled;
  switch (move) {
    case MoveType::kStay:
      return 1.0;
    case MoveType::kRemove:
      if (k == 0) throw std::invalid_argument("remove move needs k >= 1");
      return rescaled ? std::min(1.0, std::numbers::e / d * (d - k + 1)) : 1.0;
    case MoveType::kAdd:
      if (k == d) throw std::invalid_argument("add move needs k < d");
      return rescaled ? std::min(1.0, d / std::numbers::e / (d - k))
                      : std::min(1.0, 1.0 / (d - k));
  }
  return 1.0;
}

Completions ScoreCompletions(const ExtendedWeightCtx& ctx, ProposalKind kind,
                             std::span<const int> rest, ScoringMode mode) {
  if (static_cast<int>(rest.size()) != ctx.d() - 1 ||
      !IsValidSubset(rest, ctx.universe())) {
    throw std::invalid_argument("rest must be a sorted (d-1)-subset of [n+d]");
  }
  std::vector<double> scratch;
  Completions out;
  ScoreInto(ctx, kind, rest, mode, scratch, out);
  return out;
}

ExtendedState BaseExchangePropose(const ExtendedWeightCtx& ctx,
                                  std::span<const int> s, Rng& rng,
                                  const SamplerConfig& cfg) {
  ValidateState(ctx, s);
  const std::size_t drop = rng.Below(s.size());
  Subset rest(s.begin(), s.end());
  rest.erase(rest.begin() + drop);
  std::vector<double> scratch;
  Completions comps;
  ScoreInto(ctx, cfg.proposal, rest, cfg.scoring, scratch, comps);
  return InsertSorted(rest, comps.candidates[DrawCandidate(comps.log_weights, rng)]);
}

StepResult MhStep(const ExtendedWeightCtx& ctx, std::span<const int> s,
                  Rng& rng, const SamplerConfig& cfg) {
  ExtendedState t = BaseExchangePropose(ctx, s, rng, cfg);
  const int k = ctx.GroundCount(s);
  const double a = AcceptanceProbability(
      ctx.d(), k, Classify(k, ctx.GroundCount(t)), cfg.proposal);
  if (rng.Uniform() < a) return {std::move(t), true};
  return {ExtendedState(s.begin(), s.end()), false};
}

MhChain::MhChain(const ExtendedWeightCtx& ctx, ExtendedState start, Rng rng,
                 SamplerConfig cfg)
    : ctx_(&ctx), state_(std::move(start)), rng_(rng), cfg_(cfg) {
  ValidateState(ctx, state_);
  k_ = ctx.GroundCount(state_);
  log_weight_ = ctx.base().LogWeight(std::span<const int>(state_).first(k_));
}

double MhChain::statistic() const {
  return cfg_.statistic == ChainStatistic::kLogWeight ? log_weight_
                                                      : static_cast<double>(k_);
}

bool MhChain::Step() {
  thread_local std::vector<double> scratch;
  thread_local Completions comps;
  thread_local Subset rest;
  const int d = ctx_->d();
  const std::size_t drop = rng_.Below(static_cast<std::uint64_t>(d));
  rest.assign(state_.begin(), state_.end());
  rest.erase(rest.begin() + drop);
  ScoreInto(*ctx_, cfg_.proposal, rest, cfg_.scoring, scratch, comps);
  const std::size_t c = DrawCandidate(comps.log_weights, rng_);
  const int j = comps.candidates[c];
  const int kt = ctx_->GroundCount(rest) + (j < ctx_->n() ? 1 : 0);
  const double a =
      AcceptanceProbability(d, k_, Classify(k_, kt), cfg_.proposal);
  if (!(rng_.Uniform() < a)) return false;
  state_.assign(rest.begin(), rest.end());
  state_.insert(std::upper_bound(state_.begin(), state_.end(), j), j);
  log_weight_ = comps.log_weights[c] - ctx_->ProposalOffset(cfg_.proposal, kt);
  k_ = kt;
  return true;
}

void ValidateState(const ExtendedWeightCtx& ctx, std::span<const int> s0) {
  if (static_cast<int>(s0.size()) != ctx.d() ||
      !IsValidSubset(s0, ctx.universe())) {
    throw std::invalid_argument("state must be a sorted d-subset of [n+d]");
  }
  if (LogNuSh(ctx, s0) == kNegInf) {
    throw std::invalid_argument("state has zero weight");
  }
}

ChainTrace RunChain(const ExtendedWeightCtx& ctx, const ExtendedState& s0,
                    std::int64_t steps, std::uint64_t seed,
                    const SamplerConfig& cfg) {
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  MhChain chain(ctx, s0, Rng(seed), cfg);
  ChainTrace trace;
  trace.seed = seed;
  auto record = [&](bool accepted) {
    if (cfg.keep_states) trace.states.push_back(chain.state());
    trace.k.push_back(chain.ground_count());
    trace.stats.push_back(chain.statistic());
    trace.accepted.push_back(accepted);
  };
  record(true);
  for (std::int64_t t = 0; t < steps; ++t) record(chain.Step());
  return trace;
}

ExtendedState DefaultInitialState(const ExtendedWeightCtx& ctx) {
  const SubsetWeightFn& nu = ctx.base();
  const int n = ctx.n();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> single(n);
  for (int e = 0; e < n; ++e) single[e] = nu.LogWeight(std::span<const int>(&e, 1));
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return single[a] > single[b]; });
  Subset top(order.begin(), order.begin() + std::min(n, ctx.d()));
  std::sort(top.begin(), top.end());
  if (nu.LogWeight(top) != kNegInf) return PadWithDummies(ctx, top);
  if (nu.LogWeight(Subset{}) != kNegInf) return PadWithDummies(ctx, {});
  // Last resort: the first positive-weight set by size, then lexicographic.
  Subset found;
  bool ok = false;
  if (n <= 20) {
    ForEachSubsetUpTo(n, std::min(n, ctx.d()), [&](const Subset& s) {
      if (nu.LogWeight(s) == kNegInf) return true;
      found = s;
      ok = true;
      return false;
    });
  }
  if (!ok) throw std::invalid_argument("no positive-weight initial state found");
  return PadWithDummies(ctx, found);
}

ExtendedState RandomInitialState(const ExtendedWeightCtx& ctx, Rng& rng) {
  const SubsetWeightFn& nu = ctx.base();
  const int n = ctx.n();
  std::vector<int> perm(n);
  for (int size = std::min(n, ctx.d()); size >= 0; --size) {
    for (int attempt = 0; attempt < 100; ++attempt) {
      std::iota(perm.begin(), perm.end(), 0);
      for (int t = 0; t < size; ++t) {
        const int u = t + static_cast<int>(rng.Below(static_cast<std::uint64_t>(n - t)));
        std::swap(perm[t], perm[u]);
      }
      Subset s(perm.begin(), perm.begin() + size);
      std::sort(s.begin(), s.end());
      if (nu.LogWeight(s) != kNegInf) return PadWithDummies(ctx, s);
    }
  }
  return DefaultInitialState(ctx);
}

Subset Marginalize(std::span<const int> s, int n) {
  Subset out;
  for (int e : s) {
    if (e < n) out.push_back(e);
  }
  return out;
}

DistributionTable ExactDistribution(const SubsetWeightFn& nu) {
  if (nu.n() > 20) throw std::invalid_argument("exact distribution needs n <= 20");
  std::vector<Subset> sets;
  std::vector<double> logw;
  ForEachSubsetUpTo(nu.n(), std::min(nu.n(), nu.d_cap()), [&](const Subset& s) {
    const double lw = nu.LogWeight(s);
    if (lw != kNegInf) {
      sets.push_back(s);
      logw.push_back(lw);
    }
    return true;
  });
  return Normalize(std::move(sets), logw);
}

DistributionTable ExactProposalMeasure(const ExtendedWeightCtx& ctx,
                                       ProposalKind kind) {
  if (Binomial(ctx.universe(), ctx.d()) > 1000000) {
    throw std::invalid_argument("enumeration needs C(n+d, d) <= 1e6");
  }
  std::vector<Subset> sets;
  std::vector<double> logw;
  ForEachCombination(ctx.universe(), ctx.d(), [&](const Subset& s) {
    const double lw = LogProposalWeight(ctx, kind, s);
    if (lw != kNegInf) {
      sets.push_back(s);
      logw.push_back(lw);
    }
    return true;
  });
  return Normalize(std::move(sets), logw);
}

DistributionTable ExactNuSh(const ExtendedWeightCtx& ctx) {
  if (Binomial(ctx.universe(), ctx.d()) > 1000000) {
    throw std::invalid_argument("enumeration needs C(n+d, d) <= 1e6");
  }
  std::vector<Subset> sets;
  std::vector<double> logw;
  ForEachCombination(ctx.universe(), ctx.d(), [&](const Subset& s) {
    const double lw = LogNuSh(ctx, s);
    if (lw != kNegInf) {
      sets.push_back(s);
      logw.push_back(lw);
    }
    return true;
  });
  return Normalize(std::move(sets), logw);
}

int TransitionMatrix::Index(std::span<const int> s) const {
  const auto it = std::lower_bound(
      states.begin(), states.end(), s, [](const ExtendedState& a, std::span<const int> b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
      });
  if (it == states.end() || !std::equal(it->begin(), it->end(), s.begin(), s.end())) {
    return -1;
  }
  return static_cast<int>(it - states.begin());
}

double TransitionMatrix::At(int from, int to) const {
  for (const auto& [col, prob] : rows[from]) {
    if (col == to) return prob;
  }
  return 0.0;
}

TransitionMatrix BuildTransitionMatrixSerial(const ExtendedWeightCtx& ctx,
                                             ProposalKind kind) {
  TransitionMatrix p = TransitionStates(ctx);
  for (std::size_t r = 0; r < p.states.size(); ++r) {
    p.rows[r] = TransitionRow(ctx, kind, p, static_cast<int>(r));
  }
  return p;
}

TransitionMatrix BuildTransitionMatrix(const ExtendedWeightCtx& ctx,
                                       ProposalKind kind) {
  TransitionMatrix p = TransitionStates(ctx);
  const int count = static_cast<int>(p.states.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (int r = 0; r < count; ++r) p.rows[r] = TransitionRow(ctx, kind, p, r);
  return p;
}

std::vector<double> StationaryDistribution(const TransitionMatrix& p,
                                           double tol, int max_iters) {
  const std::size_t m = p.states.size();
  if (m == 0) throw std::invalid_argument("empty state space");
  std::vector<double> pi(m, 1.0 / static_cast<double>(m));
  std::vector<double> next(m);
  for (int it = 0; it < max_iters; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t r = 0; r < m; ++r) {
      for (const auto& [c, prob] : p.rows[r]) next[c] += pi[r] * prob;
    }
    double diff = 0.0;
    for (std::size_t t = 0; t < m; ++t) diff += std::abs(next[t] - pi[t]);
    pi.swap(next);
    if (diff <= tol) return pi;
  }
  throw std::runtime_error("power iteration did not converge");
}

}  // namespace slc
