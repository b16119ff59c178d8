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
#include <map>
#include <memory>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "test_util.h"

namespace slc {
namespace {

using std::numbers::e;

// n = 1, d = 1, nu(empty) = 1, nu({0}) = 2.
SubsetWeightFn TinyTable() { return SubsetWeightFn::FromTable(1, 1, {{0, 1.0}, {1, 2.0}}); }

// Independent oracle for the proposal kernel: Q(S, T) summed over the
// dropped element, with completions weighted by LogProposalWeight.
std::map<Subset, double> ProposalRow(const ExtendedWeightCtx& ctx, ProposalKind kind,
                                     const Subset& s) {
  std::map<Subset, double> row;
  for (int drop : s) {
    const Subset rest = Without(s, drop);
    std::vector<std::pair<Subset, double>> comps;
    double total = 0.0;
    for (int j = 0; j < ctx.universe(); ++j) {
      if (Contains(rest, j)) continue;
      const Subset t = With(rest, j);
      const double w = std::exp(LogProposalWeight(ctx, kind, t));
      comps.emplace_back(t, w);
      total += w;
    }
    for (const auto& [t, w] : comps) row[t] += w / total / static_cast<double>(s.size());
  }
  return row;
}

MoveType Classify(const ExtendedWeightCtx& ctx, const Subset& s, const Subset& t) {
  const int ks = ctx.GroundCount(s);
  const int kt = ctx.GroundCount(t);
  return kt < ks ? MoveType::kRemove : kt > ks ? MoveType::kAdd : MoveType::kStay;
}

std::vector<ExtendedWeightCtx> SmallInstances() {
  std::vector<ExtendedWeightCtx> out;
  for (int n = 1; n <= 6; ++n) {
    for (int d = 1; d <= std::min(3, n); ++d) {
      out.emplace_back(SubsetWeightFn::Uniform(n, d));
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        out.emplace_back(SubsetWeightFn::SqrtDeterminant(
            testing::RandomKernel(n, 1000 * n + 10 * d + seed), d, seed % 2 ? 0.5 : 1.0));
      }
    }
  }
  return out;
}

TEST(AcceptanceProbabilityTest, Examples) {
  EXPECT_NEAR(AcceptanceProbability(10, 3, MoveType::kAdd), (10 / e) / 7, 1e-15);
  EXPECT_NEAR(AcceptanceProbability(10, 3, MoveType::kAdd), 0.52554, 1e-5);
  EXPECT_NEAR(AcceptanceProbability(10, 10, MoveType::kRemove), e / 10, 1e-15);
  EXPECT_NEAR(AcceptanceProbability(10, 10, MoveType::kRemove), 0.27183, 1e-5);
  for (int d = 1; d <= 6; ++d) {
    for (int k = 0; k <= d; ++k) EXPECT_EQ(AcceptanceProbability(d, k, MoveType::kStay), 1.0);
  }
  EXPECT_EQ(AcceptanceProbability(2, 2, MoveType::kRemove), 1.0);
  EXPECT_THROW(AcceptanceProbability(4, 4, MoveType::kAdd), std::invalid_argument);
  EXPECT_THROW(AcceptanceProbability(4, 0, MoveType::kRemove), std::invalid_argument);
}

TEST(AcceptanceProbabilityTest, PlainVariant) {
  EXPECT_EQ(AcceptanceProbability(10, 3, MoveType::kRemove, ProposalKind::kPlain), 1.0);
  EXPECT_NEAR(AcceptanceProbability(10, 3, MoveType::kAdd, ProposalKind::kPlain), 1.0 / 7,
              1e-15);
  EXPECT_EQ(AcceptanceProbability(10, 9, MoveType::kAdd, ProposalKind::kPlain), 1.0);
}

TEST(MarginalizeTest, Examples) {
  EXPECT_EQ(Marginalize(Subset{0, 3}, 3), (Subset{0}));
  EXPECT_TRUE(Marginalize(Subset{3, 4}, 3).empty());
  EXPECT_EQ(Marginalize(Subset{0, 1}, 3), (Subset{0, 1}));
}

TEST(ExactDistributionTest, Examples) {
  const DistributionTable t = ExactDistribution(TinyTable());
  EXPECT_NEAR(t.at(Subset{}), 1.0 / 3, 1e-15);
  EXPECT_NEAR(t.at(Subset{0}), 2.0 / 3, 1e-15);

  const SubsetWeightFn flat = SubsetWeightFn::SqrtDeterminant(testing::RandomKernel(2, 4), 2, 0.0);
  const DistributionTable u = ExactDistribution(flat);
  EXPECT_EQ(u.size(), 4u);
  for (const auto& [s, p] : u) EXPECT_NEAR(p, 0.25, 1e-15);

  const DistributionTable seven = ExactDistribution(SubsetWeightFn::Uniform(3, 2));
  EXPECT_EQ(seven.size(), 7u);
  double sum = 0;
  for (const auto& [s, p] : seven) {
    EXPECT_NEAR(p, 1.0 / 7, 1e-15);
    sum += p;
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(ScoreCompletionsTest, MatchesProposalWeights) {
  const ExtendedWeightCtx ctx(SubsetWeightFn::Uniform(3, 2));
  const Subset rest = {0};
  const Completions c = ScoreCompletions(ctx, ProposalKind::kRescaled, rest,
                                         ScoringMode::kReference);
  EXPECT_EQ(c.candidates, (std::vector<int>{1, 2, 3, 4}));
  for (std::size_t t = 0; t < c.candidates.size(); ++t) {
    EXPECT_NEAR(c.log_weights[t],
                LogProposalWeight(ctx, ProposalKind::kRescaled, With(rest, c.candidates[t])),
                1e-12);
  }
}

TEST(ScoreCompletionsProperty, IncrementalMatchesReference) {
  Rng rng(61);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng.Below(10));
    const int d = 1 + static_cast<int>(rng.Below(static_cast<std::uint64_t>(n)));
    const double alpha = testing::UniformIn(rng, 0, 1);
    const ExtendedWeightCtx ctx(
        SubsetWeightFn::SqrtDeterminant(testing::RandomKernel(n, rng.NextU64()), d, alpha));
    const ExtendedState s = RandomInitialState(ctx, rng);
    const Subset rest = Without(s, s[rng.Below(s.size())]);
    for (ProposalKind kind : {ProposalKind::kRescaled, ProposalKind::kPlain}) {
      const Completions ref = ScoreCompletions(ctx, kind, rest, ScoringMode::kReference);
      const Completions inc = ScoreCompletions(ctx, kind, rest, ScoringMode::kIncremental);
      ASSERT_EQ(ref.candidates, inc.candidates);
      for (std::size_t t = 0; t < ref.candidates.size(); ++t) {
        if (ref.log_weights[t] == kNegInf) {
          EXPECT_EQ(inc.log_weights[t], kNegInf);
        } else {
          EXPECT_NEAR(inc.log_weights[t], ref.log_weights[t],
                      1e-9 * (1 + std::abs(ref.log_weights[t])));
        }
      }
    }
  }
}

TEST(BaseExchangeProposeTest, EmpiricalMatchesProposalKernel) {
  const ExtendedWeightCtx ctx(SubsetWeightFn::Uniform(3, 2));
  const Subset s = {0, 3};
  const std::map<Subset, double> exact = ProposalRow(ctx, ProposalKind::kRescaled, s);
  std::map<Subset, double> freq;
  Rng rng(62);
  const int draws = 100000;
  for (int t = 0; t < draws; ++t) freq[BaseExchangePropose(ctx, s, rng)] += 1.0 / draws;
  double l1 = 0.0;
  for (const auto& [t, p] : exact) l1 += std::abs(p - freq[t]);
  for (const auto& [t, p] : freq) {
    if (!exact.count(t)) l1 += p;
  }
  EXPECT_LT(0.5 * l1, 0.01);
}

TEST(BaseExchangeProposeTest, DegreeOneResamplesFromMu) {
  const ExtendedWeightCtx ctx(
      SubsetWeightFn::SqrtDeterminant(testing::RandomKernel(4, 63), 1));
  const DistributionTable mu = ExactProposalMeasure(ctx, ProposalKind::kRescaled);
  for (const auto& [s, ps] : mu) {
    const std::map<Subset, double> row = ProposalRow(ctx, ProposalKind::kRescaled, s);
    for (const auto& [t, q] : row) EXPECT_NEAR(q, mu.at(t), 1e-12);
  }
}

TEST(RunChainTest, ZeroStepsAndDeterminism) {
  const ExtendedWeightCtx ctx(SubsetWeightFn::SqrtDeterminant(testing::RandomKernel(6, 64), 3));
  const ExtendedState s0 = DefaultInitialState(ctx);
  const ChainTrace zero = RunChain(ctx, s0, 0, 5);
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(zero.states[0], s0);
  EXPECT_TRUE(zero.accepted[0]);

  const ChainTrace a = RunChain(ctx, s0, 500, 9);
  const ChainTrace b = RunChain(ctx, s0, 500, 9);
  EXPECT_EQ(a.states, b.states);
  EXPECT_EQ(a.stats, b.stats);
  EXPECT_EQ(a.accepted, b.accepted);
  EXPECT_EQ(a.size(), 501u);
  EXPECT_NE(RunChain(ctx, s0, 500, 10).states, a.states);
}

TEST(RunChainTest, RejectsInvalidStart) {
  const ExtendedWeightCtx ctx(SubsetWeightFn::SqrtDeterminant(
      std::make_shared<const KernelSpec>(DiagonalKernel(std::vector<double>{1, 0, 2})), 2));
  EXPECT_THROW(RunChain(ctx, Subset{0}, 1, 0), std::invalid_argument);
  EXPECT_THROW(RunChain(ctx, Subset{3, 0}, 1, 0), std::invalid_argument);
  EXPECT_THROW(RunChain(ctx, Subset{1, 3}, 1, 0), std::invalid_argument);
}

TEST(RunChainTest, UniformGroundFrequencies) {
  const ExtendedWeightCtx ctx(SubsetWeightFn::Uniform(3, 2));
  const ChainTrace tr = RunChain(ctx, DefaultInitialState(ctx), 1000000, 65);
  std::map<Subset, double> freq;
  for (const ExtendedState& s : tr.states) freq[Marginalize(s, 3)] += 1.0 / tr.size();
  EXPECT_EQ(freq.size(), 7u);
  for (const auto& [s, p] : freq) EXPECT_NEAR(p, 1.0 / 7, 0.005) << FormatSubset(s);
}

TEST(RunChainTest, StaysOnSingleSupportSet) {
  const ExtendedWeightCtx ctx(SubsetWeightFn::FromTable(3, 3, {{0b011, 4.0}}));
  const ChainTrace tr = RunChain(ctx, Subset{0, 1, 3}, 2000, 66);
  for (const ExtendedState& s : tr.states) EXPECT_EQ(Marginalize(s, 3), (Subset{0, 1}));
}

TEST(RunChainProperty, NeverLeavesSupport) {
  // Rank-2 kernel: every ground set of size 3 has zero weight.
  const auto kernel = std::make_shared<const KernelSpec>(
      RandomPsd(6, std::vector<double>{3, 1, 0, 0, 0, 0}, 67));
  const ExtendedWeightCtx ctx(SubsetWeightFn::SqrtDeterminant(kernel, 3));
  const ChainTrace tr = RunChain(ctx, DefaultInitialState(ctx), 20000, 68);
  for (const ExtendedState& s : tr.states) {
    ASSERT_EQ(s.size(), 3u);
    ASSERT_TRUE(IsValidSubset(s, ctx.universe()));
    ASSERT_NE(LogNuSh(ctx, s), kNegInf);
    ASSERT_LE(ctx.GroundCount(s), 2);
  }
}

TEST(MhStepTest, SameGroundCountAlwaysAccepted) {
  const ExtendedWeightCtx ctx(SubsetWeightFn::SqrtDeterminant(testing::RandomKernel(5, 69), 3));
  Rng rng(70);
  ExtendedState s = DefaultInitialState(ctx);
  for (int t = 0; t < 5000; ++t) {
    Rng probe = rng;
    const ExtendedState proposal = BaseExchangePropose(ctx, s, probe);
    const StepResult r = MhStep(ctx, s, rng);
    if (ctx.GroundCount(proposal) == ctx.GroundCount(s)) {
      EXPECT_TRUE(r.accepted);
      EXPECT_EQ(r.state, proposal);
    }
    if (!r.accepted) EXPECT_EQ(r.state, s);
    s = r.state;
  }
}

TEST(TransitionMatrixTest, TinyExample) {
  const ExtendedWeightCtx ctx(TinyTable());
  const TransitionMatrix p = BuildTransitionMatrix(ctx);
  ASSERT_EQ(p.states.size(), 2u);
  const std::vector<double> pi = StationaryDistribution(p);
  EXPECT_NEAR(pi[p.Index(Subset{0})], 2.0 / 3, 1e-12);
  EXPECT_NEAR(pi[p.Index(Subset{1})], 1.0 / 3, 1e-12);
  EXPECT_EQ(p.Index(Subset{0, 1}), -1);
}

// Off-diagonal entries equal Q(S, T) times an acceptance that depends only
// on (d, k, move); rows are stochastic and satisfy detailed balance.
TEST(TransitionMatrixProperty, KernelStructureAndReversibility) {
  for (const ExtendedWeightCtx& ctx : SmallInstances()) {
    for (ProposalKind kind : {ProposalKind::kRescaled, ProposalKind::kPlain}) {
      const TransitionMatrix p = BuildTransitionMatrix(ctx, kind);
      const DistributionTable sh = ExactNuSh(ctx);
      ASSERT_EQ(p.states.size(), sh.size());
      for (std::size_t a = 0; a < p.states.size(); ++a) {
        const Subset& s = p.states[a];
        double row_sum = 0.0;
        for (const auto& [b, v] : p.rows[a]) row_sum += v;
        EXPECT_NEAR(row_sum, 1.0, 1e-12);
        const std::map<Subset, double> q = ProposalRow(ctx, kind, s);
        for (const auto& [t, qv] : q) {
          if (t == s || qv == 0.0) continue;
          const double acc =
              AcceptanceProbability(ctx.d(), ctx.GroundCount(s), Classify(ctx, s, t), kind);
          const int b = p.Index(t);
          ASSERT_GE(b, 0);
          EXPECT_NEAR(p.At(static_cast<int>(a), b), qv * acc, 1e-12);
          EXPECT_NEAR(sh.at(s) * p.At(static_cast<int>(a), b),
                      sh.at(t) * p.At(b, static_cast<int>(a)), 1e-10);
        }
      }
    }
  }
}

TEST(TransitionMatrixProperty, StationaryIsNuSh) {
  for (const ExtendedWeightCtx& ctx : SmallInstances()) {
    const TransitionMatrix p = BuildTransitionMatrix(ctx);
    const std::vector<double> pi = StationaryDistribution(p, 1e-13);
    const DistributionTable sh = ExactNuSh(ctx);
    double l1 = 0.0;
    for (std::size_t a = 0; a < p.states.size(); ++a) l1 += std::abs(pi[a] - sh.at(p.states[a]));
    EXPECT_LE(l1, 1e-8) << "n=" << ctx.n() << " d=" << ctx.d();
  }
}

TEST(TransitionMatrixProperty, SerialAndParallelAgree) {
  const ExtendedWeightCtx ctx(SubsetWeightFn::SqrtDeterminant(testing::RandomKernel(7, 71), 3));
  const TransitionMatrix a = BuildTransitionMatrix(ctx);
  const TransitionMatrix b = BuildTransitionMatrixSerial(ctx);
  EXPECT_EQ(a.states, b.states);
  EXPECT_EQ(a.rows, b.rows);
}

// With d = 1 both variants share the stationary law nu_sh.
TEST(TransitionMatrixProperty, DegreeOneVariantsShareTarget) {
  const ExtendedWeightCtx ctx(SubsetWeightFn::SqrtDeterminant(testing::RandomKernel(5, 72), 1));
  const std::vector<double> a = StationaryDistribution(BuildTransitionMatrix(ctx));
  const std::vector<double> b =
      StationaryDistribution(BuildTransitionMatrix(ctx, ProposalKind::kPlain));
  for (std::size_t t = 0; t < a.size(); ++t) EXPECT_NEAR(a[t], b[t], 1e-10);
}

TEST(TransitionMatrixTest, RejectsLargeInstances) {
  EXPECT_THROW(BuildTransitionMatrix(ExtendedWeightCtx(SubsetWeightFn::Uniform(20, 5))),
               std::invalid_argument);
}

TEST(InitialStateTest, DefaultIsValid) {
  for (const ExtendedWeightCtx& ctx : SmallInstances()) {
    const ExtendedState s = DefaultInitialState(ctx);
    EXPECT_NO_THROW(ValidateState(ctx, s));
    Rng rng(73);
    EXPECT_NO_THROW(ValidateState(ctx, RandomInitialState(ctx, rng)));
  }
}

}  // namespace
}  // namespace slc
