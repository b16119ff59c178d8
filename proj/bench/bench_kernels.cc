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

// Serial or reference kernels against their parallel or incremental
// counterparts.

#include <memory>
#include <vector>

#include <benchmark/benchmark.h>

#include "slc/distributions.h"
#include "slc/greedy.h"
#include "slc/sampler.h"
#include "slc/transforms.h"
#include "slc/verify.h"

namespace slc {
namespace {

std::shared_ptr<const KernelSpec> Kernel(int n) {
  return std::make_shared<const KernelSpec>(RandomPsd(n, SpectrumKind::kSmooth, 17));
}

// Scoring every completion of one exchange move on n = range(0), d = range(1).
void BM_ScoreCompletions(benchmark::State& state, ScoringMode mode) {
  const int n = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  const ExtendedWeightCtx ctx(SubsetWeightFn::SqrtDeterminant(Kernel(n), d));
  std::vector<int> rest;
  for (int i = 0; i < d - 1; ++i) rest.push_back(i);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ScoreCompletions(ctx, ProposalKind::kRescaled, rest, mode));
  }
}
BENCHMARK_CAPTURE(BM_ScoreCompletions, reference, ScoringMode::kReference)
    ->Args({50, 10})->Args({50, 20})->Args({250, 20});
BENCHMARK_CAPTURE(BM_ScoreCompletions, incremental, ScoringMode::kIncremental)
    ->Args({50, 10})->Args({50, 20})->Args({250, 20});

void BM_TransitionMatrix(benchmark::State& state, bool parallel) {
  const ExtendedWeightCtx ctx(SubsetWeightFn::SqrtDeterminant(Kernel(8), 4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(parallel ? BuildTransitionMatrix(ctx)
                                      : BuildTransitionMatrixSerial(ctx));
  }
}
BENCHMARK_CAPTURE(BM_TransitionMatrix, serial, false);
BENCHMARK_CAPTURE(BM_TransitionMatrix, parallel, true);

void BM_BruteForce(benchmark::State& state, bool parallel) {
  const SubsetWeightFn nu = SubsetWeightFn::SqrtDeterminant(Kernel(16), 16);
  const SetFunction f = LogWeightFunction(nu);
  for (auto _ : state) {
    benchmark::DoNotOptimize(parallel ? BruteForceOpt(f, 16, 6) : BruteForceOptSerial(f, 16, 6));
  }
}
BENCHMARK_CAPTURE(BM_BruteForce, serial, false);
BENCHMARK_CAPTURE(BM_BruteForce, parallel, true);

void BM_SlcCheck(benchmark::State& state, bool parallel) {
  const SubsetWeightFn nu = SubsetWeightFn::SqrtDeterminant(Kernel(6), 3);
  const SparsePolynomial p = Polarize(ScaledHomogenize(GeneratingPolynomial(nu), {3, 1.0}), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(parallel ? IsSlcHomogeneous(p) : IsSlcHomogeneousSerial(p));
  }
}
BENCHMARK_CAPTURE(BM_SlcCheck, serial, false);
BENCHMARK_CAPTURE(BM_SlcCheck, parallel, true);

}  // namespace
}  // namespace slc

BENCHMARK_MAIN();
