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

// Mode finding for gamma-weakly (log-)submodular set functions: distorted
// greedy under a cardinality constraint, randomized double greedy, plain
// greedy for increasing functions, and an exhaustive oracle.
//
// Ties are broken toward the smallest element index, and between sets toward
// the lexicographically smaller set.

#ifndef SLC_GREEDY_H_
#define SLC_GREEDY_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "slc/distributions.h"
#include "slc/subset.h"

namespace slc {

using SetFunction = std::function<double(const Subset&)>;

// log nu as a set function (may return -inf). Holds its own copy of nu.
SetFunction LogWeightFunction(const SubsetWeightFn& nu);
// nu itself, exp of the log weight.
SetFunction WeightFunction(const SubsetWeightFn& nu);

// rho = eta - c with c_e = max{rho([n] - e) - rho([n]), 0}. rho(empty) is
// shifted to 0 (with a warning on stderr) when it is not already. If rho([n])
// or rho([n] - e) is not finite, c_e = 0.
class DecomposedObjective {
 public:
  DecomposedObjective(SetFunction rho, int n);

  int n() const { return n_; }
  double shift() const { return shift_; }
  double Rho(const Subset& s) const { return rho_(s) - shift_; }
  double Cost(int e) const { return costs_[e]; }
  double Cost(const Subset& s) const;
  double Eta(const Subset& s) const { return Rho(s) + Cost(s); }
  const std::vector<double>& costs() const { return costs_; }

 private:
  SetFunction rho_;
  int n_;
  double shift_ = 0.0;
  std::vector<double> costs_;
};

struct GreedyStep {
  int element = -1;    // -1 when nothing was considered
  double gain = 0.0;   // the score the step maximized
  bool accepted = false;
};

struct GreedyResult {
  Subset selected;
  double value = 0.0;
  std::vector<GreedyStep> trace;
};

// 4 (1 - 1/d); throws for d < 2.
double GammaWeak(int d);

struct WeakSubmodularCheck {
  bool holds = true;
  double worst_gap = 0.0;  // max of lhs - rhs in log space; -inf if no quadruple
};

// Checks log nu(S) + log nu(S+i+j) <= log gamma + log nu(S+i) + log nu(S+j)
// over all positive-weight quadruples, tolerance 1e-9. Requires n <= 14.
WeakSubmodularCheck CheckWeakLogSubmodular(const SubsetWeightFn& nu, double gamma);

// Largest additive violation of rho(S+i) - rho(S) >= rho(S+i+j) - rho(S+j)
// over finite quadruples: the smallest gamma making rho gamma-weakly
// submodular. Requires n <= 14.
double EmpiricalAdditiveGamma(const SetFunction& rho, int n);

// Algorithm with distorted objective Phi_i(S) = (1-1/k)^{k-i} eta(S) - c(S).
// At step i (0-based) picks e maximizing
//   (1-1/k)^{k-i-1} (rho(S+e) - rho(S) + c_e) - c_e
// and adds it iff that is strictly positive.
GreedyResult DistortedGreedy(const DecomposedObjective& obj, int k);

// Per-iteration quantities for checking the telescoping identity
//   Phi_{i+1}(S_{i+1}) - Phi_i(S_i) = Psi_i + (1/k)(1-1/k)^{k-i-1} eta(S_i).
struct DistortedStepAudit {
  double phi_before = 0.0;  // Phi_i(S_i)
  double phi_after = 0.0;   // Phi_{i+1}(S_{i+1})
  double psi = 0.0;         // max(0, best increment)
  double eta_before = 0.0;  // eta(S_i)
};
GreedyResult DistortedGreedy(const DecomposedObjective& obj, int k,
                             std::vector<DistortedStepAudit>* audit);

// Distorted greedy on rho = log nu after dividing nu by nu(empty). value is
// nu(R) in the original scale. Throws if nu(empty) is 0.
GreedyResult DistortedGreedyLog(const SubsetWeightFn& nu, int k);

// Randomized double greedy with additive slack gamma. Returns X_n; value is
// f(X_n).
GreedyResult DoubleGreedy(const SetFunction& f, int n, double gamma,
                          std::uint64_t seed);

// k rounds of argmax f(S + i).
GreedyResult MonotoneGreedy(const SetFunction& f, int n, int k);

// Exhaustive argmax over |S| <= k; n <= 20. Sets with non-finite value are
// skipped unless every set is, in which case the empty set is returned.
GreedyResult BruteForceOpt(const SetFunction& f, int n, int k);
// Serial reference for the same search.
GreedyResult BruteForceOptSerial(const SetFunction& f, int n, int k);

// Lower bounds from the approximation guarantees.
//   distorted: (1-1/e)(eta(OPT) - l(l-1) gamma / 2) - c(OPT), l = |OPT|
double DistortedBound(const DecomposedObjective& obj, const Subset& opt,
                      double gamma);
//   monotone:  (1 - e^{-l/k}) f(OPT) - k(k-1)/2 (1 - (1-1/k)^l) gamma
double MonotoneBound(double f_opt, int k, int l, double gamma);
//   double:    f(OPT)/2 - (3/16) n (n-1) gamma
double DoubleGreedyBound(double f_opt, int n, double gamma);

}  // namespace slc

#endif  // SLC_GREEDY_H_
