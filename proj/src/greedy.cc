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

#include "slc/greedy.h"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "slc/rng.h"

namespace slc {
namespace {

Subset FullSet(int n) {
  Subset s(n);
  std::iota(s.begin(), s.end(), 0);
  return s;
}

// f over every subset of [n], indexed by mask.
std::vector<double> Tabulate(const SetFunction& f, int n) {
  std::vector<double> table(std::size_t{1} << n);
  for (std::uint64_t m = 0; m < table.size(); ++m) table[m] = f(FromMask(m));
  return table;
}

// max over S, i < j outside S of f(S) + f(S+i+j) - f(S+i) - f(S+j), taken
// over quadruples where all four values are finite. -inf if there are none.
double WorstSupermodularGap(const std::vector<double>& f, int n) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::uint64_t m = 0; m < f.size(); ++m) {
    if (!std::isfinite(f[m])) continue;
    for (int i = 0; i < n; ++i) {
      const std::uint64_t bi = std::uint64_t{1} << i;
      if ((m & bi) || !std::isfinite(f[m | bi])) continue;
      for (int j = i + 1; j < n; ++j) {
        const std::uint64_t bj = std::uint64_t{1} << j;
        if ((m & bj) || !std::isfinite(f[m | bj]) || !std::isfinite(f[m | bi | bj])) {
          continue;
        }
        worst = std::max(worst, f[m] + f[m | bi | bj] - f[m | bi] - f[m | bj]);
      }
    }
  }
  return worst;
}

std::vector<Subset> AllSubsetsUpTo(int n, int k) {
  std::vector<Subset> out;
  ForEachSubsetUpTo(n, std::min(n, k), [&](const Subset& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

// Highest finite value, ties to the lexicographically smallest set.
GreedyResult PickBest(const std::vector<Subset>& sets,
                      const std::vector<double>& values) {
  GreedyResult best;
  bool found = false;
  for (std::size_t t = 0; t < sets.size(); ++t) {
    const double v = values[t];
    if (std::isnan(v) || v == kNegInf) continue;
    if (!found || v > best.value || (v == best.value && sets[t] < best.selected)) {
      best.selected = sets[t];
      best.value = v;
      found = true;
    }
  }
  if (!found) {
    best.selected.clear();
    best.value = values.empty() ? kNegInf : values[0];
  }
  return best;
}

void CheckBruteForce(int n, int k) {
  if (n < 0 || n > 20) throw std::invalid_argument("brute force needs 0 <= n <= 20");
  if (k < 0) throw std::invalid_argument("k must be >= 0");
}

}  // namespace

SetFunction LogWeightFunction(const SubsetWeightFn& nu) {
  return [nu](const Subset& s) { return nu.LogWeight(s); };
}

SetFunction WeightFunction(const SubsetWeightFn& nu) {
  return [nu](const Subset& s) { return std::exp(nu.LogWeight(s)); };
}

DecomposedObjective::DecomposedObjective(SetFunction rho, int n)
    : rho_(std::move(rho)), n_(n), costs_(n, 0.0) {
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  const double empty = rho_(Subset{});
  if (!std::isfinite(empty)) {
    throw std::invalid_argument("rho(empty) must be finite");
  }
  if (empty != 0.0) {
    std::cerr << "warning: shifting objective by -rho(empty) = " << -empty << "\n";
    shift_ = empty;
  }
  const Subset full = FullSet(n);
  const double rho_full = Rho(full);
  for (int e = 0; e < n; ++e) {
    const double without = Rho(Without(full, e));
    if (std::isfinite(rho_full) && std::isfinite(without)) {
      costs_[e] = std::max(without - rho_full, 0.0);
    }
  }
}

double DecomposedObjective::Cost(const Subset& s) const {
  double c = 0.0;
  for (int e : s) c += costs_[e];
  return c;
}

double GammaWeak(int d) {
  if (d < 2) throw std::invalid_argument("gamma_weak needs d >= 2");
  return 4.0 * (1.0 - 1.0 / d);
}

WeakSubmodularCheck CheckWeakLogSubmodular(const SubsetWeightFn& nu, double gamma) {
  if (nu.n() > 14) throw std::invalid_argument("exhaustive check needs n <= 14");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  const std::vector<double> logw = Tabulate(LogWeightFunction(nu), nu.n());
  WeakSubmodularCheck out;
  out.worst_gap = WorstSupermodularGap(logw, nu.n()) - std::log(gamma);
  out.holds = !(out.worst_gap > 1e-9);
  return out;
}

double EmpiricalAdditiveGamma(const SetFunction& rho, int n) {
  if (n > 14) throw std::invalid_argument("exhaustive check needs n <= 14");
  return std::max(0.0, WorstSupermodularGap(Tabulate(rho, n), n));
}

GreedyResult DistortedGreedy(const DecomposedObjective& obj, int k) {
  return DistortedGreedy(obj, k, nullptr);
}

GreedyResult DistortedGreedy(const DecomposedObjective& obj, int k,
                             std::vector<DistortedStepAudit>* audit) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const int n = obj.n();
  const double shrink = 1.0 - 1.0 / k;
  GreedyResult result;
  Subset s;
  double rho_s = 0.0;
  for (int i = 0; i < k; ++i) {
    // std::pow(0, 0) == 1, which is the convention needed at k = 1.
    const double w = std::pow(shrink, k - i - 1);
    GreedyStep step;
    double best = kNegInf;
    double best_rho = 0.0;
    for (int e = 0; e < n; ++e) {
      if (Contains(s, e)) continue;
      const double rho_e = obj.Rho(With(s, e));
      if (!std::isfinite(rho_e)) continue;
      const double c = obj.Cost(e);
      const double inc = w * (rho_e - rho_s + c) - c;
      if (inc > best) {
        best = inc;
        best_rho = rho_e;
        step.element = e;
      }
    }
    step.gain = best;
    step.accepted = step.element >= 0 && best > 0.0;
    if (audit) {
      DistortedStepAudit a;
      a.eta_before = rho_s + obj.Cost(s);
      a.phi_before = std::pow(shrink, k - i) * a.eta_before - obj.Cost(s);
      a.psi = step.accepted ? best : 0.0;
      const Subset next = step.accepted ? With(s, step.element) : s;
      const double rho_next = step.accepted ? best_rho : rho_s;
      a.phi_after = w * (rho_next + obj.Cost(next)) - obj.Cost(next);
      audit->push_back(a);
    }
    if (step.accepted) {
      s = With(s, step.element);
      rho_s = best_rho;
    }
    result.trace.push_back(step);
  }
  result.selected = s;
  result.value = rho_s;
  return result;
}

GreedyResult DistortedGreedyLog(const SubsetWeightFn& nu, int k) {
  const double log_empty = nu.LogWeight(Subset{});
  if (log_empty == kNegInf) throw std::invalid_argument("nu(empty) must be positive");
  const int n = nu.n();
  DecomposedObjective obj(
      [&nu, log_empty](const Subset& s) { return nu.LogWeight(s) - log_empty; }, n);
  GreedyResult r = DistortedGreedy(obj, k);
  r.value = std::exp(nu.LogWeight(r.selected));
  return r;
}

GreedyResult DoubleGreedy(const SetFunction& f, int n, double gamma,
                          std::uint64_t seed) {
  if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
  Rng rng(seed);
  Subset x;
  Subset y = FullSet(n);
  double fx = f(x);
  double fy = f(y);
  GreedyResult result;
  for (int i = 0; i < n; ++i) {
    const double slack = (n - (i + 1)) * gamma;
    const Subset x_in = With(x, i);
    const Subset y_out = Without(y, i);
    const double fx_in = f(x_in);
    const double fy_out = f(y_out);
    const double a = std::max(fx_in - fx + slack, 0.0);
    const double b = std::max(fy_out - fy + slack, 0.0);
    const double p = (a + b) > 0.0 ? a / (a + b) : 0.0;
    const double u = rng.Uniform();
    GreedyStep step;
    step.element = i;
    step.gain = p;
    step.accepted = u < p;
    if (step.accepted) {
      x = x_in;
      fx = fx_in;
    } else {
      y = y_out;
      fy = fy_out;
    }
    result.trace.push_back(step);
  }
  result.selected = x;
  result.value = fx;
  return result;
}

GreedyResult MonotoneGreedy(const SetFunction& f, int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("need 0 <= k <= n");
  GreedyResult result;
  Subset s;
  double fs = f(s);
  for (int round = 0; round < k; ++round) {
    GreedyStep step;
    double best = kNegInf;
    for (int e = 0; e < n; ++e) {
      if (Contains(s, e)) continue;
      const double v = f(With(s, e));
      if (step.element < 0 || v > best) {
        best = v;
        step.element = e;
      }
    }
    step.gain = best - fs;
    step.accepted = true;
    s = With(s, step.element);
    fs = best;
    result.trace.push_back(step);
  }
  result.selected = s;
  result.value = fs;
  return result;
}

GreedyResult BruteForceOptSerial(const SetFunction& f, int n, int k) {
  CheckBruteForce(n, k);
  const std::vector<Subset> sets = AllSubsetsUpTo(n, k);
  std::vector<double> values(sets.size());
  for (std::size_t t = 0; t < sets.size(); ++t) values[t] = f(sets[t]);
  return PickBest(sets, values);
}

GreedyResult BruteForceOpt(const SetFunction& f, int n, int k) {
  CheckBruteForce(n, k);
  const std::vector<Subset> sets = AllSubsetsUpTo(n, k);
  std::vector<double> values(sets.size());
  const std::int64_t count = static_cast<std::int64_t>(sets.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < count; ++t) values[t] = f(sets[t]);
  return PickBest(sets, values);
}

double DistortedBound(const DecomposedObjective& obj, const Subset& opt,
                      double gamma) {
  const double l = static_cast<double>(opt.size());
  return (1.0 - 1.0 / std::numbers::e) * (obj.Eta(opt) - 0.5 * l * (l - 1.0) * gamma) -
         obj.Cost(opt);
}

double MonotoneBound(double f_opt, int k, int l, double gamma) {
  if (k < 1) return 0.0;
  const double kk = static_cast<double>(k);
  return (1.0 - std::exp(-static_cast<double>(l) / kk)) * f_opt -
         0.5 * kk * (kk - 1.0) * (1.0 - std::pow(1.0 - 1.0 / kk, l)) * gamma;
}

double DoubleGreedyBound(double f_opt, int n, double gamma) {
  return 0.5 * f_opt - 3.0 / 16.0 * n * (n - 1.0) * gamma;
}

}  // namespace slc
