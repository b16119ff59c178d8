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

#include "slc/transforms.h"

#include <cmath>
#include <stdexcept>

namespace slc {

SparsePolynomial GeneratingPolynomial(const SubsetWeightFn& nu) {
  const int n = nu.n();
  if (n > 20) {
    throw std::invalid_argument("generating polynomial enumeration needs n <= 20");
  }
  SparsePolynomial f(n);
  ForEachSubsetUpTo(n, nu.d_cap(), [&](const Subset& s) {
    const double lw = nu.LogWeight(s);
    if (lw != kNegInf) {
      ExponentVector alpha(n, 0);
      for (int e : s) alpha[e] = 1;
      f.AddTerm(alpha, std::exp(lw));
    }
    return true;
  });
  return f;
}

SparsePolynomial ScaledHomogenize(const SparsePolynomial& f,
                                  const TransformConfig& cfg) {
  if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0)) {
    throw std::invalid_argument("exponent alpha must lie in [0, 1]");
  }
  if (cfg.k < 1) throw std::invalid_argument("target degree k must be >= 1");
  if (!f.IsMultiaffine()) {
    throw std::invalid_argument("scaled homogenization needs a multiaffine input");
  }
  if (cfg.k < f.Degree()) {
    throw std::invalid_argument("target degree k is below the degree of f");
  }
  const int n = f.num_vars();
  SparsePolynomial out(n + 1);
  for (const auto& [alpha, c] : f.terms()) {
    const int size = TotalDegree(alpha);
    ExponentVector beta(alpha);
    beta.push_back(cfg.k - size);
    double factorial = 1.0;
    for (int t = 2; t <= cfg.k - size; ++t) factorial *= t;
    const double coeff = std::pow(c, cfg.alpha) / factorial;
    out.AddTerm(beta, coeff);
  }
  return out;
}

SparsePolynomial Polarize(const SparsePolynomial& f, int d) {
  if (d < 0 || d > 20) throw std::invalid_argument("polarization degree must be in [0, 20]");
  if (!f.is_zero() && (!f.IsHomogeneous() || f.Degree() != d)) {
    throw std::invalid_argument("polarization needs a polynomial homogeneous of degree d");
  }
  const int n = f.num_vars() - 1;
  SparsePolynomial out(n + d);
  for (const auto& [alpha, c] : f.terms()) {
    for (int i = 0; i < n; ++i) {
      if (alpha[i] > 1) {
        throw std::invalid_argument("polarization needs f multiaffine in z");
      }
    }
    const int m = alpha[n];  // y-degree
    const double scale = c / static_cast<double>(Binomial(d, m));
    ForEachCombination(d, m, [&](const Subset& ys) {
      ExponentVector beta(n + d, 0);
      for (int i = 0; i < n; ++i) beta[i] = alpha[i];
      for (int j : ys) beta[n + j] = 1;
      out.AddTerm(beta, scale);
      return true;
    });
  }
  return out;
}

SparsePolynomial RestrictToDegree(const SparsePolynomial& f, int k) {
  if (k < 0) throw std::invalid_argument("degree must be >= 0");
  SparsePolynomial out(f.num_vars());
  for (const auto& [alpha, c] : f.terms()) {
    if (TotalDegree(alpha) == k) out.AddTerm(alpha, c);
  }
  return out;
}

}  // namespace slc
