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

// Polynomial transforms that preserve strong log-concavity.
//
// Variable conventions: a generating polynomial over [n] uses variables
// 0..n-1. Homogenization appends the slack variable y as index n.
// Polarization replaces y by d fresh variables n..n+d-1, which are the
// dummy elements of the extended ground set used by the sampler.

#ifndef SLC_TRANSFORMS_H_
#define SLC_TRANSFORMS_H_

#include "slc/distributions.h"
#include "slc/polynomial.h"

namespace slc {

struct TransformConfig {
  int k = 1;
  double alpha = 1.0;
};

// sum_S nu(S) z^S over |S| <= d_cap (unnormalized). Requires n <= 20.
SparsePolynomial GeneratingPolynomial(const SubsetWeightFn& nu);

// H_{k,alpha} f = sum_S c_S^alpha / (k-|S|)! z^S y^(k-|S|) for multiaffine f.
// Throws if f is not multiaffine, k < deg f, k < 1, or alpha is outside
// [0, 1] (the transform does not preserve strong log-concavity for any
// alpha > 1).
SparsePolynomial ScaledHomogenize(const SparsePolynomial& f,
                                  const TransformConfig& cfg);

// For f = sum_S c_S z^S y^(d-|S|) in variables (z_1..z_n, y), returns
//   sum_S c_S z^S C(d,|S|)^{-1} e_{d-|S|}(y_1, ..., y_d)
// over n + d variables. Requires f homogeneous of degree d and multiaffine in
// z; d <= 20.
SparsePolynomial Polarize(const SparsePolynomial& f, int d);

// Terms of total degree exactly k.
SparsePolynomial RestrictToDegree(const SparsePolynomial& f, int k);

}  // namespace slc

#endif  // SLC_TRANSFORMS_H_
