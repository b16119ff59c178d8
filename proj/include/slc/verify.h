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

// Certificates of strong log-concavity for homogeneous polynomials.
//
// A homogeneous f of degree d >= 2 is certified SLC when, for every
// multi-index alpha with |alpha| <= d-2, the derivative d^alpha f is zero or
// indecomposable, and for |alpha| = d-2 the constant Hessian of the quadratic
// d^alpha f has at most one positive eigenvalue. The check is sufficient; a
// decomposability failure is reported as such rather than as "not SLC".

#ifndef SLC_VERIFY_H_
#define SLC_VERIFY_H_

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "slc/distributions.h"
#include "slc/polynomial.h"

namespace slc {

enum class SlcFailure { kDecomposable, kTooManyPositiveEigenvalues };

std::string ToString(SlcFailure kind);

struct SlcVerdict {
  bool is_slc = true;
  std::optional<SlcFailure> failure_kind;
  std::optional<ExponentVector> failing_multi_index;
  std::optional<std::vector<double>> eigenvalues_at_failure;
};

// JSON object {"is_slc", "failure_kind", "multi_index", "eigenvalues"} with
// nulls for absent fields.
std::string ToJson(const SlcVerdict& verdict);

// 1e-9 * (1 + ||M||_F); the Frobenius norm bounds the spectral norm.
double DefaultEigenTolerance(const Eigen::MatrixXd& m);

// Ascending eigenvalues of a symmetric matrix. Throws std::invalid_argument if
// any |M_ij - M_ji| > 1e-12.
std::vector<double> SymmetricEigenvalues(const Eigen::MatrixXd& m);

// Number of eigenvalues strictly above tol.
int PositiveEigenvalueCount(const Eigen::MatrixXd& m, double tol);

// tol <= 0 selects DefaultEigenTolerance per Hessian.
SlcVerdict IsSlcHomogeneous(const SparsePolynomial& f, double tol = 0.0);
// Serial reference for the multi-index sweep; same verdict as the above.
SlcVerdict IsSlcHomogeneousSerial(const SparsePolynomial& f, double tol = 0.0);

// a + b y + c z + d yz (all >= 0) is SLC iff 2bc >= ad.
bool TwoByTwoSlc(double a, double b, double c, double d);

// Exchange property of the exponent support: for all alpha, beta in the
// support and i with alpha_i > beta_i there is j with alpha_j < beta_j and
// alpha - e_i + e_j in the support.
bool IsMConvexSupport(const SparsePolynomial& f);

// max over S and distinct i, j outside S, with all four weights positive, of
//   log nu(S) + log nu(S+i+j) - log nu(S+i) - log nu(S+j).
// <= 0 means log-submodular on the support. Requires n <= 20; throws if no
// quadruple has four positive weights.
double LogSubmodularityGap(const SubsetWeightFn& nu);

}  // namespace slc

#endif  // SLC_VERIFY_H_
