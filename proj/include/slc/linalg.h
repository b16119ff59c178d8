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

// Log-determinants of principal submatrices L_S of a PSD kernel.
//
// A pivot p_j of the Cholesky factorization counts as non-positive when
// p_j <= kPivotTolerance * L_jj. Such sets are singular for sampling
// purposes and get log det = -inf (weight zero) rather than an error.

#ifndef SLC_LINALG_H_
#define SLC_LINALG_H_

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace slc {

inline constexpr double kPivotTolerance = 1e-12;

// From-scratch Cholesky of L restricted to idx (in the given order).
// log det of the empty matrix is 0.
double LogDetPrincipal(const Eigen::MatrixXd& kernel, std::span<const int> idx);

// Factorization of L_G kept around so that log det L_{G + j} costs one
// triangular solve per candidate j (Schur complement update).
class PrincipalCholesky {
 public:
  PrincipalCholesky(const Eigen::MatrixXd& kernel, std::span<const int> idx);

  bool ok() const { return ok_; }
  int size() const { return static_cast<int>(idx_.size()); }
  // -inf if the factorization failed.
  double LogDet() const { return log_det_; }
  // log det L_{G + j} for j not in G; -inf when singular.
  double LogDetWith(int j) const;

 private:
  const Eigen::MatrixXd* kernel_;
  std::vector<int> idx_;
  // Row-major lower-triangular factor, size() x size().
  std::vector<double> chol_;
  double log_det_ = 0.0;
  bool ok_ = true;
};

}  // namespace slc

#endif  // SLC_LINALG_H_
