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

#include "slc/linalg.h"

#include <cmath>
#include <limits>

namespace slc {
namespace {

constexpr double kNegInfinity = -std::numeric_limits<double>::infinity();

// In-place Cholesky of the row-major m x m matrix a (lower triangle used).
// Returns false on a non-positive pivot; accumulates sum log p_j.
bool CholeskyInPlace(std::vector<double>& a, int m, double& log_det) {
  log_det = 0.0;
  for (int j = 0; j < m; ++j) {
    const double diag = a[j * m + j];
    double s = diag;
    for (int k = 0; k < j; ++k) s -= a[j * m + k] * a[j * m + k];
    if (!(diag > 0.0) || s <= kPivotTolerance * diag) return false;
    const double ljj = std::sqrt(s);
    a[j * m + j] = ljj;
    log_det += std::log(s);
    for (int i = j + 1; i < m; ++i) {
      double t = a[i * m + j];
      for (int k = 0; k < j; ++k) t -= a[i * m + k] * a[j * m + k];
      a[i * m + j] = t / ljj;
    }
  }
  return true;
}

}  // namespace

double LogDetPrincipal(const Eigen::MatrixXd& kernel, std::span<const int> idx) {
  const int m = static_cast<int>(idx.size());
  if (m == 0) return 0.0;
  std::vector<double> a(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) a[i * m + j] = kernel(idx[i], idx[j]);
  }
  double log_det = 0.0;
  if (!CholeskyInPlace(a, m, log_det)) return kNegInfinity;
  return log_det;
}

PrincipalCholesky::PrincipalCholesky(const Eigen::MatrixXd& kernel,
                                     std::span<const int> idx)
    : kernel_(&kernel), idx_(idx.begin(), idx.end()) {
  const int m = size();
  chol_.assign(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) chol_[i * m + j] = kernel(idx_[i], idx_[j]);
  }
  ok_ = CholeskyInPlace(chol_, m, log_det_);
  if (!ok_) log_det_ = kNegInfinity;
}

double PrincipalCholesky::LogDetWith(int j) const {
  if (!ok_) return kNegInfinity;
  const Eigen::MatrixXd& kernel = *kernel_;
  const int m = size();
  const double diag = kernel(j, j);
  // Forward solve chol * v = L_{G,j}; Schur complement = L_jj - |v|^2.
  double s = diag;
  double v_local[64];
  std::vector<double> v_heap;
  double* v = v_local;
  if (m > 64) {
    v_heap.resize(m);
    v = v_heap.data();
  }
  for (int i = 0; i < m; ++i) {
    double t = kernel(idx_[i], j);
    for (int k = 0; k < i; ++k) t -= chol_[i * m + k] * v[k];
    v[i] = t / chol_[i * m + i];
    s -= v[i] * v[i];
  }
  if (!(diag > 0.0) || s <= kPivotTolerance * diag) return kNegInfinity;
  return log_det_ + std::log(s);
}

}  // namespace slc
