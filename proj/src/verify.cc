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

#include "slc/verify.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace slc {
namespace {

// All alpha with |alpha| <= max_total and alpha_i <= caps[i], in lexicographic
// order (alpha_0 most significant).
std::vector<ExponentVector> BoundedMultiIndices(const std::vector<int>& caps,
                                                int max_total) {
  std::vector<ExponentVector> out;
  ExponentVector alpha(caps.size(), 0);
  auto rec = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (pos == caps.size()) {
      out.push_back(alpha);
      return;
    }
    const int top = std::min(caps[pos], remaining);
    for (int v = 0; v <= top; ++v) {
      alpha[pos] = v;
      self(self, pos + 1, remaining - v);
    }
    alpha[pos] = 0;
  };
  rec(rec, 0, max_total);
  return out;
}

void CheckSlcInput(const SparsePolynomial& f) {
  if (!f.IsHomogeneous()) {
    throw std::invalid_argument("SLC check needs a homogeneous polynomial");
  }
}

// Verdict for one multi-index; is_slc = true when the conditions hold there.
SlcVerdict CheckAt(const SparsePolynomial& f, const ExponentVector& alpha,
                   int degree, double tol) {
  SlcVerdict v;
  const SparsePolynomial g = PartialDerivative(f, alpha);
  if (g.is_zero()) return v;
  if (!IsIndecomposable(g)) {
    v.is_slc = false;
    v.failure_kind = SlcFailure::kDecomposable;
    v.failing_multi_index = alpha;
    return v;
  }
  if (TotalDegree(alpha) == degree - 2) {
    const std::vector<double> origin(f.num_vars(), 0.0);
    const Eigen::MatrixXd h = HessianAt(g, origin);
    const double t = tol > 0.0 ? tol : DefaultEigenTolerance(h);
    std::vector<double> eig = SymmetricEigenvalues(h);
    const auto positive = std::count_if(eig.begin(), eig.end(),
                                        [t](double x) { return x > t; });
    if (positive > 1) {
      v.is_slc = false;
      v.failure_kind = SlcFailure::kTooManyPositiveEigenvalues;
      v.failing_multi_index = alpha;
      v.eigenvalues_at_failure = std::move(eig);
    }
  }
  return v;
}

std::vector<ExponentVector> SlcMultiIndices(const SparsePolynomial& f) {
  std::vector<int> caps(f.num_vars());
  for (int i = 0; i < f.num_vars(); ++i) caps[i] = f.MaxDegreeIn(i);
  return BoundedMultiIndices(caps, f.Degree() - 2);
}

}  // namespace

std::string ToString(SlcFailure kind) {
  switch (kind) {
    case SlcFailure::kDecomposable:
      return "decomposable";
    case SlcFailure::kTooManyPositiveEigenvalues:
      return "too-many-positive-eigenvalues";
  }
  return "unknown";
}

std::string ToJson(const SlcVerdict& verdict) {
  nlohmann::json j;
  j["is_slc"] = verdict.is_slc;
  j["failure_kind"] = verdict.failure_kind
                          ? nlohmann::json(ToString(*verdict.failure_kind))
                          : nlohmann::json(nullptr);
  j["multi_index"] = verdict.failing_multi_index
                         ? nlohmann::json(*verdict.failing_multi_index)
                         : nlohmann::json(nullptr);
  j["eigenvalues"] = verdict.eigenvalues_at_failure
                         ? nlohmann::json(*verdict.eigenvalues_at_failure)
                         : nlohmann::json(nullptr);
  return j.dump();
}

double DefaultEigenTolerance(const Eigen::MatrixXd& m) {
  return 1e-9 * (1.0 + m.norm());
}

std::vector<double> SymmetricEigenvalues(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - m(j, i)) > 1e-12) {
        throw std::invalid_argument("matrix is not symmetric");
      }
    }
  }
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigensolver did not converge");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

int PositiveEigenvalueCount(const Eigen::MatrixXd& m, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const std::vector<double> eig = SymmetricEigenvalues(m);
  return static_cast<int>(
      std::count_if(eig.begin(), eig.end(), [tol](double x) { return x > tol; }));
}

SlcVerdict IsSlcHomogeneousSerial(const SparsePolynomial& f, double tol) {
  CheckSlcInput(f);
  const int degree = f.Degree();
  if (degree < 2) return {};
  for (const ExponentVector& alpha : SlcMultiIndices(f)) {
    SlcVerdict v = CheckAt(f, alpha, degree, tol);
    if (!v.is_slc) return v;
  }
  return {};
}

SlcVerdict IsSlcHomogeneous(const SparsePolynomial& f, double tol) {
  CheckSlcInput(f);
  const int degree = f.Degree();
  if (degree < 2) return {};
  const std::vector<ExponentVector> indices = SlcMultiIndices(f);
  const std::int64_t count = static_cast<std::int64_t>(indices.size());
  // Lowest failing position; later positions are skipped once one is known.
  std::atomic<std::int64_t> first_failure{count};
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t t = 0; t < count; ++t) {
    if (t >= first_failure.load(std::memory_order_relaxed)) continue;
    if (!CheckAt(f, indices[t], degree, tol).is_slc) {
      std::int64_t cur = first_failure.load();
      while (t < cur && !first_failure.compare_exchange_weak(cur, t)) {
      }
    }
  }
  const std::int64_t best = first_failure.load();
  if (best == count) return {};
  return CheckAt(f, indices[best], degree, tol);
}

bool TwoByTwoSlc(double a, double b, double c, double d) {
  if (a < 0 || b < 0 || c < 0 || d < 0) {
    throw std::invalid_argument("coefficients must be non-negative");
  }
  return 2.0 * b * c >= a * d;
}

bool IsMConvexSupport(const SparsePolynomial& f) {
  std::vector<ExponentVector> support;
  support.reserve(f.num_terms());
  for (const auto& [alpha, c] : f.terms()) support.push_back(alpha);
  const std::set<ExponentVector> lookup(support.begin(), support.end());
  const int n = f.num_vars();
  for (const ExponentVector& a : support) {
    for (const ExponentVector& b : support) {
      for (int i = 0; i < n; ++i) {
        if (a[i] <= b[i]) continue;
        bool found = false;
        for (int j = 0; j < n && !found; ++j) {
          if (a[j] >= b[j]) continue;
          ExponentVector moved(a);
          --moved[i];
          ++moved[j];
          found = lookup.count(moved) > 0;
        }
        if (!found) return false;
      }
    }
  }
  return true;
}

double LogSubmodularityGap(const SubsetWeightFn& nu) {
  const int n = nu.n();
  if (n > 20) throw std::invalid_argument("log-submodularity gap needs n <= 20");
  const int cap = std::min(n, nu.d_cap());
  std::vector<double> logw(std::size_t{1} << n, kNegInf);
  ForEachSubsetUpTo(n, cap, [&](const Subset& s) {
    logw[ToMask(s)] = nu.LogWeight(s);
    return true;
  });
  double gap = -std::numeric_limits<double>::infinity();
  bool any = false;
  ForEachSubsetUpTo(n, cap - 2, [&](const Subset& s) {
    const std::uint64_t m = ToMask(s);
    const double base = logw[m];
    if (base == kNegInf) return true;
    for (int i = 0; i < n; ++i) {
      const std::uint64_t bi = std::uint64_t{1} << i;
      if (m & bi) continue;
      const double wi = logw[m | bi];
      if (wi == kNegInf) continue;
      for (int j = i + 1; j < n; ++j) {
        const std::uint64_t bj = std::uint64_t{1} << j;
        if (m & bj) continue;
        const double wj = logw[m | bj];
        const double wij = logw[m | bi | bj];
        if (wj == kNegInf || wij == kNegInf) continue;
        gap = std::max(gap, base + wij - wi - wj);
        any = true;
      }
    }
    return true;
  });
  if (!any) {
    throw std::invalid_argument("no quadruple with four positive weights");
  }
  return gap;
}

}  // namespace slc
