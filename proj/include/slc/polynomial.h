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

// Sparse multivariate polynomials with non-negative real coefficients.

#ifndef SLC_POLYNOMIAL_H_
#define SLC_POLYNOMIAL_H_

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace slc {

// Multi-index; entry i is the exponent of variable i.
using ExponentVector = std::vector<int>;

inline int TotalDegree(const ExponentVector& alpha) {
  int s = 0;
  for (int a : alpha) s += a;
  return s;
}

// Immutable-by-convention value type. Zero coefficients are never stored and
// every stored coefficient is strictly positive.
class SparsePolynomial {
 public:
  using TermMap = std::map<ExponentVector, double>;

  explicit SparsePolynomial(int num_vars);
  // Validates lengths and signs, merges nothing (keys are unique), drops
  // zero coefficients.
  SparsePolynomial(int num_vars, TermMap terms);

  static SparsePolynomial Constant(int num_vars, double c);
  // Single term c * z^alpha.
  static SparsePolynomial Monomial(ExponentVector alpha, double c);

  int num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // Accumulates c into the coefficient of alpha. c must be >= 0.
  void AddTerm(const ExponentVector& alpha, double c);
  double Coefficient(const ExponentVector& alpha) const;

  // Total degree; -1 for the zero polynomial.
  int Degree() const;
  // The zero polynomial counts as homogeneous.
  bool IsHomogeneous() const;
  bool IsMultiaffine() const;
  int MaxDegreeIn(int var) const;

  friend SparsePolynomial operator+(const SparsePolynomial& a,
                                    const SparsePolynomial& b);
  friend SparsePolynomial operator*(double s, const SparsePolynomial& p);
  friend bool operator==(const SparsePolynomial& a,
                         const SparsePolynomial& b) = default;

 private:
  int num_vars_;
  TermMap terms_;
};

// Sum of c_alpha * prod z_i^alpha_i. Throws std::invalid_argument on a
// dimension mismatch.
double Eval(const SparsePolynomial& p, std::span<const double> point);

// d^alpha p with falling-factorial coefficients.
SparsePolynomial PartialDerivative(const SparsePolynomial& p,
                                   const ExponentVector& alpha);

// All second partials at point. Entry (i,j) is Eval(d_i d_j p, point); the
// upper triangle is computed and mirrored.
Eigen::MatrixXd HessianAt(const SparsePolynomial& p,
                          std::span<const double> point);

// Connectivity of the graph on {i : d_i p != 0} with edges
// {(i,j) : d_i d_j p != 0}. Graphs with at most one node are connected.
bool IsIndecomposable(const SparsePolynomial& p);

// Text format: one term per line, "c e_1 ... e_n"; '#' starts a comment.
// The number of variables is the token count of the first term minus one.
SparsePolynomial ParsePolynomial(std::istream& in);
SparsePolynomial ParsePolynomial(const std::string& text);
void WritePolynomial(std::ostream& out, const SparsePolynomial& p);

std::string ToString(const SparsePolynomial& p);

}  // namespace slc

#endif  // SLC_POLYNOMIAL_H_
