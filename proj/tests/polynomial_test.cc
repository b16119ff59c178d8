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

#include "slc/polynomial.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "test_util.h"

namespace slc {
namespace {

// 1 + 2y + z + 3yz over (y, z).
SparsePolynomial TwoByTwo() {
  return SparsePolynomial(2, {{{0, 0}, 1.0}, {{1, 0}, 2.0}, {{0, 1}, 1.0}, {{1, 1}, 3.0}});
}

// w^2 + 2wy + wz + 3yz over (w, y, z).
SparsePolynomial Fh() {
  return SparsePolynomial(
      3, {{{2, 0, 0}, 1.0}, {{1, 1, 0}, 2.0}, {{1, 0, 1}, 1.0}, {{0, 1, 1}, 3.0}});
}

TEST(SparsePolynomialTest, PrunesZerosAndRejectsNegatives) {
  SparsePolynomial p(2, {{{1, 0}, 0.0}, {{0, 1}, 2.0}});
  EXPECT_EQ(p.num_terms(), 1u);
  EXPECT_THROW(SparsePolynomial(2, {{{1, 0}, -1.0}}), std::invalid_argument);
  EXPECT_THROW(SparsePolynomial(2, {{{1, 0, 0}, 1.0}}), std::invalid_argument);
  p.AddTerm({1, 0}, 0.0);
  EXPECT_EQ(p.num_terms(), 1u);
}

TEST(SparsePolynomialTest, DegreeQueries) {
  EXPECT_EQ(TwoByTwo().Degree(), 2);
  EXPECT_FALSE(TwoByTwo().IsHomogeneous());
  EXPECT_TRUE(TwoByTwo().IsMultiaffine());
  EXPECT_TRUE(Fh().IsHomogeneous());
  EXPECT_FALSE(Fh().IsMultiaffine());
  EXPECT_EQ(Fh().MaxDegreeIn(0), 2);
  EXPECT_EQ(SparsePolynomial(3).Degree(), -1);
}

TEST(EvalTest, Examples) {
  const std::vector<double> origin = {0.0, 0.0};
  const std::vector<double> ones = {1.0, 1.0};
  EXPECT_DOUBLE_EQ(Eval(TwoByTwo(), origin), 1.0);
  EXPECT_DOUBLE_EQ(Eval(TwoByTwo(), ones), 7.0);
  const SparsePolynomial z1z2 = SparsePolynomial::Monomial({1, 1}, 1.0);
  EXPECT_DOUBLE_EQ(Eval(z1z2, std::vector<double>{2.0, 3.0}), 6.0);
  EXPECT_THROW(Eval(z1z2, std::vector<double>{1.0}), std::invalid_argument);
}

TEST(PartialDerivativeTest, Examples) {
  const SparsePolynomial dy = PartialDerivative(TwoByTwo(), {1, 0});
  EXPECT_EQ(dy, SparsePolynomial(2, {{{0, 0}, 2.0}, {{0, 1}, 3.0}}));

  const double c = 4.5;
  const SparsePolynomial half_cy2 = SparsePolynomial::Monomial({2}, c / 2);
  EXPECT_EQ(PartialDerivative(half_cy2, {2}), SparsePolynomial::Constant(1, c));

  EXPECT_TRUE(PartialDerivative(SparsePolynomial::Constant(2, 3.0), {0, 1}).is_zero());
}

TEST(HessianTest, Examples) {
  const std::vector<double> x = {0.3, 1.7, 2.2};
  Eigen::Matrix3d expected;
  expected << 2, 2, 1, 2, 0, 3, 1, 3, 0;
  EXPECT_EQ(HessianAt(Fh(), x), Eigen::MatrixXd(expected));

  const SparsePolynomial z1z2 = SparsePolynomial::Monomial({1, 1}, 1.0);
  Eigen::Matrix2d swap;
  swap << 0, 1, 1, 0;
  EXPECT_EQ(HessianAt(z1z2, std::vector<double>{5.0, -1.0}), Eigen::MatrixXd(swap));

  // The reference 4x4 Hessian has rows (0,10,3,2), (10,0,2,6), (3,2,0,1),
  // (2,6,1,0); its (y, z) entry requires a yz term, so the regression
  // polynomial is 10wx + 3wy + 2wz + 2xy + 6xz + yz.
  const SparsePolynomial f(4, {{{1, 1, 0, 0}, 10.0},
                               {{1, 0, 1, 0}, 3.0},
                               {{1, 0, 0, 1}, 2.0},
                               {{0, 1, 1, 0}, 2.0},
                               {{0, 1, 0, 1}, 6.0},
                               {{0, 0, 1, 1}, 1.0}});
  Eigen::Matrix4d h;
  h << 0, 10, 3, 2, 10, 0, 2, 6, 3, 2, 0, 1, 2, 6, 1, 0;
  EXPECT_EQ(HessianAt(f, std::vector<double>{1, 1, 1, 1}), Eigen::MatrixXd(h));
}

TEST(IndecomposableTest, Examples) {
  EXPECT_TRUE(IsIndecomposable(SparsePolynomial(3, {{{1, 1, 0}, 1.0}, {{0, 1, 1}, 1.0}})));
  EXPECT_FALSE(IsIndecomposable(
      SparsePolynomial(4, {{{1, 1, 0, 0}, 1.0}, {{0, 0, 1, 1}, 1.0}})));
  EXPECT_TRUE(IsIndecomposable(SparsePolynomial::Monomial({1}, 1.0)));
}

TEST(ParseTest, RoundTripAndComments) {
  const std::string text =
      "# f_h\n"
      "1 2 0 0\n"
      "2 1 1 0   # cross term\n"
      "\n"
      "1 1 0 1\n"
      "3 0 1 1\n";
  const SparsePolynomial p = ParsePolynomial(text);
  EXPECT_EQ(p, Fh());
  std::ostringstream out;
  WritePolynomial(out, p);
  EXPECT_EQ(ParsePolynomial(out.str()), p);
  EXPECT_THROW(ParsePolynomial("1 0 1\n2 1\n"), std::invalid_argument);
  EXPECT_THROW(ParsePolynomial("-1 0 1\n"), std::invalid_argument);
  EXPECT_THROW(ParsePolynomial("1 0 x\n"), std::invalid_argument);
}

// Derivatives agree with central finite differences of the polynomial itself.
TEST(PartialDerivativeProperty, MatchesFiniteDifferences) {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(3));
    const SparsePolynomial p = testing::RandomPolynomial(rng, n, 6, 3, 4);
    const std::vector<double> x = testing::RandomPoint(rng, n, 0.1, 2.0);
    const int var = static_cast<int>(rng.Below(static_cast<std::uint64_t>(n)));
    ExponentVector alpha(n, 0);
    alpha[var] = 1;
    const double h = 1e-5;
    std::vector<double> xp = x, xm = x;
    xp[var] += h;
    xm[var] -= h;
    const double fd = (Eval(p, xp) - Eval(p, xm)) / (2 * h);
    const double exact = Eval(PartialDerivative(p, alpha), x);
    EXPECT_NEAR(exact, fd, 1e-6 * (1.0 + std::abs(exact))) << ToString(p);

    // Second derivative in one variable via the three-point stencil.
    alpha[var] = 2;
    const double h2 = 1e-3;
    xp[var] = x[var] + h2;
    xm[var] = x[var] - h2;
    const double fd2 = (Eval(p, xp) - 2 * Eval(p, x) + Eval(p, xm)) / (h2 * h2);
    const double exact2 = Eval(PartialDerivative(p, alpha), x);
    EXPECT_NEAR(exact2, fd2, 1e-4 * (1.0 + std::abs(exact2))) << ToString(p);
  }
}

TEST(HessianProperty, EqualsComposedDerivatives) {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.Below(3));
    const SparsePolynomial p = testing::RandomPolynomial(rng, n, 8, 3, 4);
    const std::vector<double> x = testing::RandomPoint(rng, n, -2.0, 2.0);
    const Eigen::MatrixXd h = HessianAt(p, x);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        ExponentVector ei(n, 0), ej(n, 0);
        ei[i] = 1;
        ej[j] = 1;
        const double composed = Eval(PartialDerivative(PartialDerivative(p, ei), ej), x);
        EXPECT_EQ(h(i, j), composed) << "entry " << i << "," << j;
      }
    }
    EXPECT_EQ(h, h.transpose());
  }
}

TEST(PartialDerivativeProperty, IsLinear) {
  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(4));
    const SparsePolynomial p = testing::RandomPolynomial(rng, n, 5, 3, 5);
    const SparsePolynomial q = testing::RandomPolynomial(rng, n, 5, 3, 5);
    ExponentVector alpha(n);
    for (int& a : alpha) a = static_cast<int>(rng.Below(3));
    const SparsePolynomial lhs = PartialDerivative(p + q, alpha);
    const SparsePolynomial rhs = PartialDerivative(p, alpha) + PartialDerivative(q, alpha);
    ASSERT_EQ(lhs.num_terms(), rhs.num_terms());
    for (const auto& [beta, c] : lhs.terms()) {
      EXPECT_NEAR(c, rhs.Coefficient(beta), 1e-12 * (1.0 + c));
    }
  }
}

}  // namespace
}  // namespace slc
