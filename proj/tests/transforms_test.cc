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

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>

#include <gtest/gtest.h>

#include "slc/verify.h"
#include "test_util.h"

namespace slc {
namespace {

std::shared_ptr<const KernelSpec> Diag(std::vector<double> d) {
  return std::make_shared<const KernelSpec>(DiagonalKernel(d));
}

void ExpectPolyNear(const SparsePolynomial& a, const SparsePolynomial& b) {
  ASSERT_EQ(a.num_vars(), b.num_vars());
  ASSERT_EQ(a.num_terms(), b.num_terms()) << ToString(a) << " vs " << ToString(b);
  for (const auto& [alpha, c] : a.terms()) {
    EXPECT_NEAR(c, b.Coefficient(alpha), 1e-12 * (1.0 + c)) << ToString(a);
  }
}

TEST(GeneratingPolynomialTest, Examples) {
  // Uniform on {empty, {1}, {2}}: unit weights with cap 1.
  ExpectPolyNear(GeneratingPolynomial(SubsetWeightFn::Uniform(2, 1)),
                 SparsePolynomial(2, {{{0, 0}, 1.0}, {{1, 0}, 1.0}, {{0, 1}, 1.0}}));

  ExpectPolyNear(
      GeneratingPolynomial(SubsetWeightFn::SqrtDeterminant(Diag({4, 9}), 2)),
      SparsePolynomial(2, {{{0, 0}, 1.0}, {{1, 0}, 2.0}, {{0, 1}, 3.0}, {{1, 1}, 6.0}}));
}

TEST(GeneratingPolynomialTest, RejectsLargeGroundSet) {
  EXPECT_THROW(GeneratingPolynomial(SubsetWeightFn::Uniform(21, 2)), std::invalid_argument);
}

TEST(ScaledHomogenizeTest, Examples) {
  // 1 + 2 z1 + 3 z1 z2 over (z1, z2).
  const SparsePolynomial f(2, {{{0, 0}, 1.0}, {{1, 0}, 2.0}, {{1, 1}, 3.0}});
  ExpectPolyNear(ScaledHomogenize(f, {2, 1.0}),
                 SparsePolynomial(3, {{{0, 0, 2}, 0.5}, {{1, 0, 1}, 2.0}, {{1, 1, 0}, 3.0}}));
  ExpectPolyNear(ScaledHomogenize(f, {2, 0.5}),
                 SparsePolynomial(3, {{{0, 0, 2}, 0.5},
                                      {{1, 0, 1}, std::sqrt(2.0)},
                                      {{1, 1, 0}, std::sqrt(3.0)}}));
  ExpectPolyNear(ScaledHomogenize(SparsePolynomial::Constant(1, 1.0), {2, 1.0}),
                 SparsePolynomial(2, {{{0, 2}, 0.5}}));
}

TEST(ScaledHomogenizeTest, Errors) {
  const SparsePolynomial f(2, {{{1, 1}, 1.0}});
  EXPECT_THROW(ScaledHomogenize(f, {1, 1.0}), std::invalid_argument);
  EXPECT_THROW(ScaledHomogenize(f, {2, 1.5}), std::invalid_argument);
  EXPECT_THROW(ScaledHomogenize(f, {2, -0.1}), std::invalid_argument);
  EXPECT_THROW(ScaledHomogenize(SparsePolynomial(1, {{{2}, 1.0}}), {3, 1.0}),
               std::invalid_argument);
}

TEST(PolarizeTest, Examples) {
  // Variables (z1, y).
  const SparsePolynomial f(2, {{{1, 1}, 1.0}, {{0, 2}, 1.0}});
  ExpectPolyNear(Polarize(f, 2), SparsePolynomial(3, {{{1, 1, 0}, 0.5},
                                                       {{1, 0, 1}, 0.5},
                                                       {{0, 1, 1}, 1.0}}));
  ExpectPolyNear(Polarize(SparsePolynomial(1, {{{2}, 1.0}}), 2),
                 SparsePolynomial(2, {{{1, 1}, 1.0}}));
  // (z1, z2, y) with no y.
  ExpectPolyNear(Polarize(SparsePolynomial(3, {{{1, 1, 0}, 1.0}}), 2),
                 SparsePolynomial(4, {{{1, 1, 0, 0}, 1.0}}));
}

TEST(PolarizeTest, RejectsBadShapes) {
  EXPECT_THROW(Polarize(SparsePolynomial(2, {{{1, 1}, 1.0}, {{0, 1}, 1.0}}), 2),
               std::invalid_argument);
  EXPECT_THROW(Polarize(SparsePolynomial(2, {{{2, 0}, 1.0}}), 2), std::invalid_argument);
  EXPECT_THROW(Polarize(SparsePolynomial(2, {{{0, 3}, 1.0}}), 2), std::invalid_argument);
}

TEST(RestrictToDegreeTest, Examples) {
  const SparsePolynomial f(2, {{{0, 0}, 1.0}, {{1, 0}, 1.0}, {{1, 1}, 1.0}});
  ExpectPolyNear(RestrictToDegree(f, 1), SparsePolynomial(2, {{{1, 0}, 1.0}}));
  const SparsePolynomial g(2, {{{0, 0}, 1.0}, {{1, 0}, 2.0}, {{0, 1}, 3.0}, {{1, 1}, 6.0}});
  ExpectPolyNear(RestrictToDegree(g, 2), SparsePolynomial(2, {{{1, 1}, 6.0}}));
  EXPECT_TRUE(RestrictToDegree(g, 5).is_zero());
}

// Random multiaffine f, homogenized to degree k and polarized.
struct PolarizedCase {
  SparsePolynomial h;  // homogeneous, variables (z, y)
  SparsePolynomial p;  // polarization, variables (z, y_1..y_k)
  int n;
  int k;
};

PolarizedCase RandomPolarized(Rng& rng) {
  const int n = 1 + static_cast<int>(rng.Below(4));
  const int k = 1 + static_cast<int>(rng.Below(4));
  SparsePolynomial f(n);
  ForEachSubsetUpTo(n, std::min(n, k), [&](const Subset& s) {
    if (rng.Uniform() < 0.7) {
      ExponentVector a(n, 0);
      for (int e : s) a[e] = 1;
      f.AddTerm(a, testing::UniformIn(rng, 0.1, 5.0));
    }
    return true;
  });
  if (f.is_zero()) f.AddTerm(ExponentVector(n, 0), 1.0);
  const SparsePolynomial h = ScaledHomogenize(f, {k, testing::UniformIn(rng, 0.0, 1.0)});
  return {h, Polarize(h, k), n, k};
}

TEST(PolarizeProperty, DiagonalRestrictionRecoversInput) {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const PolarizedCase c = RandomPolarized(rng);
    const std::vector<double> x = testing::RandomPoint(rng, c.n + 1, 0.1, 2.0);
    std::vector<double> px(x.begin(), x.begin() + c.n);
    for (int t = 0; t < c.k; ++t) px.push_back(x[c.n]);
    const double want = Eval(c.h, x);
    EXPECT_NEAR(Eval(c.p, px), want, 1e-10 * std::abs(want));
  }
}

TEST(PolarizeProperty, SymmetricInCopiesAndMultiaffine) {
  Rng rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const PolarizedCase c = RandomPolarized(rng);
    EXPECT_TRUE(c.p.IsMultiaffine());
    EXPECT_TRUE(c.p.IsHomogeneous());
    std::vector<double> x = testing::RandomPoint(rng, c.n + c.k, 0.1, 2.0);
    const double base = Eval(c.p, x);
    std::vector<int> perm(c.k);
    std::iota(perm.begin(), perm.end(), 0);
    for (int t = c.k - 1; t > 0; --t) {
      std::swap(perm[t], perm[rng.Below(static_cast<std::uint64_t>(t + 1))]);
    }
    std::vector<double> y(x.begin() + c.n, x.end());
    for (int t = 0; t < c.k; ++t) x[c.n + t] = y[perm[t]];
    EXPECT_NEAR(Eval(c.p, x), base, 1e-12 * std::abs(base));
  }
}

TEST(ScaledHomogenizeProperty, HomogeneousOfDegreeK) {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const PolarizedCase c = RandomPolarized(rng);
    EXPECT_TRUE(c.h.IsHomogeneous());
    EXPECT_EQ(c.h.Degree(), c.k);
  }
}

// Generating polynomials of modular weights are products of (1 + w_i z_i),
// which are SLC; so is the truncation to |S| <= d. Homogenizing and polarizing
// such f must keep the certificate.
TEST(TransformsProperty, PolarizedHomogenizationOfSlcStaysSlc) {
  Rng rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.Below(2));
    const int d = 1 + static_cast<int>(rng.Below(static_cast<std::uint64_t>(n)));
    const SubsetWeightFn nu = testing::RandomModular(n, d, rng.NextU64());
    const double alpha = testing::UniformIn(rng, 0.0, 1.0);
    const SparsePolynomial f = GeneratingPolynomial(nu);
    const SparsePolynomial p = Polarize(ScaledHomogenize(f, {d, alpha}), d);
    const SlcVerdict v = IsSlcHomogeneous(p);
    EXPECT_TRUE(v.is_slc) << "n=" << n << " d=" << d << " " << ToJson(v);
  }
}

}  // namespace
}  // namespace slc
