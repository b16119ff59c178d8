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

// Strongly log-concave subset weight functions and their extensions to the
// padded ground set [n + d].
//
// A SubsetWeightFn is an unnormalized, log-space oracle
//   log nu(S) = alpha * log base(S)   if |S| <= d_cap, -inf otherwise,
// where base is sqrt(det L_S), an explicit table, or a product of per-element
// weights. Extended sets live in {0..n+d-1}; elements n..n+d-1 are the
// labeled dummies.

#ifndef SLC_DISTRIBUTIONS_H_
#define SLC_DISTRIBUTIONS_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "slc/subset.h"

namespace slc {

enum class SpectrumKind { kSmooth, kOneBig, kStep, kCustom };

std::string ToString(SpectrumKind kind);
// Accepts "smooth", "one-big", "step"; throws std::invalid_argument otherwise.
SpectrumKind ParseSpectrumKind(const std::string& name);

struct KernelSpec {
  int n = 0;
  Eigen::MatrixXd L;
  SpectrumKind spectrum_kind = SpectrumKind::kCustom;
  std::vector<double> spectrum;  // empty when unknown (e.g. read from file)
  std::uint64_t seed = 0;
};

// The three spectra used in the mixing experiments:
//   smooth:  1, 2, ..., n
//   one-big: n, (n-1)/2, (n-2)/2, ..., 1/2
//   step:    floor(n/5) entries equal to n, the rest 1/n
std::vector<double> SpectrumPreset(SpectrumKind kind, int n);

// L = Q diag(spectrum) Q^T with Q Haar-distributed: QR of a seeded standard
// Gaussian matrix with the signs of diag(R) folded into Q. Deterministic per
// (spectrum, seed).
KernelSpec RandomPsd(int n, std::span<const double> spectrum, std::uint64_t seed);
KernelSpec RandomPsd(int n, SpectrumKind kind, std::uint64_t seed);

KernelSpec DiagonalKernel(std::span<const double> diag);

// Kernel file: first line "n seed kind", then n rows of n doubles.
void WriteKernel(std::ostream& out, const KernelSpec& kernel);
KernelSpec ReadKernel(std::istream& in);
KernelSpec ReadKernelFile(const std::string& path);
void WriteKernelFile(const std::string& path, const KernelSpec& kernel);

class SubsetWeightFn {
 public:
  struct SqrtDet {
    std::shared_ptr<const KernelSpec> kernel;
  };
  struct Table {
    std::unordered_map<std::uint64_t, double> weights;  // keyed by ToMask(S)
  };
  struct Modular {
    std::vector<double> weights;
  };
  using Kind = std::variant<SqrtDet, Table, Modular>;

  static SubsetWeightFn SqrtDeterminant(std::shared_ptr<const KernelSpec> kernel,
                                        int d_cap, double alpha = 1.0);
  static SubsetWeightFn FromTable(int n, int d_cap,
                                  std::unordered_map<std::uint64_t, double> weights,
                                  double alpha = 1.0);
  static SubsetWeightFn FromModular(std::vector<double> weights, int d_cap,
                                    double alpha = 1.0);
  // nu(S) = 1 for every |S| <= d_cap.
  static SubsetWeightFn Uniform(int n, int d_cap);

  int n() const { return n_; }
  int d_cap() const { return d_cap_; }
  double alpha() const { return alpha_; }
  const Kind& kind() const { return kind_; }
  // Non-null iff the kind is SqrtDet.
  const KernelSpec* kernel() const;

  // Throws std::out_of_range for elements outside [0, n).
  double LogWeight(std::span<const int> s) const;
  // log base(S) with no exponent and no cardinality cap.
  double LogBase(std::span<const int> s) const;

 private:
  SubsetWeightFn(int n, int d_cap, double alpha, Kind kind);

  int n_;
  int d_cap_;
  double alpha_;
  Kind kind_;
};

double LogWeight(const SubsetWeightFn& nu, std::span<const int> s);

// Which homogeneous proposal measure is being built on [n + d]:
//   kRescaled: mu(S)    ~ (d/e)^(d-k) / (d-k)! / C(d,k) * nu(S & [n])
//   kPlain:    H_d nu(S) ~               1 / (d-k)! / C(d,k) * nu(S & [n])
// with k = |S & [n]|.
enum class ProposalKind { kRescaled, kPlain };

std::string ToString(ProposalKind kind);
ProposalKind ParseProposalKind(const std::string& name);

class ExtendedWeightCtx {
 public:
  explicit ExtendedWeightCtx(SubsetWeightFn base);

  const SubsetWeightFn& base() const { return base_; }
  int n() const { return base_.n(); }
  int d() const { return d_; }
  int universe() const { return n() + d(); }

  // Number of ground elements (< n) in a sorted extended set.
  int GroundCount(std::span<const int> s) const;
  Subset Ground(std::span<const int> s) const;

  // -log C(d,k); the part of log nu_sh that depends only on k.
  double NuShOffset(int k) const { return nu_sh_offset_[k]; }
  // log mu(S) - log nu(S & [n]) for a set with k ground elements.
  double ProposalOffset(ProposalKind kind, int k) const;

 private:
  SubsetWeightFn base_;
  int d_;
  std::vector<double> nu_sh_offset_;
  std::vector<double> rescaled_offset_;
  std::vector<double> plain_offset_;
};

// log nu_sh(S) = -log C(d, k) + log nu(S & [n]); requires |S| = d.
double LogNuSh(const ExtendedWeightCtx& ctx, std::span<const int> s);
// log mu(S) = (d-k) log(d/e) - log (d-k)! - log C(d,k) + log nu(S & [n]).
double LogMu(const ExtendedWeightCtx& ctx, std::span<const int> s);
double LogProposalWeight(const ExtendedWeightCtx& ctx, ProposalKind kind,
                         std::span<const int> s);

// Enumerates every d-subset of [n+d] and checks
//   sqrt(2 pi) / 2^d * Z <= nu_sh(S) / mu(S) <= e sqrt(d) * Z
// for all support points, both measures normalized and Z the normalizer
// relating them. Throws if C(n+d, d) > 1e6.
bool CheckRatioBounds(const ExtendedWeightCtx& ctx);

}  // namespace slc

#endif  // SLC_DISTRIBUTIONS_H_
