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

#include "slc/distributions.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <type_traits>

#include "slc/linalg.h"
#include "slc/rng.h"

namespace slc {

std::string ToString(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::kSmooth:
      return "smooth";
    case SpectrumKind::kOneBig:
      return "one-big";
    case SpectrumKind::kStep:
      return "step";
    case SpectrumKind::kCustom:
      return "custom";
  }
  return "custom";
}

SpectrumKind ParseSpectrumKind(const std::string& name) {
  if (name == "smooth") return SpectrumKind::kSmooth;
  if (name == "one-big") return SpectrumKind::kOneBig;
  if (name == "step") return SpectrumKind::kStep;
  if (name == "custom") return SpectrumKind::kCustom;
  throw std::invalid_argument("unknown spectrum kind '" + name + "'");
}

std::vector<double> SpectrumPreset(SpectrumKind kind, int n) {
  if (n < 1) throw std::invalid_argument("spectrum size must be >= 1");
  std::vector<double> s(n);
  switch (kind) {
    case SpectrumKind::kSmooth:
      for (int i = 0; i < n; ++i) s[i] = i + 1;
      return s;
    case SpectrumKind::kOneBig:
      s[0] = n;
      for (int i = 1; i < n; ++i) s[i] = (n - i) / 2.0;
      return s;
    case SpectrumKind::kStep: {
      const int big = n / 5;
      for (int i = 0; i < n; ++i) s[i] = i < big ? n : 1.0 / n;
      return s;
    }
    case SpectrumKind::kCustom:
      break;
  }
  throw std::invalid_argument("no preset for spectrum kind " + ToString(kind));
}

KernelSpec RandomPsd(int n, std::span<const double> spectrum, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("kernel size must be >= 1");
  if (static_cast<int>(spectrum.size()) != n) {
    throw std::invalid_argument("spectrum length must equal n");
  }
  for (double v : spectrum) {
    if (!(v >= 0.0)) throw std::invalid_argument("spectrum entries must be >= 0");
  }
  Rng rng(seed);
  Eigen::MatrixXd g(n, n);
  // Column-major fill order is part of the reproducibility contract.
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = rng.Normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  Eigen::VectorXd lambda(n);
  for (int i = 0; i < n; ++i) lambda(i) = spectrum[i];
  Eigen::MatrixXd l = q * lambda.asDiagonal() * q.transpose();
  KernelSpec spec;
  spec.n = n;
  spec.L = 0.5 * (l + l.transpose());
  spec.spectrum.assign(spectrum.begin(), spectrum.end());
  spec.seed = seed;
  return spec;
}

KernelSpec RandomPsd(int n, SpectrumKind kind, std::uint64_t seed) {
  const std::vector<double> spectrum = SpectrumPreset(kind, n);
  KernelSpec spec = RandomPsd(n, spectrum, seed);
  spec.spectrum_kind = kind;
  return spec;
}

KernelSpec DiagonalKernel(std::span<const double> diag) {
  KernelSpec spec;
  spec.n = static_cast<int>(diag.size());
  spec.L = Eigen::MatrixXd::Zero(spec.n, spec.n);
  for (int i = 0; i < spec.n; ++i) spec.L(i, i) = diag[i];
  spec.spectrum.assign(diag.begin(), diag.end());
  return spec;
}

void WriteKernel(std::ostream& out, const KernelSpec& kernel) {
  out << kernel.n << ' ' << kernel.seed << ' ' << ToString(kernel.spectrum_kind)
      << '\n';
  char buf[40];
  for (int i = 0; i < kernel.n; ++i) {
    for (int j = 0; j < kernel.n; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", kernel.L(i, j));
      if (j > 0) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

KernelSpec ReadKernel(std::istream& in) {
  KernelSpec spec;
  std::string kind;
  if (!(in >> spec.n >> spec.seed >> kind) || spec.n < 1) {
    throw std::runtime_error("kernel file: bad header, expected 'n seed kind'");
  }
  spec.spectrum_kind = ParseSpectrumKind(kind);
  spec.L.resize(spec.n, spec.n);
  for (int i = 0; i < spec.n; ++i) {
    for (int j = 0; j < spec.n; ++j) {
      std::string tok;
      if (!(in >> tok)) throw std::runtime_error("kernel file: truncated matrix");
      std::size_t used = 0;
      try {
        spec.L(i, j) = std::stod(tok, &used);
      } catch (const std::logic_error&) {
        used = 0;
      }
      if (used != tok.size()) {
        throw std::runtime_error("kernel file: malformed entry '" + tok + "'");
      }
    }
  }
  if ((spec.L - spec.L.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::runtime_error("kernel file: matrix is not symmetric");
  }
  return spec;
}

KernelSpec ReadKernelFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open kernel file " + path);
  return ReadKernel(in);
}

void WriteKernelFile(const std::string& path, const KernelSpec& kernel) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write kernel file " + path);
  WriteKernel(out, kernel);
}

SubsetWeightFn::SubsetWeightFn(int n, int d_cap, double alpha, Kind kind)
    : n_(n), d_cap_(d_cap), alpha_(alpha), kind_(std::move(kind)) {
  if (n < 1) throw std::invalid_argument("ground set must be non-empty");
  if (d_cap < 0) throw std::invalid_argument("cardinality cap must be >= 0");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
}

SubsetWeightFn SubsetWeightFn::SqrtDeterminant(
    std::shared_ptr<const KernelSpec> kernel, int d_cap, double alpha) {
  if (!kernel) throw std::invalid_argument("null kernel");
  const int n = kernel->n;
  return SubsetWeightFn(n, d_cap, alpha, SqrtDet{std::move(kernel)});
}

SubsetWeightFn SubsetWeightFn::FromTable(
    int n, int d_cap, std::unordered_map<std::uint64_t, double> weights,
    double alpha) {
  if (n > 64) throw std::invalid_argument("table weights need n <= 64");
  for (const auto& [mask, w] : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("table weights must be >= 0");
    if (n < 64 && (mask >> n) != 0) {
      throw std::invalid_argument("table key outside the ground set");
    }
  }
  return SubsetWeightFn(n, d_cap, alpha, Table{std::move(weights)});
}

SubsetWeightFn SubsetWeightFn::FromModular(std::vector<double> weights, int d_cap,
                                           double alpha) {
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("modular weights must be >= 0");
  }
  const int n = static_cast<int>(weights.size());
  return SubsetWeightFn(n, d_cap, alpha, Modular{std::move(weights)});
}

SubsetWeightFn SubsetWeightFn::Uniform(int n, int d_cap) {
  return FromModular(std::vector<double>(n, 1.0), d_cap);
}

const KernelSpec* SubsetWeightFn::kernel() const {
  if (const auto* sd = std::get_if<SqrtDet>(&kind_)) return sd->kernel.get();
  return nullptr;
}

double SubsetWeightFn::LogBase(std::span<const int> s) const {
  for (int e : s) {
    if (e < 0 || e >= n_) throw std::out_of_range("element outside ground set");
  }
  return std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, SqrtDet>) {
          return 0.5 * LogDetPrincipal(k.kernel->L, s);
        } else if constexpr (std::is_same_v<K, Table>) {
          auto it = k.weights.find(ToMask(s));
          if (it == k.weights.end() || it->second <= 0.0) return kNegInf;
          return std::log(it->second);
        } else {
          double acc = 0.0;
          for (int e : s) {
            if (k.weights[e] <= 0.0) return kNegInf;
            acc += std::log(k.weights[e]);
          }
          return acc;
        }
      },
      kind_);
}

double SubsetWeightFn::LogWeight(std::span<const int> s) const {
  if (static_cast<int>(s.size()) > d_cap_) {
    for (int e : s) {
      if (e < 0 || e >= n_) throw std::out_of_range("element outside ground set");
    }
    return kNegInf;
  }
  const double base = LogBase(s);
  // Zero-weight sets stay out of the support for every alpha, including 0.
  if (base == kNegInf) return kNegInf;
  return alpha_ * base;
}

double LogWeight(const SubsetWeightFn& nu, std::span<const int> s) {
  return nu.LogWeight(s);
}

std::string ToString(ProposalKind kind) {
  return kind == ProposalKind::kRescaled ? "rescaled" : "plain";
}

ProposalKind ParseProposalKind(const std::string& name) {
  if (name == "rescaled") return ProposalKind::kRescaled;
  if (name == "plain") return ProposalKind::kPlain;
  throw std::invalid_argument("unknown proposal kind '" + name + "'");
}

ExtendedWeightCtx::ExtendedWeightCtx(SubsetWeightFn base)
    : base_(std::move(base)), d_(base_.d_cap()) {
  if (d_ < 1) throw std::invalid_argument("extension degree d must be >= 1");
  const double log_d_over_e = std::log(static_cast<double>(d_)) - 1.0;
  nu_sh_offset_.resize(d_ + 1);
  rescaled_offset_.resize(d_ + 1);
  plain_offset_.resize(d_ + 1);
  for (int k = 0; k <= d_; ++k) {
    nu_sh_offset_[k] = -LogBinomial(d_, k);
    plain_offset_[k] = nu_sh_offset_[k] - LogFactorial(d_ - k);
    rescaled_offset_[k] = plain_offset_[k] + (d_ - k) * log_d_over_e;
  }
}

int ExtendedWeightCtx::GroundCount(std::span<const int> s) const {
  return static_cast<int>(std::lower_bound(s.begin(), s.end(), n()) - s.begin());
}

Subset ExtendedWeightCtx::Ground(std::span<const int> s) const {
  return Subset(s.begin(), s.begin() + GroundCount(s));
}

double ExtendedWeightCtx::ProposalOffset(ProposalKind kind, int k) const {
  return kind == ProposalKind::kRescaled ? rescaled_offset_[k] : plain_offset_[k];
}

namespace {

void CheckExtended(const ExtendedWeightCtx& ctx, std::span<const int> s) {
  if (static_cast<int>(s.size()) != ctx.d()) {
    throw std::invalid_argument("extended set must have exactly d elements");
  }
  if (!IsValidSubset(s, ctx.universe())) {
    throw std::invalid_argument("extended set must be sorted within [0, n+d)");
  }
}

}  // namespace

double LogNuSh(const ExtendedWeightCtx& ctx, std::span<const int> s) {
  CheckExtended(ctx, s);
  const int k = ctx.GroundCount(s);
  const double lw = ctx.base().LogWeight(s.first(k));
  if (lw == kNegInf) return kNegInf;
  return ctx.NuShOffset(k) + lw;
}

double LogProposalWeight(const ExtendedWeightCtx& ctx, ProposalKind kind,
                         std::span<const int> s) {
  CheckExtended(ctx, s);
  const int k = ctx.GroundCount(s);
  const double lw = ctx.base().LogWeight(s.first(k));
  if (lw == kNegInf) return kNegInf;
  return ctx.ProposalOffset(kind, k) + lw;
}

double LogMu(const ExtendedWeightCtx& ctx, std::span<const int> s) {
  return LogProposalWeight(ctx, ProposalKind::kRescaled, s);
}

bool CheckRatioBounds(const ExtendedWeightCtx& ctx) {
  const int d = ctx.d();
  if (Binomial(ctx.universe(), d) > 1000000) {
    throw std::invalid_argument("ratio-bound check needs C(n+d, d) <= 1e6");
  }
  std::vector<double> log_sh;
  std::vector<double> log_mu;
  ForEachCombination(ctx.universe(), d, [&](const Subset& s) {
    const double a = LogNuSh(ctx, s);
    if (a != kNegInf) {
      log_sh.push_back(a);
      log_mu.push_back(LogMu(ctx, s));
    }
    return true;
  });
  if (log_sh.empty()) throw std::invalid_argument("nu_sh has empty support");
  auto log_normalizer = [](const std::vector<double>& v) {
    const double m = *std::max_element(v.begin(), v.end());
    double acc = 0.0;
    for (double x : v) acc += std::exp(x - m);
    return m + std::log(acc);
  };
  const double log_z_sh = log_normalizer(log_sh);
  const double log_z_mu = log_normalizer(log_mu);
  // With both normalized, mu = g(k) nu_sh / Z where g(k) = log_mu - log_sh
  // before normalization; Z = sum g(k) nu_sh(S).
  std::vector<double> log_g_sh(log_sh.size());
  for (std::size_t t = 0; t < log_sh.size(); ++t) {
    log_g_sh[t] = (log_mu[t] - log_sh[t]) + (log_sh[t] - log_z_sh);
  }
  const double log_z = log_normalizer(log_g_sh);
  const double log_lower = 0.5 * std::log(2.0 * std::numbers::pi) - d * std::log(2.0);
  const double log_upper = 1.0 + 0.5 * std::log(static_cast<double>(d));
  constexpr double kSlack = 1e-12;
  for (std::size_t t = 0; t < log_sh.size(); ++t) {
    const double log_ratio = (log_sh[t] - log_z_sh) - (log_mu[t] - log_z_mu);
    if (log_ratio < log_lower + log_z - kSlack) return false;
    if (log_ratio > log_upper + log_z + kSlack) return false;
  }
  return true;
}

}  // namespace slc
