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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace slc {
namespace {

void CheckExponent(const ExponentVector& alpha, int num_vars) {
  if (static_cast<int>(alpha.size()) != num_vars) {
    throw std::invalid_argument("exponent vector length " +
                                std::to_string(alpha.size()) +
                                " != num_vars " + std::to_string(num_vars));
  }
  for (int a : alpha) {
    if (a < 0) throw std::invalid_argument("negative exponent");
  }
}

bool IsAffineExponent(const ExponentVector& alpha) {
  return std::all_of(alpha.begin(), alpha.end(), [](int a) { return a <= 1; });
}

int Find(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

SparsePolynomial::SparsePolynomial(int num_vars) : num_vars_(num_vars) {
  if (num_vars < 1) throw std::invalid_argument("num_vars must be positive");
}

SparsePolynomial::SparsePolynomial(int num_vars, TermMap terms)
    : SparsePolynomial(num_vars) {
  for (auto& [alpha, c] : terms) {
    CheckExponent(alpha, num_vars_);
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw std::invalid_argument("coefficients must be finite and >= 0");
    }
    if (c > 0.0) terms_.emplace(alpha, c);
  }
}

SparsePolynomial SparsePolynomial::Constant(int num_vars, double c) {
  SparsePolynomial p(num_vars);
  p.AddTerm(ExponentVector(num_vars, 0), c);
  return p;
}

SparsePolynomial SparsePolynomial::Monomial(ExponentVector alpha, double c) {
  SparsePolynomial p(static_cast<int>(alpha.size()));
  p.AddTerm(alpha, c);
  return p;
}

void SparsePolynomial::AddTerm(const ExponentVector& alpha, double c) {
  CheckExponent(alpha, num_vars_);
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("coefficients must be finite and >= 0");
  }
  if (c == 0.0) return;
  terms_[alpha] += c;
}

double SparsePolynomial::Coefficient(const ExponentVector& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? 0.0 : it->second;
}

int SparsePolynomial::Degree() const {
  int deg = -1;
  for (const auto& [alpha, c] : terms_) deg = std::max(deg, TotalDegree(alpha));
  return deg;
}

bool SparsePolynomial::IsHomogeneous() const {
  if (terms_.empty()) return true;
  const int deg = TotalDegree(terms_.begin()->first);
  return std::all_of(terms_.begin(), terms_.end(), [deg](const auto& t) {
    return TotalDegree(t.first) == deg;
  });
}

bool SparsePolynomial::IsMultiaffine() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return IsAffineExponent(t.first); });
}

int SparsePolynomial::MaxDegreeIn(int var) const {
  if (var < 0 || var >= num_vars_) throw std::out_of_range("variable index");
  int m = 0;
  for (const auto& [alpha, c] : terms_) m = std::max(m, alpha[var]);
  return m;
}

SparsePolynomial operator+(const SparsePolynomial& a,
                           const SparsePolynomial& b) {
  if (a.num_vars() != b.num_vars()) {
    throw std::invalid_argument("adding polynomials in different rings");
  }
  SparsePolynomial out = a;
  for (const auto& [alpha, c] : b.terms()) out.AddTerm(alpha, c);
  return out;
}

SparsePolynomial operator*(double s, const SparsePolynomial& p) {
  if (!(s >= 0.0)) throw std::invalid_argument("negative scalar");
  SparsePolynomial out(p.num_vars());
  for (const auto& [alpha, c] : p.terms()) out.AddTerm(alpha, s * c);
  return out;
}

double Eval(const SparsePolynomial& p, std::span<const double> point) {
  if (static_cast<int>(point.size()) != p.num_vars()) {
    throw std::invalid_argument("evaluation point has wrong dimension");
  }
  double sum = 0.0;
  for (const auto& [alpha, c] : p.terms()) {
    double term = c;
    for (int i = 0; i < p.num_vars(); ++i) {
      switch (alpha[i]) {
        case 0:
          break;
        case 1:
          term *= point[i];
          break;
        default:
          term *= std::pow(point[i], alpha[i]);
      }
    }
    sum += term;
  }
  return sum;
}

SparsePolynomial PartialDerivative(const SparsePolynomial& p,
                                   const ExponentVector& alpha) {
  CheckExponent(alpha, p.num_vars());
  SparsePolynomial out(p.num_vars());
  // Multiaffine inputs are annihilated by any repeated derivative.
  if (!IsAffineExponent(alpha) && p.IsMultiaffine()) return out;
  for (const auto& [beta, c] : p.terms()) {
    ExponentVector reduced(beta.size());
    double coeff = c;
    bool survives = true;
    for (std::size_t i = 0; i < beta.size() && survives; ++i) {
      if (beta[i] < alpha[i]) {
        survives = false;
        break;
      }
      for (int t = 0; t < alpha[i]; ++t) coeff *= beta[i] - t;
      reduced[i] = beta[i] - alpha[i];
    }
    if (survives) out.AddTerm(reduced, coeff);
  }
  return out;
}

Eigen::MatrixXd HessianAt(const SparsePolynomial& p,
                          std::span<const double> point) {
  const int n = p.num_vars();
  if (static_cast<int>(point.size()) != n) {
    throw std::invalid_argument("evaluation point has wrong dimension");
  }
  Eigen::MatrixXd h(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      ExponentVector alpha(n, 0);
      alpha[i] += 1;
      alpha[j] += 1;
      h(i, j) = Eval(PartialDerivative(p, alpha), point);
      h(j, i) = h(i, j);
    }
  }
  return h;
}

bool IsIndecomposable(const SparsePolynomial& p) {
  const int n = p.num_vars();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<bool> node(n, false);
  std::vector<int> present;
  for (const auto& [alpha, c] : p.terms()) {
    present.clear();
    for (int i = 0; i < n; ++i) {
      if (alpha[i] > 0) present.push_back(i);
    }
    // Non-negative coefficients cannot cancel, so d_i d_j p != 0 iff some
    // term contains both variables.
    for (int i : present) node[i] = true;
    for (std::size_t t = 1; t < present.size(); ++t) {
      parent[Find(parent, present[t])] = Find(parent, present[0]);
    }
  }
  int root = -1;
  for (int i = 0; i < n; ++i) {
    if (!node[i]) continue;
    const int r = Find(parent, i);
    if (root == -1) {
      root = r;
    } else if (r != root) {
      return false;
    }
  }
  return true;
}

SparsePolynomial ParsePolynomial(std::istream& in) {
  std::string line;
  int num_vars = -1;
  int line_no = 0;
  std::vector<std::pair<ExponentVector, double>> parsed;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    fields.imbue(std::locale::classic());
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() < 2) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected coefficient and exponents");
    }
    const int vars = static_cast<int>(tokens.size()) - 1;
    if (num_vars == -1) num_vars = vars;
    if (vars != num_vars) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": inconsistent number of variables");
    }
    try {
      std::size_t used = 0;
      const double c = std::stod(tokens[0], &used);
      if (used != tokens[0].size()) throw std::invalid_argument("coefficient");
      ExponentVector alpha(vars);
      for (int i = 0; i < vars; ++i) {
        alpha[i] = std::stoi(tokens[i + 1], &used);
        if (used != tokens[i + 1].size()) throw std::invalid_argument("exponent");
      }
      parsed.emplace_back(std::move(alpha), c);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": malformed term");
    }
  }
  if (num_vars < 1) throw std::invalid_argument("polynomial file has no terms");
  SparsePolynomial p(num_vars);
  for (const auto& [alpha, c] : parsed) p.AddTerm(alpha, c);
  return p;
}

SparsePolynomial ParsePolynomial(const std::string& text) {
  std::istringstream in(text);
  return ParsePolynomial(in);
}

void WritePolynomial(std::ostream& out, const SparsePolynomial& p) {
  char buf[64];
  for (const auto& [alpha, c] : p.terms()) {
    std::snprintf(buf, sizeof(buf), "%.17g", c);
    out << buf;
    for (int a : alpha) out << ' ' << a;
    out << '\n';
  }
}

std::string ToString(const SparsePolynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [alpha, c] : p.terms()) {
    if (!first) out << " + ";
    first = false;
    out << c;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] == 0) continue;
      out << "*x" << i + 1;
      if (alpha[i] > 1) out << '^' << alpha[i];
    }
  }
  return out.str();
}

}  // namespace slc
