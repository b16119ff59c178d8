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

#include "slc/subset.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slc {

std::uint64_t ToMask(std::span<const int> s) {
  std::uint64_t m = 0;
  for (int e : s) {
    if (e < 0 || e >= 64) throw std::out_of_range("subset element out of mask range");
    m |= std::uint64_t{1} << e;
  }
  return m;
}

Subset FromMask(std::uint64_t mask) {
  Subset s;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1) s.push_back(i);
  }
  return s;
}

bool IsValidSubset(std::span<const int> s, int universe) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || s[i] >= universe) return false;
    if (i > 0 && s[i - 1] >= s[i]) return false;
  }
  return true;
}

Subset With(const Subset& s, int e) {
  Subset out;
  out.reserve(s.size() + 1);
  auto it = std::lower_bound(s.begin(), s.end(), e);
  out.insert(out.end(), s.begin(), it);
  out.push_back(e);
  out.insert(out.end(), it, s.end());
  return out;
}

Subset Without(const Subset& s, int e) {
  Subset out;
  out.reserve(s.size());
  for (int x : s) {
    if (x != e) out.push_back(x);
  }
  return out;
}

bool Contains(std::span<const int> s, int e) {
  return std::binary_search(s.begin(), s.end(), e);
}

double LogFactorial(int m) {
  // Summing logs keeps small factorials exact-ish and deterministic.
  if (m < 0) throw std::invalid_argument("negative factorial");
  double acc = 0.0;
  for (int i = 2; i <= m; ++i) acc += std::log(static_cast<double>(i));
  return acc;
}

double LogBinomial(int n, int k) {
  if (k < 0 || k > n) return kNegInf;
  k = std::min(k, n - k);
  double acc = 0.0;
  for (int i = 1; i <= k; ++i) {
    acc += std::log(static_cast<double>(n - k + i)) - std::log(static_cast<double>(i));
  }
  return acc;
}

std::uint64_t Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(acc);
}

void ForEachCombination(int m, int k,
                        const std::function<bool(const Subset&)>& fn) {
  if (k < 0 || k > m) return;
  Subset c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  while (true) {
    if (!fn(c)) return;
    int i = k - 1;
    while (i >= 0 && c[i] == m - k + i) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

void ForEachSubsetUpTo(int m, int max_size,
                       const std::function<bool(const Subset&)>& fn) {
  bool keep_going = true;
  for (int k = 0; k <= std::min(m, max_size) && keep_going; ++k) {
    ForEachCombination(m, k, [&](const Subset& s) {
      keep_going = fn(s);
      return keep_going;
    });
  }
}

std::string FormatSubset(std::span<const int> s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(s[i] + 1);
  }
  out += "}";
  return out;
}

}  // namespace slc
