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

// Subsets of a ground set and the small amount of combinatorics shared by the
// enumeration oracles. Elements are 0-based internally; text output is
// 1-based.

#ifndef SLC_SUBSET_H_
#define SLC_SUBSET_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace slc {

// Sorted, duplicate-free element indices.
using Subset = std::vector<int>;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::uint64_t ToMask(std::span<const int> s);
Subset FromMask(std::uint64_t mask);

// True iff s is strictly increasing with entries in [0, universe).
bool IsValidSubset(std::span<const int> s, int universe);

// Sorted insert / erase; the element must be absent / present.
Subset With(const Subset& s, int e);
Subset Without(const Subset& s, int e);
bool Contains(std::span<const int> s, int e);

double LogFactorial(int m);
double LogBinomial(int n, int k);
// Exact binomial, saturating at uint64 max.
std::uint64_t Binomial(int n, int k);

// Calls fn for every k-subset of {0..m-1} in lexicographic order. Stops early
// if fn returns false.
void ForEachCombination(int m, int k,
                        const std::function<bool(const Subset&)>& fn);

// Calls fn for every subset of {0..m-1} with size <= max_size, ordered by
// size then lexicographically.
void ForEachSubsetUpTo(int m, int max_size,
                       const std::function<bool(const Subset&)>& fn);

// "{1,3}" style, 1-based.
std::string FormatSubset(std::span<const int> s);

}  // namespace slc

#endif  // SLC_SUBSET_H_
