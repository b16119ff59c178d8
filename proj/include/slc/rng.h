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

#ifndef SLC_RNG_H_
#define SLC_RNG_H_

#include <cstdint>
#include <random>

namespace slc {

// Mixes a 64-bit value (splitmix64 finalizer). Used to derive independent
// stream seeds from a master seed.
std::uint64_t MixSeed(std::uint64_t x);

// Seedable, splittable generator. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the real-valued and Gaussian draws are
// implemented here rather than through <random> distributions so that traces
// are bitwise reproducible across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(MixSeed(seed)) {}

  // Independent stream for (master, index); e.g. one per chain.
  static Rng Stream(std::uint64_t master, std::uint64_t index);
  static Rng Stream(std::uint64_t master, std::uint64_t a, std::uint64_t b);

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), n > 0, without modulo bias.
  std::uint64_t Below(std::uint64_t n);

  // Standard normal via Box-Muller.
  double Normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace slc

#endif  // SLC_RNG_H_
