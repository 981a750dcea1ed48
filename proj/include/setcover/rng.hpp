// Copyright 2026 The setcover-kit Authors
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

#pragma once

#include <cstdint>

#include "setcover/common.hpp"

namespace setcover {

// Per-trial seed derivation: results never depend on evaluation order.
std::uint64_t DeriveSeed(std::uint64_t root, std::uint64_t index);

// Deterministic generator with library-independent distributions, so seeded
// outputs are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  // Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  double exponential();
  // log-uniform in [lo, hi], lo > 0.
  double log_uniform(double lo, double hi);
  std::uint64_t below(std::uint64_t n);

  Vec uniform_box(const Vec& lo, const Vec& hi);
  Vec gaussian(int dim);

 private:
  std::uint64_t s_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace setcover
