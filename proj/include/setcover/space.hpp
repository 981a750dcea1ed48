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

#include <string>

#include "setcover/common.hpp"

namespace setcover {

enum class NormKind { kEuclidean, kMax, kP };

// Finite-dimensional real normed space: the metric context of every
// computation.  The p-norm with p == 1 is the taxicab norm.
class NormedSpace {
 public:
  NormedSpace() = default;
  NormedSpace(int dim, NormKind kind, double p = 2.0);

  static NormedSpace Euclidean(int dim) { return {dim, NormKind::kEuclidean}; }
  static NormedSpace Max(int dim) { return {dim, NormKind::kMax}; }
  static NormedSpace P(int dim, double p) { return {dim, NormKind::kP, p}; }

  int dim() const { return dim_; }
  NormKind kind() const { return kind_; }
  // Exponent of the norm; 2 for euclidean and +inf for max.
  double p() const;

  double norm(const Vec& v) const;
  double dist(const Vec& a, const Vec& b) const { return norm(a - b); }
  // Norm of the dual space, so that |<a, y>| <= dual_norm(a) * norm(y).
  double dual_norm(const Vec& a) const;
  // ||(1, ..., 1)||, the norm of the all-ones vector.
  double ones_norm() const;
  // Smallest c with norm(v) >= c * ||v||_2 for all v.
  double lower_equivalence_to_euclidean() const;

  void check(const Vec& v, const char* what) const;

  std::string describe() const;

  bool operator==(const NormedSpace&) const = default;

 private:
  int dim_ = 1;
  NormKind kind_ = NormKind::kEuclidean;
  double p_ = 2.0;
};

}  // namespace setcover
