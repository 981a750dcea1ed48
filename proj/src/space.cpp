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

#include "setcover/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace setcover {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kNotSetCovering: return "not-set-covering";
    case ErrorCode::kConstantExhausted: return "constant-exhausted";
    case ErrorCode::kNoRule: return "no-rule";
    case ErrorCode::kUnboundedImage: return "unbounded-image";
    case ErrorCode::kEmptyImage: return "empty-image";
    case ErrorCode::kNotRepresentable: return "not-representable";
    case ErrorCode::kBudgetExhausted: return "budget-exhausted";
    case ErrorCode::kNotExpanding: return "not-expanding";
    case ErrorCode::kLpAnomaly: return "lp-anomaly";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

NormedSpace::NormedSpace(int dim, NormKind kind, double p)
    : dim_(dim), kind_(kind), p_(p) {
  if (dim < 1) {
    throw Error(ErrorCode::kInvalidArgument, "space dimension must be >= 1");
  }
  if (kind == NormKind::kP) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
      throw Error(ErrorCode::kInvalidArgument, "p-norm requires finite p >= 1");
    }
    // Canonicalize so equality and kernel dispatch see one representation.
    if (p == 2.0) {
      kind_ = NormKind::kEuclidean;
    }
  } else if (kind == NormKind::kEuclidean) {
    p_ = 2.0;
  } else {
    p_ = kInf;
  }
}

double NormedSpace::p() const {
  switch (kind_) {
    case NormKind::kEuclidean: return 2.0;
    case NormKind::kMax: return kInf;
    case NormKind::kP: return p_;
  }
  return p_;
}

double NormedSpace::norm(const Vec& v) const {
  switch (kind_) {
    case NormKind::kEuclidean: return v.norm();
    case NormKind::kMax: return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
    case NormKind::kP: {
      if (p_ == 1.0) return v.cwiseAbs().sum();
      // Scale by the largest entry to avoid overflow in pow.
      const double m = v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
      if (m == 0.0) return 0.0;
      double acc = 0.0;
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        acc += std::pow(std::abs(v[i]) / m, p_);
      }
      return m * std::pow(acc, 1.0 / p_);
    }
  }
  return 0.0;
}

double NormedSpace::dual_norm(const Vec& a) const {
  switch (kind_) {
    case NormKind::kEuclidean: return a.norm();
    case NormKind::kMax: return a.cwiseAbs().sum();
    case NormKind::kP: {
      if (p_ == 1.0) return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
      const double q = p_ / (p_ - 1.0);
      return NormedSpace(static_cast<int>(std::max<Eigen::Index>(1, a.size())),
                         NormKind::kP, q)
          .norm(a);
    }
  }
  return 0.0;
}

double NormedSpace::ones_norm() const {
  switch (kind_) {
    case NormKind::kEuclidean: return std::sqrt(static_cast<double>(dim_));
    case NormKind::kMax: return 1.0;
    case NormKind::kP: return std::pow(static_cast<double>(dim_), 1.0 / p_);
  }
  return 1.0;
}

double NormedSpace::lower_equivalence_to_euclidean() const {
  // ||v||_p >= n^(1/p - 1/2) ||v||_2 for p > 2, and ||v||_p >= ||v||_2 for
  // p <= 2.
  const double pe = p();
  if (pe <= 2.0) return 1.0;
  const double inv = std::isinf(pe) ? 0.0 : 1.0 / pe;
  return std::pow(static_cast<double>(dim_), inv - 0.5);
}

void NormedSpace::check(const Vec& v, const char* what) const {
  if (v.size() != dim_) {
    std::ostringstream os;
    os << what << ": expected dimension " << dim_ << ", got " << v.size();
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
}

std::string NormedSpace::describe() const {
  std::ostringstream os;
  os << "R^" << dim_ << " ";
  switch (kind_) {
    case NormKind::kEuclidean: os << "euclidean"; break;
    case NormKind::kMax: os << "max"; break;
    case NormKind::kP: os << "p=" << p_; break;
  }
  return os.str();
}

}  // namespace setcover
