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

#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace setcover {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Default geometric tolerance; every comparison against it is inclusive.
inline constexpr double kGeomTol = 1e-9;

// Safety factor applied to constants that are only valid on an open interval.
inline constexpr double kOpenIntervalFactor = 0.99;

enum class ErrorCode {
  kDimensionMismatch,
  kInvalidArgument,
  kNotSetCovering,
  kConstantExhausted,
  kNoRule,
  kUnboundedImage,
  kEmptyImage,
  kNotRepresentable,
  kBudgetExhausted,
  kNotExpanding,
  kLpAnomaly,
  kParse,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace setcover
