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

#include "setcover/common.hpp"

namespace setcover::lp {

enum class Status { kOptimal, kInfeasible, kIterationLimit };

struct Result {
  Status status = Status::kInfeasible;
  Vec x;
  double objective = 0.0;
  int iterations = 0;
};

// Dense two-phase tableau simplex with Bland's rule, for desk-scale problems
// (tens of variables and rows):
//
//   maximize c'x  subject to  A x <= b,  lo <= x <= hi.
//
// All bounds must be finite, which also rules out unbounded programs.
Result MaximizeBoxed(const Vec& c, const Mat& A, const Vec& b, const Vec& lo,
                     const Vec& hi, int max_iter = 5000);

const char* StatusName(Status status);

}  // namespace setcover::lp
