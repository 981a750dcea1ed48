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

#include "doctest.h"
#include "setcover/lp.hpp"

using namespace setcover;

TEST_CASE("boxed LP reaches the vertex optimum") {
  // max x + y  s.t.  x + 2y <= 4, 3x + y <= 6, 0 <= x, y <= 10.
  Mat a(2, 2);
  a << 1, 2, 3, 1;
  const Vec b = (Vec(2) << 4, 6).finished();
  const auto r = lp::MaximizeBoxed((Vec(2) << 1, 1).finished(), a, b, Vec::Zero(2), Vec::Constant(2, 10));
  REQUIRE(r.status == lp::Status::kOptimal);
  CHECK(r.objective == doctest::Approx(2.8).epsilon(1e-12));
  CHECK(r.x[0] == doctest::Approx(1.6).epsilon(1e-12));
  CHECK(r.x[1] == doctest::Approx(1.2).epsilon(1e-12));
}

TEST_CASE("boxed LP with the optimum on the box") {
  Mat a(1, 2);
  a << 1, 1;
  const auto r = lp::MaximizeBoxed((Vec(2) << 1, -1).finished(), a, Vec::Constant(1, 100), -Vec::Ones(2), Vec::Ones(2));
  REQUIRE(r.status == lp::Status::kOptimal);
  CHECK(r.objective == doctest::Approx(2.0));
}

TEST_CASE("boxed LP detects infeasibility") {
  Mat a(1, 1);
  a << 1;
  // x <= -1 with 0 <= x <= 1.
  const auto r = lp::MaximizeBoxed(Vec::Ones(1), a, Vec::Constant(1, -1), Vec::Zero(1), Vec::Ones(1));
  CHECK(r.status == lp::Status::kInfeasible);
  CHECK(std::string(lp::StatusName(r.status)) == "infeasible");
}
