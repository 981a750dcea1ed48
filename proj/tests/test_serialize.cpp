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

#include <string>

#include "doctest.h"
#include "setcover/serialize.hpp"

using namespace setcover;

namespace {

std::string ErrorOf(const Json& j) {
  try {
    InstanceFromJson(j);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    return e.what();
  }
  return "";
}

Json T1Instance() {
  return Json::parse(R"({
    "schema": "setcover-kit/1", "kind": "inclusion", "x0": [0],
    "inclusion": {
      "psi": {"kind": "dilation", "x_space": {"dim": 1, "norm": "euclidean"}, "y_space": {"dim": 2, "norm": "euclidean"},
              "y0": [0, 0], "a": 1, "b": 0, "anchor": [0]},
      "phi": {"kind": "ball_valued", "x_space": {"dim": 1, "norm": "euclidean"}, "y_space": {"dim": 2, "norm": "euclidean"},
              "center": {"kind": "affine", "m": [[0], [0]], "c": [0, 0]}, "c0": 1, "c1": 0.5}
    }})");
}

}  // namespace

TEST_CASE("reals: non-finite sentinels and round-trip precision") {
  CHECK(RealToJson(kInf) == "+inf");
  CHECK(RealToJson(-kInf) == "-inf");
  CHECK(RealFromJson(Json("+inf"), "$") == kInf);
  const double v = 0.1 + 0.2;
  CHECK(RealFromJson(Json::parse(Json(v).dump()), "$") == v);
  CHECK_THROWS_AS(RealFromJson(Json("abc"), "$"), Error);
}

TEST_CASE("sets, maps and objectives round-trip") {
  const auto e2 = NormedSpace::Euclidean(2);
  Mat v(3, 2);
  v << 0, 0, 1, 0, 0.25, 1.0 / 3.0;
  const std::vector<SetRep> sets = {Ball{Vec::Ones(2), 2.0}, Box{Vec::Zero(2), Vec::Ones(2)}, VPolytope{v},
                                    Orthant{Vec::Zero(2)}, Enlarge(e2, VPolytope{v}, 0.5), Sphere{Vec::Zero(2), 1.0}};
  for (const auto& s : sets) CHECK(ToJson(SetFromJson(ToJson(s))) == ToJson(s));

  auto base = std::make_shared<const MapSpec>(MapSpec(e2, e2, Dilation{Vec::Zero(2), 3.0, 0.0, Vec::Zero(2)}));
  const std::vector<MapSpec> maps = {
      *base,
      MapSpec(e2, e2, Sum{base, AffineFn{0.5 * Mat::Identity(2, 2), Vec::Ones(2)}}),
      MapSpec(e2, e2, Composed{AffineFn{2.0 * Mat::Identity(2, 2), Vec::Zero(2)}, base}),
      MapSpec(e2, NormedSpace::Max(2), Epigraphical{Mat::Identity(2, 2)}),
      MapSpec(NormedSpace::P(1, 3.0), e2, SphereScale{})};
  for (const auto& m : maps) CHECK(ToJson(MapFromJson(ToJson(m))) == ToJson(m));

  const ObjectiveSpec ws(WeightedSum{{1.0, 2.0}, {std::make_shared<const ObjectiveSpec>(AbsCoord{1}),
                                                  std::make_shared<const ObjectiveSpec>(LinearObjective{Vec::Ones(2)})}});
  CHECK(ToJson(ObjectiveFromJson(ToJson(ws))) == ToJson(ws));
}

TEST_CASE("instance files: unknown fields are rejected with their path") {
  CHECK_NOTHROW(InstanceFromJson(T1Instance()));
  Json j = T1Instance();
  j["inclusion"]["psi"]["colour"] = "red";
  CHECK(ErrorOf(j).find("$.inclusion.psi.colour: unknown field") != std::string::npos);
  j = T1Instance();
  j["bogus"] = 1;
  CHECK(ErrorOf(j).find("$.bogus") != std::string::npos);
  j = T1Instance();
  j["schema"] = "setcover-kit/0";
  CHECK(ErrorOf(j).find("$.schema") != std::string::npos);
  j = T1Instance();
  j["inclusion"]["phi"].erase("center");
  CHECK(ErrorOf(j).find("$.inclusion.phi: missing field 'center'") != std::string::npos);
  j = T1Instance();
  j["inclusion"]["psi"]["a"] = "x";
  CHECK(ErrorOf(j).find("$.inclusion.psi.a") != std::string::npos);
  j = T1Instance();
  j["inclusion"]["psi"]["y0"] = Json::array({0, 0, 0});
  CHECK(ErrorOf(j).find("$.inclusion.psi") != std::string::npos);
}

TEST_CASE("solve traces keep the first and last iterates when truncated") {
  SolveTrace t;
  for (int k = 0; k < 10; ++k) t.iterates.push_back({Vec::Constant(1, k), 1.0 / (k + 1), 0.1});
  t.x_star = Vec::Constant(1, 9);
  const Json j = ToJson(t, 4);
  REQUIRE(j["iterates"].size() == 4);
  CHECK(j["iterates"][0]["k"] == 0);
  CHECK(j["iterates"][3]["k"] == 9);
  CHECK(j["iterates_omitted"] == 6);
  CHECK(ToJson(t)["iterates"].size() == 10);
}

TEST_CASE("certificates serialize verdicts and counts") {
  Certificate c;
  c.subject = "x";
  c.violations.push_back(Violation{});
  c.violations.back().conclusive = true;
  const Json j = ToJson(c);
  CHECK(j["verdict"] == "falsified");
  CHECK(j["violation_count"] == 1);
  CHECK(j["conclusive_count"] == 1);
}
