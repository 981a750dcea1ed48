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
#include "setcover/certify.hpp"

using namespace setcover;

namespace {

const NormedSpace E1 = NormedSpace::Euclidean(1);
const NormedSpace E2 = NormedSpace::Euclidean(2);

MapSpec Dil(double a) { return MapSpec(E1, E2, Dilation{Vec::Zero(2), a, 0.0, Vec::Zero(1)}); }

CertifyOptions Opts(int trials, std::uint64_t seed = 1) {
  CertifyOptions o;
  o.trials = trials;
  o.seed = seed;
  return o;
}

int Conclusive(const Certificate& c) {
  int n = 0;
  for (const auto& v : c.violations) n += v.conclusive ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("covering versus set-covering on the sphere-scale map") {
  const MapSpec ss(E1, E2, SphereScale{});
  const Certificate cov = CheckCovering(ss, 1.0, Opts(60));
  CHECK(cov.verdict() == Verdict::kNoCounterexample);
  CHECK(cov.trials == 60);
  const Certificate cov2 = CheckCovering(ss, 2.0, Opts(60));
  CHECK(cov2.verdict() == Verdict::kFalsified);
  for (double a : {0.1, 1.0}) {
    const Certificate c = CheckSetCovering(ss, a, Opts(60));
    CHECK(c.verdict() == Verdict::kFalsified);
    CHECK(Conclusive(c) == static_cast<int>(c.violations.size()));
    for (const auto& v : c.violations) CHECK(RecheckViolation(ss, Property::kSetCovering, a, v));
  }
}

TEST_CASE("dilation is set-covering below its constant and not above") {
  CHECK(CheckCovering(Dil(1.0), 0.9, Opts(60)).verdict() == Verdict::kNoCounterexample);
  CHECK(CheckSetCovering(Dil(1.0), 0.99, Opts(100)).verdict() == Verdict::kNoCounterexample);
  const Certificate c = CheckSetCovering(Dil(1.0), 1.5, Opts(50));
  CHECK(c.verdict() == Verdict::kFalsified);
}

TEST_CASE("certificates are schedule-independent") {
  const MapSpec ss(E1, E2, SphereScale{});
  CertifyOptions one = Opts(80, 77), four = Opts(80, 77);
  four.threads = 4;
  const Certificate a = CheckSetCovering(ss, 0.5, one), b = CheckSetCovering(ss, 0.5, four);
  REQUIRE(a.violations.size() == b.violations.size());
  for (std::size_t i = 0; i < a.violations.size(); ++i) {
    CHECK(a.violations[i].trial == b.violations[i].trial);
    CHECK(a.violations[i].x == b.violations[i].x);
    CHECK(a.violations[i].r == b.violations[i].r);
    CHECK(a.violations[i].margin == b.violations[i].margin);
  }
}

TEST_CASE("inverse-map error bound and Hausdorff estimate on the dilation") {
  const MapSpec d = Dil(1.0);
  // Inv(Ball(0, 3)) = {|x| >= 3}.
  CHECK(DilationInverseRadius(d, Ball{Vec::Zero(2), 3.0}) == doctest::Approx(3.0));
  InverseOptions io;
  io.base = Opts(100, 5);
  CHECK(CheckInverseErrorBound(d, 0.99, io).verdict() == Verdict::kNoCounterexample);
  CHECK(CheckInverseHausdorff(d, 0.99, io).verdict() == Verdict::kNoCounterexample);
  io.sets = {Ball{Vec::Zero(2), 3.0}};
  CHECK(CheckInverseErrorBound(d, 0.99, io).verdict() == Verdict::kNoCounterexample);
}

TEST_CASE("the covering-only counterexamples also break the inverse error bound") {
  InverseOptions io;
  io.base = Opts(100, 3);
  const MapSpec ss(E1, E2, SphereScale{});
  const MapSpec ub(E1, E1, UnitBallTranslate{});
  CHECK(CheckInverseErrorBound(ss, 1.0, io).verdict() == Verdict::kFalsified);
  CHECK(CheckInverseErrorBound(ub, 1.0, io).verdict() == Verdict::kFalsified);
}

TEST_CASE("excess lower semicontinuity on continuous catalog instances") {
  const MapSpec phi(E1, E2, BallValued{AffineFn{Mat::Zero(2, 1), Vec::Zero(2)}, 1.0, 0.5, Vec::Zero(1)});
  for (double x0 : {0.0, 1.0, 2.0, -3.5}) {
    const Certificate c = CheckExcSemicontinuity(phi, Dil(1.0), Vec::Constant(1, x0), Opts(40));
    CHECK(c.verdict() == Verdict::kNoCounterexample);
  }
}

TEST_CASE("property names are stable") {
  CHECK(PropertyName(Property::kSetCovering) == "set_covering");
  CHECK(VerdictName(Verdict::kFalsified) == "falsified");
  CHECK(VerdictName(Verdict::kNoCounterexample) == "no-counterexample-found");
}
