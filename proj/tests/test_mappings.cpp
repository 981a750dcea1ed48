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

// Catalog constants, cover-witness contract and interior-radius
// classification. Oracles: hand formulas evaluated in the test and the
// witness inclusion checked on sampled points of the enlarged image.
#include <cmath>

#include "doctest.h"
#include "setcover/mappings.hpp"

using namespace setcover;

namespace {

const NormedSpace E1 = NormedSpace::Euclidean(1);
const NormedSpace E2 = NormedSpace::Euclidean(2);

MapSpec T1Psi() { return MapSpec(E1, E2, Dilation{Vec::Zero(2), 1.0, 0.0, Vec::Zero(1)}); }

MapSpec Process(const Mat& cx, const Mat& cy, const NormedSpace& xs, const NormedSpace& ys) {
  return MapSpec(xs, ys, PolyhedralProcess{cx, cy});
}

// The witness contract: d(u, x) <= rho and the alpha*rho enlargement of
// Psi(x) lies in Psi(u), checked on sampled points of the enlargement.
void CheckWitnessContract(const MapSpec& m, double alpha, std::uint64_t seed) {
  Rng rng(seed);
  const NormedSpace& xs = m.x_space();
  const NormedSpace& ys = m.y_space();
  for (int t = 0; t < 25; ++t) {
    const Vec x = rng.uniform_box(Vec::Constant(xs.dim(), -5), Vec::Constant(xs.dim(), 5));
    const double rho = rng.log_uniform(1e-2, 10.0);
    const auto u = CoverWitness(m, x, rho);
    REQUIRE(u.has_value());
    CHECK(xs.dist(*u, x) <= rho * (1 + 1e-12));
    const SetRep big = Enlarge(ys, EvalMap(m, x), alpha * rho);
    const SetRep target = EvalMap(m, *u);
    const Box bbox{Vec::Constant(ys.dim(), -40), Vec::Constant(ys.dim(), 40)};
    for (const auto& y : Sample(ys, big, 48, seed + t, bbox)) {
      const double scale = std::max({1.0, x.cwiseAbs().maxCoeff(), rho, y.cwiseAbs().maxCoeff()});
      CHECK(Dist(ys, y, target) <= 1e-7 * scale);
    }
  }
}

}  // namespace

TEST_CASE("dilation constants and witness") {
  const MapSpec m = T1Psi();
  CHECK(AlphaOf(m).alpha == 1.0);
  CHECK(BetaOf(m) == 1.0);
  CHECK((*CoverWitness(m, Vec::Constant(1, 2.0), 1.0))[0] == 3.0);
  // At the anchor the witness moves along the first basis direction.
  CHECK((*CoverWitness(m, Vec::Zero(1), 0.5))[0] == 0.5);
  CheckWitnessContract(m, 0.99, 1);
  const MapSpec m2(E2, E2, Dilation{Vec::Ones(2), 3.0, 0.5, Vec::Ones(2)});
  CHECK(AlphaOf(m2).alpha == 3.0);
  CheckWitnessContract(m2, 0.99 * 3.0, 2);
}

TEST_CASE("sublinear alpha is 1 / max dual form norm on randomized systems") {
  Rng rng(99);
  for (int t = 0; t < 20; ++t) {
    const int groups = 1 + static_cast<int>(rng.below(4));
    const bool max_y = t % 2 == 0;
    const NormedSpace ys = max_y ? NormedSpace::Max(2) : NormedSpace::Euclidean(2);
    SublinearSystem s;
    double worst = 0.0;
    for (int g = 0; g < groups; ++g) {
      const int forms = 1 + static_cast<int>(rng.below(4));
      Mat f(forms, 2);
      for (int j = 0; j < forms; ++j) {
        const double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
        f(j, 0) = a;
        f(j, 1) = b;
        // Dual of max is l1, dual of euclidean is euclidean.
        worst = std::max(worst, max_y ? std::abs(a) + std::abs(b) : std::sqrt(a * a + b * b));
      }
      s.groups.push_back({f, 0.0});
    }
    const MapSpec m(NormedSpace::Max(groups), ys, s);
    CHECK(AlphaOf(m).alpha == 1.0 / worst);
  }
}

TEST_CASE("sublinear worked example") {
  SublinearSystem s;
  s.groups.push_back({(Mat(2, 1) << 2.0, -2.0).finished(), 0.0});
  CHECK(AlphaOf(MapSpec(NormedSpace::Max(1), E1, s)).alpha == 0.5);
  s.groups.push_back({(Mat(2, 1) << 1.0, -1.0).finished(), 0.0});
  const MapSpec m(NormedSpace::Max(2), E1, s);
  const Vec u = *CoverWitness(m, (Vec(2) << 1.0, -1.0).finished(), 0.5);
  CHECK(u[0] == 1.5);
  CHECK(u[1] == -1.5);
  // sign(0) = +1.
  CHECK((*CoverWitness(m, Vec::Zero(2), 0.5))[1] == 0.5);
  CheckWitnessContract(m, 0.99 * 0.5, 3);
  CHECK_THROWS_AS(MapSpec(E2, E1, s), Error);  // X must carry the max norm
}

TEST_CASE("epigraphical identity in the max norm has alpha 1") {
  const NormedSpace m2 = NormedSpace::Max(2);
  const MapSpec m(m2, m2, Epigraphical{Mat::Identity(2, 2)});
  CHECK(AlphaOf(m).alpha == 1.0);
  CheckWitnessContract(m, 0.99, 4);
  // Euclidean domain: ||I^{-1}||_- = sup over the unit cube of ||y||_2 = sqrt(2).
  const MapSpec me(E2, m2, Epigraphical{Mat::Identity(2, 2)});
  CHECK(AlphaOf(me).alpha == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CheckWitnessContract(me, 0.99 / std::sqrt(2.0), 9);
  Mat a(2, 2);
  a << 2, 1, 0, 1;
  const MapSpec skew(E2, m2, Epigraphical{a});
  CheckWitnessContract(skew, 0.99 * AlphaOf(skew).alpha, 5);
}

TEST_CASE("interior radius classifies the process fixtures") {
  // Theta(x) = {y : y_1 >= x, y_2 >= x}: graph is a translated orthant cone.
  const MapSpec orth = Process((Mat(2, 1) << 1, 1).finished(), (Mat(2, 2) << -1, 0, 0, -1).finished(), E1, E2);
  const InteriorReport r1 = InteriorRadius(orth);
  CHECK(r1.t_star > 0);
  CHECK(r1.alpha > 0);
  CHECK(r1.alpha <= 1.0 + 1e-12);
  CHECK((*CoverWitness(orth, Vec::Zero(1), 1.0))[0] == doctest::Approx(-1.0));
  CheckWitnessContract(orth, 0.99 * r1.alpha, 6);
  // Identity graph Theta(x) = {x}: no interior.
  const MapSpec id = Process((Mat(2, 1) << -1, 1).finished(), (Mat(2, 1) << 1, -1).finished(), E1, E1);
  const InteriorReport r2 = InteriorRadius(id);
  CHECK(r2.t_star == 0.0);
  CHECK(r2.alpha == 0.0);
  CHECK_THROWS_AS(AlphaOf(id), Error);
  // One-dimensional translate Theta(x) = x + R_+.
  const MapSpec tr = Process((Mat(1, 1) << 1).finished(), (Mat(1, 1) << -1).finished(), E1, E1);
  const InteriorReport r3 = InteriorRadius(tr);
  CHECK(r3.t_star > 0);
  CHECK(r3.alpha == doctest::Approx(1.0));
}

TEST_CASE("stability constructions") {
  auto base = std::make_shared<const MapSpec>(MapSpec(E2, E2, Dilation{Vec::Zero(2), 3.0, 0.0, Vec::Zero(2)}));
  const AffineFn g{0.5 * Mat::Identity(2, 2), Vec::Ones(2)};
  const MapSpec sum(E2, E2, Sum{base, g});
  CHECK(AlphaOf(sum).alpha == doctest::Approx(2.5));
  CheckWitnessContract(sum, 0.99 * 2.5, 7);
  const MapSpec bad(E2, E2, Sum{base, AffineFn{3.0 * Mat::Identity(2, 2), Vec::Zero(2)}});
  try {
    AlphaOf(bad);
    FAIL("expected constant-exhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConstantExhausted);
  }
  const MapSpec comp(E2, E2, Composed{AffineFn{2.0 * Mat::Identity(2, 2), Vec::Zero(2)}, base});
  CHECK(AlphaOf(comp).alpha == doctest::Approx(6.0));
  CheckWitnessContract(comp, 0.99 * 6.0, 8);
}

TEST_CASE("covering-only maps have no set-covering constant or witness") {
  const MapSpec ss(E1, E2, SphereScale{});
  CHECK_FALSE(CoverWitness(ss, Vec::Ones(1), 1.0).has_value());
  try {
    AlphaOf(ss);
    FAIL("expected not-set-covering");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotSetCovering);
  }
  const MapSpec ub(E1, E1, UnitBallTranslate{});
  CHECK_FALSE(CoverWitness(ub, Vec::Ones(1), 1.0).has_value());
}

TEST_CASE("ball-valued Lipschitz constant against the excess oracle") {
  const MapSpec phi(E1, E2, BallValued{AffineFn{Mat::Zero(2, 1), Vec::Zero(2)}, 1.0, 0.5, Vec::Zero(1)});
  CHECK(BetaOf(phi) == 0.5);
  // exc(Ball(0, r1), Ball(0, r2)) = max(0, r1 - r2): sampled quotient <= 1/2.
  const LipschitzEstimate est = EmpiricalLipschitz(phi, 200, 1);
  CHECK(est.value <= 0.5 + 1e-12);
  CHECK(est.value >= 0.49);
}
