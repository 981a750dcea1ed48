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

// Geometry kernels against independent oracles: closed forms derived by
// hand and brute-force enumerations written here, not in the library.
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "setcover/geometry.hpp"

using namespace setcover;

namespace {

double SegmentDist(const Vec& y, const Vec& a, const Vec& b) {
  const Vec ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0 ? std::clamp((y - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (a + t * ab - y).norm();
}

bool InTriangle(const Vec& y, const Vec& a, const Vec& b, const Vec& c) {
  auto cross = [](const Vec& u, const Vec& v, const Vec& w) {
    return (v[0] - u[0]) * (w[1] - u[1]) - (v[1] - u[1]) * (w[0] - u[0]);
  };
  const double d1 = cross(a, b, y), d2 = cross(b, c, y), d3 = cross(c, a, y);
  const bool neg = d1 < 0 || d2 < 0 || d3 < 0, pos = d1 > 0 || d2 > 0 || d3 > 0;
  return !(neg && pos);
}

// Euclidean distance from y to the convex hull of the rows of v (plane):
// zero inside some vertex triangle, otherwise the nearest hull edge, which
// is also the nearest of all vertex-pair segments.
double HullDistOracle(const Mat& v, const Vec& y) {
  const auto n = v.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      for (Eigen::Index k = j + 1; k < n; ++k)
        if (InTriangle(y, v.row(i).transpose(), v.row(j).transpose(), v.row(k).transpose())) return 0.0;
  double best = kInf;
  for (Eigen::Index i = 0; i < n; ++i) {
    best = std::min(best, (v.row(i).transpose() - y).norm());
    for (Eigen::Index j = i + 1; j < n; ++j) best = std::min(best, SegmentDist(y, v.row(i).transpose(), v.row(j).transpose()));
  }
  return best;
}

SublevelRegion UnitBoxRegion() {
  Mat f(4, 2);
  f << 1, 0, -1, 0, 0, 1, 0, -1;
  return SublevelRegion{{FormGroup{f, 1.0}}};
}

}  // namespace

TEST_CASE("ball over ball excess: closed form and boundary-sampling oracle") {
  const auto e2 = NormedSpace::Euclidean(2);
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const Vec c1 = rng.uniform_box(Vec::Constant(2, -5), Vec::Constant(2, 5));
    const Vec c2 = rng.uniform_box(Vec::Constant(2, -5), Vec::Constant(2, 5));
    const double r1 = rng.uniform(0, 3), r2 = rng.uniform(0, 3);
    double oracle = 0.0;
    for (int s = 0; s < 4096; ++s) {
      const double th = 2 * M_PI * s / 4096;
      const Vec y = c1 + r1 * (Vec(2) << std::cos(th), std::sin(th)).finished();
      oracle = std::max(oracle, std::max(0.0, (y - c2).norm() - r2));
    }
    const Estimate e = Excess(e2, Ball{c1, r1}, Ball{c2, r2});
    CHECK_FALSE(e.approximate);
    CHECK(e.value == doctest::Approx(std::max(0.0, (c1 - c2).norm() + r1 - r2)).epsilon(1e-12));
    CHECK(std::abs(e.value - oracle) <= 1e-5 * (1 + r1));
  }
}

TEST_CASE("max-norm ball excess uses the cube vertices") {
  const auto m2 = NormedSpace::Max(2);
  const Vec c = (Vec(2) << 0.5, -2.0).finished();
  // Worst point of the unit cube about 0 w.r.t. B_inf(c, 1.5): (-1, 1).
  CHECK(Excess(m2, Ball{Vec::Zero(2), 1.0}, Ball{c, 1.5}).value == doctest::Approx(1.5));
}

TEST_CASE("ball/sphere excess and Hausdorff distance") {
  const auto e2 = NormedSpace::Euclidean(2);
  const SetRep ball = Ball{Vec::Zero(2), 2.0};
  const SetRep sphere = Sphere{Vec::Zero(2), 2.0};
  CHECK(Excess(e2, ball, sphere).value == doctest::Approx(2.0));  // the center
  CHECK(Excess(e2, sphere, ball).value == doctest::Approx(0.0));
  CHECK(Hausdorff(e2, ball, sphere).value == doctest::Approx(2.0));
  CHECK(Hausdorff(e2, sphere, ball).value == doctest::Approx(2.0));
  CHECK(Hausdorff(e2, ball, ball).value == 0.0);
}

TEST_CASE("orthant excess closed form; unbounded source gives +inf") {
  const auto e2 = NormedSpace::Euclidean(2);
  const Vec a = (Vec(2) << 1, -3).finished(), b = (Vec(2) << 4, -7).finished();
  // Worst point of a + R^2_+ is a itself: ||(b - a)_+||.
  CHECK(Excess(e2, Orthant{a}, Orthant{b}).value == doctest::Approx(3.0));
  CHECK(Excess(e2, Orthant{b}, Orthant{a}).value == doctest::Approx(4.0));
  CHECK(Excess(e2, Orthant{a}, Ball{Vec::Zero(2), 100.0}).infinite());
}

TEST_CASE("polytope distance agrees with the vertex-pair oracle") {
  const auto e2 = NormedSpace::Euclidean(2);
  Rng rng(5);
  for (int t = 0; t < 60; ++t) {
    const int nv = 3 + static_cast<int>(rng.below(6));
    Mat v(nv, 2);
    for (int i = 0; i < nv; ++i) v.row(i) = rng.uniform_box(Vec::Constant(2, -3), Vec::Constant(2, 3)).transpose();
    const Vec y = rng.uniform_box(Vec::Constant(2, -6), Vec::Constant(2, 6));
    const double oracle = HullDistOracle(v, y);
    CHECK(DistPoint(e2, y, VPolytope{v}).value == doctest::Approx(oracle).epsilon(1e-7).scale(1.0));
    CHECK(Dist(e2, y, PointCloud{v}) >= oracle - 1e-12);
  }
}

TEST_CASE("min-norm-point projection brackets the distance") {
  Mat v(3, 2);
  v << 1, 1, 3, 1, 2, 4;
  const Vec y = Vec::Zero(2);
  const Projection p = ProjectOntoHull(v, y);
  CHECK(p.converged);
  const double truth = std::sqrt(2.0);
  CHECK(p.lower_bound <= truth + 1e-12);
  CHECK((p.point - y).norm() == doctest::Approx(truth).epsilon(1e-9));
}

TEST_CASE("sublevel region distance equals box clamping in both norms") {
  const SetRep box = UnitBoxRegion();
  Rng rng(9);
  for (int t = 0; t < 40; ++t) {
    const Vec y = rng.uniform_box(Vec::Constant(2, -4), Vec::Constant(2, 4));
    const Vec clamped = y.cwiseMax(-1.0).cwiseMin(1.0);
    CHECK(Dist(NormedSpace::Euclidean(2), y, box) == doctest::Approx((y - clamped).norm()).epsilon(1e-7).scale(1.0));
    CHECK(Dist(NormedSpace::Max(2), y, box) ==
          doctest::Approx(std::max(0.0, y.cwiseAbs().maxCoeff() - 1.0)).epsilon(1e-7).scale(1.0));
  }
}

TEST_CASE("enlargement shifts distances of convex sets by the radius") {
  const auto e2 = NormedSpace::Euclidean(2);
  Mat v(4, 2);
  v << 0, 0, 2, 0, 2, 1, 0, 1;
  const SetRep poly = VPolytope{v};
  const SetRep big = Enlarge(e2, poly, 0.5);
  Rng rng(3);
  for (int t = 0; t < 40; ++t) {
    const Vec y = rng.uniform_box(Vec::Constant(2, -4), Vec::Constant(2, 4));
    CHECK(Dist(e2, y, big) == doctest::Approx(std::max(0.0, HullDistOracle(v, y) - 0.5)).epsilon(1e-7).scale(1.0));
  }
  CHECK(Contains(e2, big, (Vec(2) << 2.3, 1.3).finished()));
  CHECK_FALSE(Contains(e2, big, (Vec(2) << 2.4, 1.4).finished()));
}

TEST_CASE("samples lie in the set and are seed-deterministic") {
  const auto e2 = NormedSpace::Euclidean(2);
  Mat v(3, 2);
  v << 0, 0, 1, 0, 0, 1;
  const std::vector<SetRep> sets = {Ball{Vec::Ones(2), 2.0}, Sphere{Vec::Zero(2), 1.5},
                                    Box{Vec::Zero(2), Vec::Ones(2)}, VPolytope{v}, UnitBoxRegion(),
                                    Enlarge(e2, VPolytope{v}, 0.25)};
  for (const auto& s : sets) {
    const auto a = Sample(e2, s, 200, 42), b = Sample(e2, s, 200, 42);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i] == b[i]);
      CHECK(Dist(e2, a[i], s) <= 1e-9);
    }
  }
  const auto ort = Sample(e2, Orthant{Vec::Zero(2)}, 50, 1, Box{-Vec::Ones(2), Vec::Constant(2, 3)});
  for (const auto& y : ort) CHECK(y.minCoeff() >= -1e-12);
}

TEST_CASE("dimension mismatches are rejected") {
  CHECK_THROWS_AS(DistPoint(NormedSpace::Euclidean(3), Vec::Zero(3), Ball{Vec::Zero(2), 1.0}), Error);
  CHECK_THROWS_AS(SetRep(Ball{Vec::Zero(2), -1.0}), Error);
}
