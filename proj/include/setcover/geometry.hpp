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
#include <optional>
#include <string>
#include <vector>

#include "setcover/rng.hpp"
#include "setcover/set_rep.hpp"
#include "setcover/space.hpp"

namespace setcover {

struct GeomOptions {
  double tol = kGeomTol;
  // Iteration budget of the projection schemes (min-norm point, Dykstra).
  int max_iter = 10000;
  // Points used when a quantity has to be estimated by sampling.
  int approx_samples = 2048;
};

// A real value that may be the +inf sentinel, may be approximate, and then
// carries an error estimate: the true value lies within `error` of `value`.
struct Estimate {
  double value = 0.0;
  bool approximate = false;
  double error = 0.0;
  std::string note;

  bool infinite() const { return value == kInf; }
  static Estimate Exact(double v) { return {v, false, 0.0, {}}; }
  static Estimate Infinite(std::string why) { return {kInf, false, 0.0, std::move(why)}; }
};

// dist(y, S) = inf_{s in S} ||y - s||.
Estimate DistPoint(const NormedSpace& space, const Vec& y, const SetRep& s,
                   const GeomOptions& opts = {});
inline double Dist(const NormedSpace& space, const Vec& y, const SetRep& s,
                   const GeomOptions& opts = {}) {
  return DistPoint(space, y, s, opts).value;
}

// Membership with tolerance `tol` in distance units.  Exact tests for every
// variant except polytopes and enlargements of them, which go through
// DistPoint.  Sublevel regions test each halfspace separately.
bool Contains(const NormedSpace& space, const SetRep& s, const Vec& y,
              double tol = kGeomTol);

// exc(A, B) = sup_{a in A} dist(a, B); +inf sentinel when A is unbounded and
// B cannot absorb it.
Estimate Excess(const NormedSpace& space, const SetRep& a, const SetRep& b,
                const GeomOptions& opts = {});

// max(exc(A, B), exc(B, A)).
Estimate Hausdorff(const NormedSpace& space, const SetRep& a, const SetRep& b,
                   const GeomOptions& opts = {});

// r-enlargement B(S, r) = {y : dist(y, S) <= r}.  Closed form for balls,
// for boxes and orthants under the max norm, and r == 0; an implicit
// Enlarged wrapper otherwise.
SetRep Enlarge(const NormedSpace& space, const SetRep& s, double r);

// Euclidean projection of y onto conv(rows of `points`), via Wolfe's
// minimum-norm-point method.
struct Projection {
  Vec point;
  // Lower bound on the euclidean distance from the separating hyperplane.
  double lower_bound = 0.0;
  // Separating normal w (point - y) and offset m with <w, v - y> >= m for
  // every vertex v; valid in any norm via the dual norm of w.
  Vec normal;
  double offset = 0.0;
  int iterations = 0;
  bool converged = false;
};
Projection ProjectOntoHull(const Mat& points, const Vec& y, const GeomOptions& opts = {});

// Euclidean projection onto a polyhedron by Dykstra's cyclic scheme.
struct PolyProjection {
  Vec point;
  // Nonnegative multipliers of the halfspaces (from the Dykstra increments).
  Vec multipliers;
  double max_violation = 0.0;
  int iterations = 0;
  bool converged = false;
};
PolyProjection ProjectOntoPolyhedron(const Halfspaces& h, const Vec& y,
                                     const GeomOptions& opts = {});

// Sampling.  Returns n points of S, deterministic for a fixed seed, starting
// with the variant's extreme candidates (vertices, axis boundary points).
// Unbounded sets need `bbox`; sampling stays inside it.
std::vector<Vec> Sample(const NormedSpace& space, const SetRep& s, int n,
                        std::uint64_t seed,
                        const std::optional<Box>& bbox = std::nullopt);

// Uniform point on the unit sphere of `space`.
Vec RandomUnit(const NormedSpace& space, Rng& rng);

}  // namespace setcover
