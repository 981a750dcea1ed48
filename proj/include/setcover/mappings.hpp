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
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "setcover/geometry.hpp"
#include "setcover/set_rep.hpp"
#include "setcover/space.hpp"

namespace setcover {

// ---------------------------------------------------------------------------
// Single-valued catalog functions g : X -> Y.

// g(x) = M x + c.
struct AffineFn {
  Mat m;
  Vec c;
};

// g(x) = s * ||x - xhat|| * v.
struct ScaledNormRadial {
  double s = 0.0;
  Vec v;
  Vec xhat;
};

using CatalogFn = std::variant<AffineFn, ScaledNormRadial>;

struct LipschitzValue {
  double value = 0.0;
  // False when only an upper bound from norm equivalence is available.
  bool exact = true;
};

int FnInDim(const CatalogFn& g);
int FnOutDim(const CatalogFn& g);
Vec EvalFn(const CatalogFn& g, const NormedSpace& x_space, const Vec& x);
// Lipschitz constant from (X, ||.||_X) to (Y, ||.||_Y); the operator norm for
// affine maps.
LipschitzValue FnLipschitz(const CatalogFn& g, const NormedSpace& x_space,
                           const NormedSpace& y_space);
// Operator norm sup{||M x||_Y : ||x||_X <= 1}.
LipschitzValue OperatorNorm(const Mat& m, const NormedSpace& x_space, const NormedSpace& y_space);
// Largest c with M(B_X) containing c B_Y (0 when M is not onto).
double CoveringConstant(const Mat& m, const NormedSpace& x_space, const NormedSpace& y_space);

// ---------------------------------------------------------------------------
// Set-valued mappings X => Y.

class MapSpec;

// Psi(x) = Ball(y0, a ||x - anchor|| + b).
struct Dilation {
  Vec y0;
  double a = 1.0;
  double b = 0.0;
  Vec anchor;
};

// Psi(x) = |x| S on X = R (S the unit sphere of Y).
struct SphereScale {};

// Psi(x) = Ball(x, 1) with X = Y.
struct UnitBallTranslate {};

// Psi(x) = {y : max_j <a_ij, y> <= |x_i| for every group i}; dim X is the
// number of groups.
struct SublinearSystem {
  std::vector<FormGroup> groups;
};

// Psi(x) = A x + R^m_+.
struct Epigraphical {
  Mat a;
};

// Convex process with graph {(x, y) : Cx x + Cy y <= 0}.
struct PolyhedralProcess {
  Mat cx;
  Mat cy;
};

// Psi(x) = base(x) + g(x).
struct Sum {
  std::shared_ptr<const MapSpec> base;
  CatalogFn g;
};

// Psi(x) = g(base(x)) for an affine g.
struct Composed {
  AffineFn g;
  std::shared_ptr<const MapSpec> base;
};

// Phi(x) = Ball(center(x), c0 + c1 ||x - xhat||).
struct BallValued {
  CatalogFn center;
  double c0 = 1.0;
  double c1 = 0.0;
  Vec xhat;
};

class MapSpec {
 public:
  using Variant = std::variant<Dilation, SphereScale, UnitBallTranslate, SublinearSystem,
                               Epigraphical, PolyhedralProcess, Sum, Composed, BallValued>;

  MapSpec(NormedSpace x_space, NormedSpace y_space, Variant v);

  const NormedSpace& x_space() const { return x_; }
  const NormedSpace& y_space() const { return y_; }
  const Variant& variant() const { return v_; }
  template <typename T>
  const T* get_if() const { return std::get_if<T>(&v_); }
  template <typename T>
  bool is() const { return std::holds_alternative<T>(v_); }
  std::string_view kind() const;

 private:
  void validate() const;
  NormedSpace x_;
  NormedSpace y_;
  Variant v_;
};

SetRep EvalMap(const MapSpec& m, const Vec& x);

struct MapConstants {
  // Set-covering constant with open-interval semantics: consumers use
  // kOpenIntervalFactor * alpha.
  double alpha = 0.0;
  // Lipschitz constant in the Phi role, when a rule exists.
  std::optional<double> beta;
  // Order/metric constant of the epigraphical construction (1 otherwise).
  double gamma = 1.0;
  // Name of the producing rule, e.g. "sublinear: 1/max ||a_ij||_*".
  std::string rule;
  // False when the constant is a bound rather than the formula value.
  bool exact = true;
};

// Throws kNotSetCovering for the covering-only examples, kConstantExhausted
// when a perturbation eats the whole constant, kNoRule for Phi-role maps.
MapConstants AlphaOf(const MapSpec& m);

// Hausdorff-Lipschitz constant; throws kNoRule when the variant has none.
double BetaOf(const MapSpec& m);
std::optional<double> TryBetaOf(const MapSpec& m);

// Constructive cover witness: u with d(u, x) <= rho and
// B(Psi(x), alpha rho) inside Psi(u).  Empty when the variant has no rule
// and a search is required.
std::optional<Vec> CoverWitness(const MapSpec& m, const Vec& x, double rho);

// Interior slack of a polyhedral process: t_star is the inscribed-ball slack
// of Theta(0) (normalized rows), u0 a unit element with Theta(u0) containing
// the alpha-ball about the origin.
struct InteriorReport {
  double t_star = 0.0;
  std::optional<Vec> u0;
  double alpha = 0.0;
};
InteriorReport InteriorRadius(const MapSpec& process);

// ---------------------------------------------------------------------------
// Derivative-free minimization of F over the ball B(center, r): a grid over
// the enclosing box (dim <= 3) followed by a compass search from the best
// grid points.  `lower_bound` is a certified lower bound of inf F over the
// ball when F is known to be L-Lipschitz (l >= 0), else -inf.
struct BallSearchResult {
  Vec best;
  double value = kInf;
  double lower_bound = -kInf;
  int evaluations = 0;
};
BallSearchResult BallSearch(const NormedSpace& space, const Vec& center, double r,
                            const std::function<double(const Vec&)>& f,
                            std::optional<double> lipschitz, std::uint64_t seed,
                            int budget = 4000);

// A finite box for sampling an unbounded image together with its
// `margin`-enlargement; empty for bounded sets.
std::optional<Box> SamplingBox(const NormedSpace& ys, const SetRep& s, double margin);

// Fallback witness: minimizes the worst sampled distance of
// B(Psi(x), alpha rho) to Psi(u) over u in B(x, rho).
struct WitnessSearch {
  Vec u;
  // max over the sampled enlargement of dist(y, Psi(u)).
  double margin = kInf;
  double lower_bound = -kInf;
  std::vector<Vec> samples;
};
WitnessSearch SearchWitness(const MapSpec& m, const Vec& x, double rho, double alpha,
                            std::uint64_t seed, int samples = 64);

// Empirical Lipschitz estimate: max over sampled pairs of
// H(m(x1), m(x2)) / d(x1, x2), a lower estimate of the true constant.
struct LipschitzEstimate {
  double value = 0.0;
  int pairs = 0;
  Vec x1;
  Vec x2;
};
LipschitzEstimate EmpiricalLipschitz(const MapSpec& m, int pairs, std::uint64_t seed,
                                     double box_half_width = 10.0);

}  // namespace setcover
