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

#include "setcover/mappings.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/SVD>

#include "setcover/lp.hpp"
#include "setcover/rng.hpp"

namespace setcover {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void Require(bool ok, ErrorCode code, const std::string& msg) {
  if (!ok) throw Error(code, msg);
}

// sup ||y||_Y / ||y||_2.
double UpperEquivalence(const NormedSpace& s) {
  if (s.kind() == NormKind::kP && s.p() < 2.0) {
    return std::pow(static_cast<double>(s.dim()), 1.0 / s.p() - 0.5);
  }
  return 1.0;
}

double SigmaMax(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

double SigmaMinRowRank(const Mat& m) {
  if (m.rows() > m.cols()) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  const Vec& sv = svd.singularValues();
  return sv(sv.size() - 1);
}

Mat SignVertices(int d) {
  const Eigen::Index count = Eigen::Index{1} << d;
  Mat v(count, d);
  for (Eigen::Index mask = 0; mask < count; ++mask) {
    for (int k = 0; k < d; ++k) v(mask, k) = (mask >> k) & 1 ? 1.0 : -1.0;
  }
  return v;
}

// |s| when M = s Q for an isometry Q of the common norm.
std::optional<double> ScaledIsometry(const Mat& m, const NormedSpace& from, const NormedSpace& to) {
  if (m.rows() != m.cols() || from.kind() != to.kind() || from.p() != to.p()) return std::nullopt;
  if (m.rows() == 1) return std::abs(m(0, 0));
  if (from.kind() == NormKind::kEuclidean) {
    const Mat g = m.transpose() * m;
    const double s2 = g(0, 0);
    if ((g - s2 * Mat::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, s2)) {
      return std::sqrt(s2);
    }
    return std::nullopt;
  }
  // Signed permutations are the isometries shared by every p-norm.
  double s = -1.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    int nonzero = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0.0) {
        ++nonzero;
        if (s < 0) s = std::abs(m(i, j));
        if (std::abs(m(i, j)) != s) return std::nullopt;
      }
    }
    if (nonzero != 1) return std::nullopt;
  }
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if ((m.col(j).array() != 0.0).count() != 1) return std::nullopt;
  }
  return s;
}

Mat BoxVertices(const Vec& lo, const Vec& hi) {
  const int d = static_cast<int>(lo.size());
  Require(d <= 16, ErrorCode::kNotRepresentable, "affine image: box dimension above 16");
  Mat v = SignVertices(d);
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    for (int k = 0; k < d; ++k) v(i, k) = v(i, k) > 0 ? hi[k] : lo[k];
  }
  return v;
}

// g(S) for affine g, staying inside the set catalog.
SetRep AffineImage(const SetRep& s, const AffineFn& g, const NormedSpace& from,
                   const NormedSpace& to) {
  auto map_rows = [&](const Mat& pts) -> Mat {
    return (pts * g.m.transpose()).rowwise() + g.c.transpose();
  };
  if (const auto* b = s.get_if<Ball>()) {
    if (auto k = ScaledIsometry(g.m, from, to)) return Ball{g.m * b->center + g.c, *k * b->radius};
    if (from.kind() == NormKind::kMax) {
      return VPolytope{map_rows(BoxVertices(b->center.array() - b->radius, b->center.array() + b->radius))};
    }
  }
  if (const auto* b = s.get_if<Sphere>()) {
    if (auto k = ScaledIsometry(g.m, from, to)) return Sphere{g.m * b->center + g.c, *k * b->radius};
  }
  if (const auto* b = s.get_if<Box>()) return VPolytope{map_rows(BoxVertices(b->lo, b->hi))};
  if (const auto* p = s.get_if<VPolytope>()) return VPolytope{map_rows(p->vertices)};
  if (const auto* p = s.get_if<PointCloud>()) return PointCloud{map_rows(p->points)};
  throw Error(ErrorCode::kNotRepresentable,
              std::string("composed: affine image of a ") + std::string(s.kind()) +
                  " is outside the set catalog");
}

Mat PseudoInverse(const Mat& a) { return a.transpose() * (a * a.transpose()).inverse(); }

// ||A^{-1}||_- = sup_{||y||_inf <= 1} min{||x|| : A x = y}: the min-norm
// preimage is A^+ y (euclidean domain, or square A where it is unique), and
// the convex sup sits at cube vertices.
std::pair<double, bool> InverseLowerNorm(const Mat& a, const NormedSpace& xs) {
  const Mat pinv = PseudoInverse(a);
  const int m = static_cast<int>(a.rows());
  if (m <= 16) {
    const Mat v = SignVertices(m);
    double best = 0.0;
    for (Eigen::Index i = 0; i < v.rows(); ++i) best = std::max(best, xs.norm(pinv * v.row(i).transpose()));
    return {best, true};
  }
  return {std::sqrt(static_cast<double>(m)) * SigmaMax(pinv), false};
}

}  // namespace

// ---------------------------------------------------------------------------
// Catalog functions.

int FnInDim(const CatalogFn& g) {
  return std::visit(Overloaded{[](const AffineFn& f) { return static_cast<int>(f.m.cols()); },
                               [](const ScaledNormRadial& f) { return static_cast<int>(f.xhat.size()); }},
                    g);
}

int FnOutDim(const CatalogFn& g) {
  return std::visit(Overloaded{[](const AffineFn& f) { return static_cast<int>(f.m.rows()); },
                               [](const ScaledNormRadial& f) { return static_cast<int>(f.v.size()); }},
                    g);
}

Vec EvalFn(const CatalogFn& g, const NormedSpace& x_space, const Vec& x) {
  x_space.check(x, "catalog function");
  return std::visit(Overloaded{[&](const AffineFn& f) -> Vec { return f.m * x + f.c; },
                               [&](const ScaledNormRadial& f) -> Vec {
                                 return f.s * x_space.dist(x, f.xhat) * f.v;
                               }},
                    g);
}

LipschitzValue OperatorNorm(const Mat& m, const NormedSpace& x_space, const NormedSpace& y_space) {
  const int n = static_cast<int>(m.cols());
  if (m.size() == 0 || m.isZero(0.0)) return {0.0, true};
  if (n == 1) return {y_space.norm(m.col(0)), true};
  if (y_space.kind() == NormKind::kMax) {
    double best = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) best = std::max(best, x_space.dual_norm(m.row(i).transpose()));
    return {best, true};
  }
  if (x_space.kind() == NormKind::kMax && n <= 16) {
    const Mat v = SignVertices(n);
    double best = 0.0;
    for (Eigen::Index i = 0; i < v.rows(); ++i) best = std::max(best, y_space.norm(m * v.row(i).transpose()));
    return {best, true};
  }
  if (x_space.kind() == NormKind::kP && x_space.p() == 1.0) {
    double best = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) best = std::max(best, y_space.norm(m.col(j)));
    return {best, true};
  }
  if (x_space.kind() == NormKind::kEuclidean && y_space.kind() == NormKind::kEuclidean) {
    return {SigmaMax(m), true};
  }
  return {SigmaMax(m) * UpperEquivalence(y_space) / x_space.lower_equivalence_to_euclidean(), false};
}

double CoveringConstant(const Mat& m, const NormedSpace& x_space, const NormedSpace& y_space) {
  if (auto s = ScaledIsometry(m, x_space, y_space)) return *s;
  const double sigma = SigmaMinRowRank(m);
  if (x_space.kind() == NormKind::kEuclidean && y_space.kind() == NormKind::kEuclidean) return sigma;
  return sigma * y_space.lower_equivalence_to_euclidean() / UpperEquivalence(x_space);
}

LipschitzValue FnLipschitz(const CatalogFn& g, const NormedSpace& x_space, const NormedSpace& y_space) {
  return std::visit(Overloaded{[&](const AffineFn& f) { return OperatorNorm(f.m, x_space, y_space); },
                               [&](const ScaledNormRadial& f) {
                                 return LipschitzValue{std::abs(f.s) * y_space.norm(f.v), true};
                               }},
                    g);
}

// ---------------------------------------------------------------------------
// MapSpec.

MapSpec::MapSpec(NormedSpace x_space, NormedSpace y_space, Variant v)
    : x_(x_space), y_(y_space), v_(std::move(v)) {
  validate();
}

std::string_view MapSpec::kind() const {
  static constexpr std::string_view kNames[] = {"dilation",     "sphere_scale", "unit_ball_translate",
                                                "sublinear",    "epigraphical", "polyhedral_process",
                                                "sum",          "composed",     "ball_valued"};
  return kNames[v_.index()];
}

void MapSpec::validate() const {
  const int n = x_.dim(), m = y_.dim();
  auto dims = [&](bool ok, const std::string& what) {
    Require(ok, ErrorCode::kDimensionMismatch, std::string(kind()) + ": " + what);
  };
  auto check_fn = [&](const CatalogFn& g, int in, int out) {
    dims(FnInDim(g) == in && FnOutDim(g) == out, "function dimensions do not match the spaces");
    if (const auto* a = std::get_if<AffineFn>(&g)) dims(a->c.size() == a->m.rows(), "affine offset size");
    if (const auto* r = std::get_if<ScaledNormRadial>(&g)) {
      Require(std::isfinite(r->s), ErrorCode::kInvalidArgument, "radial function: non-finite scale");
    }
  };
  std::visit(
      Overloaded{
          [&](const Dilation& d) {
            dims(d.y0.size() == m && d.anchor.size() == n, "y0/anchor dimensions");
            Require(std::isfinite(d.a) && d.a > 0, ErrorCode::kInvalidArgument, "dilation: a must be > 0");
            Require(std::isfinite(d.b) && d.b >= 0, ErrorCode::kInvalidArgument, "dilation: b must be >= 0");
          },
          [&](const SphereScale&) { dims(n == 1, "domain must be one-dimensional"); },
          [&](const UnitBallTranslate&) { dims(n == m, "domain and image dimensions must agree"); },
          [&](const SublinearSystem& s) {
            dims(static_cast<int>(s.groups.size()) == n, "one group per domain coordinate");
            for (const auto& g : s.groups) {
              dims(g.forms.cols() == m && g.forms.rows() >= 1, "forms must be nonempty rows of dim Y");
              Require(g.forms.allFinite(), ErrorCode::kInvalidArgument, "sublinear: non-finite form");
            }
            Require(n == 1 || x_.kind() == NormKind::kMax, ErrorCode::kInvalidArgument,
                    "sublinear: domain must carry the max norm");
          },
          [&](const Epigraphical& e) {
            dims(e.a.rows() == m && e.a.cols() == n, "A must be dim Y x dim X");
            Require(y_.kind() == NormKind::kMax || m == 1, ErrorCode::kInvalidArgument,
                    "epigraphical: image space must carry the max norm");
            // Min-norm preimages are A^+ y in the euclidean norm; any other
            // domain norm needs unique preimages (square A).
            Require(x_.kind() == NormKind::kEuclidean || n == 1 || (n == m && m <= 16), ErrorCode::kInvalidArgument,
                    "epigraphical: a non-euclidean domain needs a square A (dim <= 16)");
            Eigen::FullPivLU<Mat> lu(e.a);
            Require(lu.rank() == m, ErrorCode::kInvalidArgument, "epigraphical: A must have full row rank");
          },
          [&](const PolyhedralProcess& p) {
            dims(p.cx.rows() == p.cy.rows() && p.cx.rows() >= 1, "Cx and Cy need the same rows");
            dims(p.cx.cols() == n && p.cy.cols() == m, "Cx/Cy column counts");
            Require(p.cx.allFinite() && p.cy.allFinite(), ErrorCode::kInvalidArgument,
                    "polyhedral_process: non-finite data");
          },
          [&](const Sum& s) {
            Require(s.base != nullptr, ErrorCode::kInvalidArgument, "sum: missing base map");
            dims(s.base->x_space() == x_ && s.base->y_space() == y_, "base map spaces differ");
            check_fn(s.g, n, m);
          },
          [&](const Composed& c) {
            Require(c.base != nullptr, ErrorCode::kInvalidArgument, "composed: missing base map");
            dims(c.base->x_space() == x_, "base domain differs");
            check_fn(CatalogFn(c.g), c.base->y_space().dim(), m);
          },
          [&](const BallValued& b) {
            check_fn(b.center, n, m);
            dims(b.xhat.size() == n, "xhat dimension");
            Require(std::isfinite(b.c0) && b.c0 > 0, ErrorCode::kInvalidArgument, "ball_valued: c0 must be > 0");
            Require(std::isfinite(b.c1) && b.c1 >= 0, ErrorCode::kInvalidArgument, "ball_valued: c1 must be >= 0");
          },
      },
      v_);
}

SetRep EvalMap(const MapSpec& m, const Vec& x) {
  const NormedSpace& xs = m.x_space();
  const NormedSpace& ys = m.y_space();
  xs.check(x, "eval_map");
  return std::visit(
      Overloaded{
          [&](const Dilation& d) -> SetRep { return Ball{d.y0, d.a * xs.dist(x, d.anchor) + d.b}; },
          [&](const SphereScale&) -> SetRep { return Sphere{Vec::Zero(ys.dim()), std::abs(x[0])}; },
          [&](const UnitBallTranslate&) -> SetRep { return Ball{x, 1.0}; },
          [&](const SublinearSystem& s) -> SetRep {
            SublevelRegion r;
            for (std::size_t i = 0; i < s.groups.size(); ++i) {
              r.groups.push_back({s.groups[i].forms, std::abs(x[static_cast<Eigen::Index>(i)])});
            }
            return r;
          },
          [&](const Epigraphical& e) -> SetRep { return Orthant{e.a * x}; },
          [&](const PolyhedralProcess& p) -> SetRep {
            const Vec cxx = p.cx * x;
            SublevelRegion r;
            for (Eigen::Index i = 0; i < p.cy.rows(); ++i) {
              if (p.cy.row(i).isZero(0.0)) {
                Require(cxx[i] <= kGeomTol, ErrorCode::kEmptyImage,
                        "polyhedral_process: x outside the domain (empty image)");
                continue;
              }
              r.groups.push_back({p.cy.row(i), -cxx[i]});
            }
            if (r.groups.empty()) r.groups.push_back({Mat::Zero(1, ys.dim()), 0.0});
            return r;
          },
          [&](const Sum& s) -> SetRep { return Translate(EvalMap(*s.base, x), EvalFn(s.g, xs, x)); },
          [&](const Composed& c) -> SetRep {
            return AffineImage(EvalMap(*c.base, x), c.g, c.base->y_space(), ys);
          },
          [&](const BallValued& b) -> SetRep {
            return Ball{EvalFn(b.center, xs, x), b.c0 + b.c1 * xs.dist(x, b.xhat)};
          },
      },
      m.variant());
}

// ---------------------------------------------------------------------------
// Constants.

MapConstants AlphaOf(const MapSpec& m) {
  const NormedSpace& xs = m.x_space();
  const NormedSpace& ys = m.y_space();
  MapConstants out = std::visit(
      Overloaded{
          [&](const Dilation& d) -> MapConstants {
            return {d.a, std::nullopt, 1.0, "dilation: alpha = a", true};
          },
          [&](const SphereScale&) -> MapConstants {
            throw Error(ErrorCode::kNotSetCovering,
                        "sphere_scale: covering but not set-covering (images have empty interior)");
          },
          [&](const UnitBallTranslate&) -> MapConstants {
            throw Error(ErrorCode::kNotSetCovering,
                        "unit_ball_translate: covering but not set-covering");
          },
          [&](const SublinearSystem& s) -> MapConstants {
            double worst = 0.0;
            for (const auto& g : s.groups) {
              for (Eigen::Index j = 0; j < g.forms.rows(); ++j) {
                worst = std::max(worst, ys.dual_norm(g.forms.row(j).transpose()));
              }
            }
            Require(worst > 0.0, ErrorCode::kInvalidArgument, "sublinear: every form is zero");
            return {1.0 / worst, std::nullopt, 1.0, "sublinear: alpha = 1 / max ||a_ij||_*", true};
          },
          [&](const Epigraphical& e) -> MapConstants {
            const auto [inv, exact] = InverseLowerNorm(e.a, xs);
            // gamma = 1 under the max norm on the image space.
            return {1.0 / inv, std::nullopt, 1.0,
                    "epigraphical: alpha = 1 / (||A^-1||_- * gamma), gamma = 1", exact};
          },
          [&](const PolyhedralProcess&) -> MapConstants {
            const InteriorReport rep = InteriorRadius(m);
            if (rep.alpha <= 0.0) {
              throw Error(ErrorCode::kNotSetCovering,
                          "polyhedral_process: no unit u with Theta(u) containing a ball "
                          "(t_star = " + std::to_string(rep.t_star) + ")");
            }
            return {rep.alpha, std::nullopt, 1.0, "polyhedral_process: inscribed radius of Theta(u0)", true};
          },
          [&](const Sum& s) -> MapConstants {
            const MapConstants base = AlphaOf(*s.base);
            const LipschitzValue lip = FnLipschitz(s.g, xs, ys);
            const double a = base.alpha - lip.value;
            if (a <= 0.0) {
              throw Error(ErrorCode::kConstantExhausted,
                          "sum: Lip(g) = " + std::to_string(lip.value) + " >= alpha(base) = " +
                              std::to_string(base.alpha));
            }
            return {a, std::nullopt, base.gamma, "sum: alpha(base) - Lip(g)", base.exact && lip.exact};
          },
          [&](const Composed& c) -> MapConstants {
            const MapConstants base = AlphaOf(*c.base);
            const double cov = CoveringConstant(c.g.m, c.base->y_space(), ys);
            Require(cov > 0.0, ErrorCode::kNotSetCovering, "composed: outer map is not onto");
            return {base.alpha * cov, std::nullopt, base.gamma, "composed: alpha(base) * cov(g)", base.exact};
          },
          [&](const BallValued&) -> MapConstants {
            throw Error(ErrorCode::kNoRule, "ball_valued: Phi-role map has no set-covering rule");
          },
      },
      m.variant());
  out.beta = TryBetaOf(m);
  return out;
}

std::optional<double> TryBetaOf(const MapSpec& m) {
  const NormedSpace& xs = m.x_space();
  const NormedSpace& ys = m.y_space();
  return std::visit(
      Overloaded{
          [&](const Dilation& d) -> std::optional<double> { return d.a; },
          [&](const SphereScale&) -> std::optional<double> { return 1.0; },
          [&](const UnitBallTranslate&) -> std::optional<double> { return 1.0; },
          [&](const SublinearSystem&) -> std::optional<double> { return std::nullopt; },
          [&](const Epigraphical& e) -> std::optional<double> { return OperatorNorm(e.a, xs, ys).value; },
          [&](const PolyhedralProcess&) -> std::optional<double> { return std::nullopt; },
          [&](const Sum& s) -> std::optional<double> {
            const auto base = TryBetaOf(*s.base);
            if (!base) return std::nullopt;
            return *base + FnLipschitz(s.g, xs, ys).value;
          },
          [&](const Composed& c) -> std::optional<double> {
            const auto base = TryBetaOf(*c.base);
            if (!base) return std::nullopt;
            return *base * OperatorNorm(c.g.m, c.base->y_space(), ys).value;
          },
          [&](const BallValued& b) -> std::optional<double> {
            return FnLipschitz(b.center, xs, ys).value + b.c1;
          },
      },
      m.variant());
}

double BetaOf(const MapSpec& m) {
  if (auto b = TryBetaOf(m)) return *b;
  throw Error(ErrorCode::kNoRule,
              std::string(m.kind()) + ": no Lipschitz rule; use the empirical estimate");
}

// ---------------------------------------------------------------------------
// Witnesses.

std::optional<Vec> CoverWitness(const MapSpec& m, const Vec& x, double rho) {
  const NormedSpace& xs = m.x_space();
  xs.check(x, "cover_witness");
  Require(std::isfinite(rho) && rho > 0, ErrorCode::kInvalidArgument, "cover_witness: rho must be > 0");
  return std::visit(
      Overloaded{
          [&](const Dilation& d) -> std::optional<Vec> {
            const Vec dir = x - d.anchor;
            const double n = xs.norm(dir);
            if (n > 0.0) return Vec(x + (rho / n) * dir);
            Vec u = x;
            u[0] += rho;
            return u;
          },
          [&](const SphereScale&) -> std::optional<Vec> { return std::nullopt; },
          [&](const UnitBallTranslate&) -> std::optional<Vec> { return std::nullopt; },
          [&](const SublinearSystem&) -> std::optional<Vec> {
            Vec u = x;
            for (Eigen::Index i = 0; i < u.size(); ++i) u[i] += x[i] >= 0.0 ? rho : -rho;
            return u;
          },
          [&](const Epigraphical& e) -> std::optional<Vec> {
            const double alpha = AlphaOf(m).alpha;
            const Vec ones = Vec::Ones(e.a.rows());
            return Vec(x - rho * alpha * (PseudoInverse(e.a) * ones));
          },
          [&](const PolyhedralProcess&) -> std::optional<Vec> {
            const InteriorReport rep = InteriorRadius(m);
            if (!rep.u0) return std::nullopt;
            return Vec(x + rho * *rep.u0);
          },
          [&](const Sum& s) { return CoverWitness(*s.base, x, rho); },
          [&](const Composed& c) { return CoverWitness(*c.base, x, rho); },
          [&](const BallValued&) -> std::optional<Vec> { return std::nullopt; },
      },
      m.variant());
}

InteriorReport InteriorRadius(const MapSpec& m) {
  const auto* p = m.get_if<PolyhedralProcess>();
  Require(p != nullptr, ErrorCode::kInvalidArgument, "interior_radius: map is not a polyhedral process");
  const NormedSpace& xs = m.x_space();
  const NormedSpace& ys = m.y_space();
  const Eigen::Index k = p->cy.rows(), n = p->cx.cols(), dy = p->cy.cols();
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!p->cy.row(i).isZero(0.0)) rows.push_back(i);
  }
  Require(!rows.empty(), ErrorCode::kInvalidArgument, "interior_radius: every row of Cy is zero");
  const auto nr = static_cast<Eigen::Index>(rows.size());

  // Inscribed-ball slack of Theta(0): max t, (Cy_i / |Cy_i|) y + t <= 0.
  Mat a1 = Mat::Zero(nr, dy + 1);
  for (Eigen::Index r = 0; r < nr; ++r) {
    a1.row(r).head(dy) = p->cy.row(rows[r]) / p->cy.row(rows[r]).norm();
    a1(r, dy) = 1.0;
  }
  Vec c1 = Vec::Zero(dy + 1);
  c1[dy] = 1.0;
  Vec lo1 = Vec::Constant(dy + 1, -1.0), hi1 = Vec::Constant(dy + 1, 1.0);
  lo1[dy] = 0.0;
  const lp::Result r1 = lp::MaximizeBoxed(c1, a1, Vec::Zero(nr), lo1, hi1);
  Require(r1.status == lp::Status::kOptimal, ErrorCode::kLpAnomaly,
          std::string("interior_radius: slack program ") + lp::StatusName(r1.status));
  InteriorReport rep;
  rep.t_star = r1.objective > 1e-12 ? r1.objective : 0.0;
  if (rep.t_star == 0.0) return rep;

  // Largest s with Cx_i u + s ||Cy_i||_* <= 0 (rows with Cy_i = 0 keep
  // Cx_i u <= 0) over the unit box.
  Mat a2 = Mat::Zero(k, n + 1);
  double s_cap = kInf;
  for (Eigen::Index i = 0; i < k; ++i) {
    a2.row(i).head(n) = p->cx.row(i);
    const double dn = ys.dual_norm(p->cy.row(i).transpose());
    a2(i, n) = dn;
    if (dn > 0) s_cap = std::min(s_cap, p->cx.row(i).cwiseAbs().sum() / dn);
  }
  Vec c2 = Vec::Zero(n + 1);
  c2[n] = 1.0;
  Vec lo2 = Vec::Constant(n + 1, -1.0), hi2 = Vec::Constant(n + 1, 1.0);
  lo2[n] = 0.0;
  hi2[n] = s_cap + 1.0;
  const lp::Result r2 = lp::MaximizeBoxed(c2, a2, Vec::Zero(k), lo2, hi2);
  Require(r2.status == lp::Status::kOptimal, ErrorCode::kLpAnomaly,
          std::string("interior_radius: radius program ") + lp::StatusName(r2.status));
  if (r2.objective <= 1e-12) return rep;
  const Vec u = r2.x.head(n);
  const double un = xs.norm(u);
  if (un <= 0.0) return rep;
  const Vec u0 = u / un;
  // Recompute the radius at the normalized element itself.
  double alpha = kInf;
  const Vec cxu = p->cx * u0;
  for (Eigen::Index i = 0; i < k; ++i) {
    const double dn = a2(i, n);
    if (dn > 0) {
      alpha = std::min(alpha, -cxu[i] / dn);
    } else if (cxu[i] > kGeomTol) {
      alpha = 0.0;
    }
  }
  if (alpha > 1e-12) {
    rep.u0 = u0;
    rep.alpha = alpha;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Search.

BallSearchResult BallSearch(const NormedSpace& space, const Vec& center, double r,
                            const std::function<double(const Vec&)>& f,
                            std::optional<double> lipschitz, std::uint64_t seed, int budget) {
  space.check(center, "ball_search");
  BallSearchResult out;
  const int d = space.dim();
  auto eval = [&](const Vec& u) {
    ++out.evaluations;
    const double v = f(u);
    if (v < out.value) {
      out.value = v;
      out.best = u;
    }
    return v;
  };
  eval(center);
  if (r <= 0.0) {
    out.lower_bound = out.value;
    return out;
  }
  auto project = [&](const Vec& u) -> Vec {
    const double n = space.dist(u, center);
    return n <= r ? u : Vec(center + (r / n) * (u - center));
  };

  std::vector<std::pair<double, Vec>> starts;
  if (d <= 3) {
    const int per_axis = d == 1 ? 201 : (d == 2 ? 41 : 13);
    const double h = 2.0 * r / (per_axis - 1);
    long total = 1;
    for (int k = 0; k < d; ++k) total *= per_axis;
    double grid_min = kInf;
    for (long idx = 0; idx < total; ++idx) {
      Vec u(d);
      long rest = idx;
      for (int k = 0; k < d; ++k) {
        u[k] = center[k] - r + h * static_cast<double>(rest % per_axis);
        rest /= per_axis;
      }
      // Grid points outside the ball still bound F from below inside it.
      const double v = f(u);
      ++out.evaluations;
      grid_min = std::min(grid_min, v);
      if (space.dist(u, center) <= r) {
        if (v < out.value) {
          out.value = v;
          out.best = u;
        }
        starts.emplace_back(v, u);
      }
    }
    if (lipschitz) out.lower_bound = grid_min - *lipschitz * 0.5 * h * space.ones_norm();
  } else {
    Rng rng(seed);
    for (int k = 0; k < d; ++k) {
      for (double sg : {1.0, -1.0}) {
        Vec u = center;
        u[k] += sg * r;
        const Vec pu = project(u);
        starts.emplace_back(eval(pu), pu);
      }
    }
    for (int i = 0; i < budget / 2; ++i) {
      const Vec u = center + r * std::pow(rng.uniform(), 1.0 / d) * RandomUnit(space, rng);
      starts.emplace_back(eval(u), u);
    }
  }
  std::stable_sort(starts.begin(), starts.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  const std::size_t nstarts = std::min<std::size_t>(3, starts.size());
  const double floor = 1e-13 * std::max(1.0, r + center.cwiseAbs().maxCoeff());
  for (std::size_t s = 0; s < nstarts && out.evaluations < 4 * budget; ++s) {
    Vec u = starts[s].second;
    double fu = starts[s].first;
    double step = d <= 3 ? 2.0 * r / 40.0 : r / 4.0;
    while (step > floor && out.evaluations < 4 * budget) {
      bool improved = false;
      for (int k = 0; k < d && !improved; ++k) {
        for (double sg : {1.0, -1.0}) {
          Vec v = u;
          v[k] += sg * step;
          v = project(v);
          const double fv = eval(v);
          if (fv < fu) {
            u = v;
            fu = fv;
            improved = true;
            break;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
  }
  return out;
}

std::optional<Box> SamplingBox(const NormedSpace& ys, const SetRep& s, double margin) {
  if (Boundedness(s).bounded) return std::nullopt;
  const int d = ys.dim();
  const double w = 1.0 + 4.0 * margin;
  if (const auto* o = s.get_if<Orthant>()) {
    return Box{o->apex.array() - (margin + 1.0), o->apex.array() + w};
  }
  if (const auto* e = s.get_if<Enlarged>()) return SamplingBox(ys, *e->base, margin + e->radius);
  if (const auto* r = s.get_if<SublevelRegion>()) {
    const PolyProjection pr = ProjectOntoPolyhedron(ToHalfspaces(*r), Vec::Zero(d));
    return Box{pr.point.array() - w, pr.point.array() + w};
  }
  return Box{Vec::Constant(d, -w), Vec::Constant(d, w)};
}

WitnessSearch SearchWitness(const MapSpec& m, const Vec& x, double rho, double alpha,
                            std::uint64_t seed, int samples) {
  const NormedSpace& ys = m.y_space();
  const SetRep image = EvalMap(m, x);
  const SetRep enlarged = Enlarge(ys, image, alpha * rho);
  WitnessSearch out;
  out.samples = Sample(ys, enlarged, samples, seed, SamplingBox(ys, image, alpha * rho));
  auto f = [&](const Vec& u) {
    const SetRep img = EvalMap(m, u);
    double worst = 0.0;
    for (const auto& y : out.samples) worst = std::max(worst, Dist(ys, y, img));
    return worst;
  };
  const BallSearchResult res = BallSearch(m.x_space(), x, rho, f, TryBetaOf(m), DeriveSeed(seed, 1));
  out.u = res.best;
  out.margin = res.value;
  out.lower_bound = res.lower_bound;
  return out;
}

LipschitzEstimate EmpiricalLipschitz(const MapSpec& m, int pairs, std::uint64_t seed,
                                     double box_half_width) {
  const NormedSpace& xs = m.x_space();
  const NormedSpace& ys = m.y_space();
  if (!Boundedness(EvalMap(m, Vec::Zero(xs.dim()))).bounded) {
    throw Error(ErrorCode::kUnboundedImage, "empirical_lipschitz: images are unbounded");
  }
  LipschitzEstimate out;
  const Vec lo = Vec::Constant(xs.dim(), -box_half_width), hi = -lo;
  for (int i = 0; i < pairs; ++i) {
    Rng rng(DeriveSeed(seed, static_cast<std::uint64_t>(i)));
    const Vec x1 = rng.uniform_box(lo, hi);
    Vec x2 = i % 2 == 0 ? rng.uniform_box(lo, hi)
                        : Vec(x1 + rng.log_uniform(1e-3, 1.0) * RandomUnit(xs, rng));
    const double d = xs.dist(x1, x2);
    if (d <= 0.0) continue;
    ++out.pairs;
    const double ratio = Hausdorff(ys, EvalMap(m, x1), EvalMap(m, x2)).value / d;
    if (ratio > out.value) {
      out.value = ratio;
      out.x1 = x1;
      out.x2 = x2;
    }
  }
  return out;
}

}  // namespace setcover
