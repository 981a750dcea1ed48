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

#include "setcover/set_rep.hpp"

#include <cmath>
#include <sstream>

#include "setcover/lp.hpp"

namespace setcover {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void Require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, msg);
}

bool AllFinite(const Mat& m) { return m.allFinite(); }

// Recession cone {d : A d <= 0} is trivial iff every |d_k| maximizes to zero
// over the unit box.
bool RecessionConeTrivial(const Halfspaces& h) {
  const int d = static_cast<int>(h.a.cols());
  const Vec lo = Vec::Constant(d, -1.0);
  const Vec hi = Vec::Constant(d, 1.0);
  const Vec zero = Vec::Zero(h.a.rows());
  for (int k = 0; k < d; ++k) {
    for (double sgn : {1.0, -1.0}) {
      Vec c = Vec::Zero(d);
      c[k] = sgn;
      const lp::Result r = lp::MaximizeBoxed(c, h.a, zero, lo, hi);
      if (r.status != lp::Status::kOptimal || r.objective > 1e-9) return false;
    }
  }
  return true;
}

double Binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

int SetRep::dim() const {
  return std::visit(
      Overloaded{
          [](const Ball& b) { return static_cast<int>(b.center.size()); },
          [](const Sphere& s) { return static_cast<int>(s.center.size()); },
          [](const Box& b) { return static_cast<int>(b.lo.size()); },
          [](const VPolytope& p) { return static_cast<int>(p.vertices.cols()); },
          [](const PointCloud& p) { return static_cast<int>(p.points.cols()); },
          [](const SublevelRegion& s) {
            return static_cast<int>(s.groups.front().forms.cols());
          },
          [](const Orthant& o) { return static_cast<int>(o.apex.size()); },
          [](const Enlarged& e) { return e.base->dim(); },
      },
      v_);
}

std::string_view SetRep::kind() const {
  return std::visit(Overloaded{
                        [](const Ball&) { return std::string_view("ball"); },
                        [](const Sphere&) { return std::string_view("sphere"); },
                        [](const Box&) { return std::string_view("box"); },
                        [](const VPolytope&) { return std::string_view("vpolytope"); },
                        [](const PointCloud&) { return std::string_view("point_cloud"); },
                        [](const SublevelRegion&) { return std::string_view("sublevel"); },
                        [](const Orthant&) { return std::string_view("orthant"); },
                        [](const Enlarged&) { return std::string_view("enlarged"); },
                    },
                    v_);
}

void SetRep::validate() const {
  std::visit(
      Overloaded{
          [](const Ball& b) {
            Require(b.center.size() >= 1 && b.center.allFinite(), "ball: bad center");
            Require(std::isfinite(b.radius) && b.radius >= 0, "ball: radius must be >= 0");
          },
          [](const Sphere& s) {
            Require(s.center.size() >= 1 && s.center.allFinite(), "sphere: bad center");
            Require(std::isfinite(s.radius) && s.radius >= 0, "sphere: radius must be >= 0");
          },
          [](const Box& b) {
            Require(b.lo.size() >= 1 && b.lo.size() == b.hi.size(), "box: lo/hi dimension");
            Require(b.lo.allFinite() && b.hi.allFinite(), "box: non-finite bound");
            Require((b.lo.array() <= b.hi.array()).all(), "box: requires lo <= hi");
          },
          [](const VPolytope& p) {
            Require(p.vertices.rows() >= 1 && p.vertices.cols() >= 1,
                    "vpolytope: needs at least one vertex");
            Require(AllFinite(p.vertices), "vpolytope: non-finite vertex");
          },
          [](const PointCloud& p) {
            Require(p.points.rows() >= 1 && p.points.cols() >= 1,
                    "point_cloud: needs at least one point");
            Require(AllFinite(p.points), "point_cloud: non-finite point");
          },
          [](const SublevelRegion& s) {
            Require(!s.groups.empty(), "sublevel: needs at least one group");
            const auto d = s.groups.front().forms.cols();
            Require(d >= 1, "sublevel: zero-dimensional forms");
            for (const auto& g : s.groups) {
              Require(g.forms.rows() >= 1, "sublevel: each group needs >= 1 form");
              Require(g.forms.cols() == d, "sublevel: inconsistent form dimension");
              Require(AllFinite(g.forms) && std::isfinite(g.bound),
                      "sublevel: non-finite data");
              for (Eigen::Index j = 0; j < g.forms.rows(); ++j) {
                if (g.forms.row(j).isZero(0.0) && g.bound < 0) {
                  throw Error(ErrorCode::kEmptyImage,
                              "sublevel: zero form with negative bound (empty set)");
                }
              }
            }
          },
          [](const Orthant& o) {
            Require(o.apex.size() >= 1 && o.apex.allFinite(), "orthant: bad apex");
          },
          [](const Enlarged& e) {
            Require(e.base != nullptr, "enlarged: null base");
            Require(std::isfinite(e.radius) && e.radius >= 0, "enlarged: radius must be >= 0");
          },
      },
      v_);
}

Halfspaces ToHalfspaces(const SublevelRegion& s) {
  Eigen::Index rows = 0;
  for (const auto& g : s.groups) rows += g.forms.rows();
  const auto d = s.groups.front().forms.cols();
  Halfspaces h{Mat(rows, d), Vec(rows)};
  Eigen::Index r = 0;
  for (const auto& g : s.groups) {
    h.a.middleRows(r, g.forms.rows()) = g.forms;
    h.b.segment(r, g.forms.rows()).setConstant(g.bound);
    r += g.forms.rows();
  }
  return h;
}

BoundednessFlag Boundedness(const SetRep& s) {
  return std::visit(
      Overloaded{
          [](const Ball& b) {
            return BoundednessFlag{true, b.center.cwiseAbs().maxCoeff() + b.radius};
          },
          [](const Sphere& b) {
            return BoundednessFlag{true, b.center.cwiseAbs().maxCoeff() + b.radius};
          },
          [](const Box& b) {
            return BoundednessFlag{true, std::max(b.lo.cwiseAbs().maxCoeff(),
                                                  b.hi.cwiseAbs().maxCoeff())};
          },
          [](const VPolytope& p) {
            return BoundednessFlag{true, p.vertices.cwiseAbs().maxCoeff()};
          },
          [](const PointCloud& p) {
            return BoundednessFlag{true, p.points.cwiseAbs().maxCoeff()};
          },
          [](const SublevelRegion& r) {
            if (RecessionConeTrivial(ToHalfspaces(r))) {
              return BoundednessFlag{true, std::nullopt};
            }
            return BoundednessFlag{false, std::nullopt};
          },
          [](const Orthant&) { return BoundednessFlag{false, std::nullopt}; },
          [](const Enlarged& e) {
            BoundednessFlag f = Boundedness(*e.base);
            if (f.radius_hint) *f.radius_hint += e.radius;
            return f;
          },
      },
      s.variant());
}

bool IsConvex(const SetRep& s) {
  if (const auto* sp = s.get_if<Sphere>()) return sp->radius == 0.0;
  if (const auto* pc = s.get_if<PointCloud>()) {
    for (Eigen::Index i = 1; i < pc->points.rows(); ++i) {
      if (pc->points.row(i) != pc->points.row(0)) return false;
    }
    return true;
  }
  if (const auto* e = s.get_if<Enlarged>()) return IsConvex(*e->base);
  return true;
}

SetRep Translate(const SetRep& s, const Vec& t) {
  if (t.size() != s.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "translate: shift dimension");
  }
  return std::visit(
      Overloaded{
          [&](const Ball& b) -> SetRep { return Ball{b.center + t, b.radius}; },
          [&](const Sphere& b) -> SetRep { return Sphere{b.center + t, b.radius}; },
          [&](const Box& b) -> SetRep { return Box{b.lo + t, b.hi + t}; },
          [&](const VPolytope& p) -> SetRep {
            return VPolytope{p.vertices.rowwise() + t.transpose()};
          },
          [&](const PointCloud& p) -> SetRep {
            return PointCloud{p.points.rowwise() + t.transpose()};
          },
          [&](const SublevelRegion& r) -> SetRep {
            SublevelRegion out;
            for (const auto& g : r.groups) {
              const Vec shift = g.forms * t;
              if ((shift.array() == shift[0]).all()) {
                out.groups.push_back({g.forms, g.bound + shift[0]});
              } else {
                for (Eigen::Index j = 0; j < g.forms.rows(); ++j) {
                  out.groups.push_back({g.forms.row(j), g.bound + shift[j]});
                }
              }
            }
            return out;
          },
          [&](const Orthant& o) -> SetRep { return Orthant{o.apex + t}; },
          [&](const Enlarged& e) -> SetRep {
            return Enlarged{std::make_shared<const SetRep>(Translate(*e.base, t)),
                            e.radius};
          },
      },
      s.variant());
}

std::optional<VPolytope> SublevelVertices(const SublevelRegion& s, double tol) {
  const Halfspaces h = ToHalfspaces(s);
  const int m = static_cast<int>(h.a.rows());
  const int d = static_cast<int>(h.a.cols());
  if (m < d || Binomial(m, d) > 2e5) return std::nullopt;
  if (!RecessionConeTrivial(h)) return std::nullopt;

  std::vector<Vec> verts;
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  Mat sub(d, d);
  Vec rhs(d);
  while (true) {
    for (int i = 0; i < d; ++i) {
      sub.row(i) = h.a.row(idx[i]);
      rhs[i] = h.b[idx[i]];
    }
    Eigen::FullPivLU<Mat> lu(sub);
    if (lu.rank() == d) {
      const Vec v = lu.solve(rhs);
      const double scale = 1.0 + v.cwiseAbs().maxCoeff();
      bool feasible = true;
      for (int k = 0; k < m && feasible; ++k) {
        const double an = h.a.row(k).norm();
        feasible = h.a.row(k).dot(v) - h.b[k] <= tol * scale * std::max(an, 1.0);
      }
      if (feasible) {
        bool dup = false;
        for (const auto& w : verts) dup |= (w - v).cwiseAbs().maxCoeff() <= tol * scale;
        if (!dup) verts.push_back(v);
      }
    }
    // next combination
    int i = d - 1;
    while (i >= 0 && idx[i] == m - d + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  if (verts.empty()) return std::nullopt;
  Mat out(static_cast<Eigen::Index>(verts.size()), d);
  for (std::size_t i = 0; i < verts.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = verts[i];
  return VPolytope{out};
}

}  // namespace setcover
