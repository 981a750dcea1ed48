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

#include <algorithm>
#include <cmath>
#include <vector>

#include "setcover/geometry.hpp"
#include "setcover/rng.hpp"

namespace setcover {
namespace {

// Boundary points paired with a unit outward direction.
struct Anchor {
  Vec point;
  Vec dir;
};

Vec Normalized(const NormedSpace& space, const Vec& v) {
  const double n = space.norm(v);
  return n > 0.0 ? Vec(v / n) : v;
}

// Direction w with <a, w> = ||a||_* ||w||: moving along it leaves the
// halfspace <a, .> <= b at the fastest rate the norm allows.
Vec DualAttaining(const NormedSpace& space, const Vec& a) {
  switch (space.kind()) {
    case NormKind::kEuclidean: return a;
    case NormKind::kMax: return a.unaryExpr([](double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); });
    case NormKind::kP: break;
  }
  if (space.p() == 1.0) {
    Eigen::Index k;
    a.cwiseAbs().maxCoeff(&k);
    Vec w = Vec::Zero(a.size());
    w[k] = a[k] > 0 ? 1.0 : -1.0;
    return w;
  }
  const double q = space.p() / (space.p() - 1.0);
  return a.unaryExpr([q](double v) { return (v > 0 ? 1.0 : -1.0) * std::pow(std::abs(v), q - 1.0); });
}

// Uniform point in the unit ball of `space` (uniform for euclidean and max).
Vec RandomInBall(const NormedSpace& space, Rng& rng) {
  const int d = space.dim();
  if (space.kind() == NormKind::kMax) return rng.uniform_box(Vec::Constant(d, -1.0), Vec::Constant(d, 1.0));
  const double s = std::pow(rng.uniform(), 1.0 / d);
  return s * RandomUnit(space, rng);
}

Vec Dirichlet(Rng& rng, Eigen::Index k) {
  Vec w(k);
  for (Eigen::Index i = 0; i < k; ++i) w[i] = rng.exponential();
  return w / w.sum();
}

// A feasible point of a sublevel region, projected from `hint`.
std::optional<Vec> FeasiblePoint(const NormedSpace& space, const SublevelRegion& r, const Vec& hint) {
  const SetRep rep(r);
  if (Contains(space, rep, hint)) return hint;
  const PolyProjection pr = ProjectOntoPolyhedron(ToHalfspaces(r), hint);
  if (Contains(space, rep, pr.point, 1e-9)) return pr.point;
  return std::nullopt;
}

bool InBox(const Vec& y, const std::optional<Box>& bbox) {
  if (!bbox) return true;
  return ((y - bbox->lo).array() >= -1e-12).all() && ((bbox->hi - y).array() >= -1e-12).all();
}

std::vector<Anchor> Anchors(const NormedSpace& space, const SetRep& s, int n, Rng& rng,
                            const std::optional<Box>& bbox) {
  std::vector<Anchor> out;
  const int d = space.dim();
  if (const auto* b = s.get_if<Ball>()) {
    for (int i = 0; i < n; ++i) {
      Vec u = RandomUnit(space, rng);
      out.push_back({b->center + b->radius * u, u});
    }
  } else if (const auto* b = s.get_if<Sphere>()) {
    for (int i = 0; i < n; ++i) {
      Vec u = RandomUnit(space, rng);
      out.push_back({b->center + b->radius * u, i % 2 == 0 || b->radius == 0.0 ? u : Vec(-u)});
    }
  } else if (const auto* o = s.get_if<Orthant>()) {
    out.push_back({o->apex, Normalized(space, Vec::Constant(d, -1.0))});
    for (int k = 0; k < d; ++k) {
      Vec e = Vec::Zero(d);
      e[k] = -1.0;
      out.push_back({o->apex, Normalized(space, e)});
    }
  } else if (s.is<SublevelRegion>()) {
    const auto& r = *s.get_if<SublevelRegion>();
    const Halfspaces h = ToHalfspaces(r);
    const Vec hint = bbox ? Vec(0.5 * (bbox->lo + bbox->hi)) : Vec::Zero(d);
    const auto p0 = FeasiblePoint(space, r, hint);
    if (!p0) return out;
    for (int i = 0; i < 8 * n && static_cast<int>(out.size()) < n; ++i) {
      const Vec w = rng.gaussian(d);
      double tmax = kInf;
      Eigen::Index arg = -1;
      for (Eigen::Index k = 0; k < h.a.rows(); ++k) {
        const double aw = h.a.row(k).dot(w);
        if (aw > 0.0) {
          const double t = (h.b[k] - h.a.row(k).dot(*p0)) / aw;
          if (t < tmax) { tmax = t; arg = k; }
        }
      }
      if (arg < 0) continue;
      const Vec z = *p0 + std::max(0.0, tmax) * w;
      if (!InBox(z, bbox)) continue;
      // Outward direction attaining the dual norm of the active form.
      const Vec a = h.a.row(arg).transpose();
      out.push_back({z, Normalized(space, DualAttaining(space, a))});
    }
  } else {
    // Finite candidate description: outward from the centroid.
    const auto pts = Sample(space, s, std::max(n, 1), rng.next_u64(), bbox);
    Vec centroid = Vec::Zero(d);
    for (const auto& p : pts) centroid += p;
    centroid /= static_cast<double>(pts.size());
    for (const auto& p : pts) {
      Vec dir = p - centroid;
      if (space.norm(dir) == 0.0) dir = RandomUnit(space, rng);
      out.push_back({p, Normalized(space, dir)});
    }
  }
  return out;
}

}  // namespace

Vec RandomUnit(const NormedSpace& space, Rng& rng) {
  const int d = space.dim();
  if (space.kind() == NormKind::kMax) {
    Vec v = rng.uniform_box(Vec::Constant(d, -1.0), Vec::Constant(d, 1.0));
    const auto k = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(d)));
    v[k] = rng.uniform() < 0.5 ? -1.0 : 1.0;
    return v;
  }
  Vec g;
  double n = 0.0;
  do {
    g = rng.gaussian(d);
    n = space.norm(g);
  } while (n == 0.0);
  return g / n;
}

std::vector<Vec> Sample(const NormedSpace& space, const SetRep& s, int n, std::uint64_t seed,
                        const std::optional<Box>& bbox) {
  if (s.dim() != space.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "sample: set and space dimensions differ");
  }
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "sample: n must be >= 0");
  const int d = space.dim();
  Rng rng(seed);
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(n));
  auto push = [&](const Vec& v) {
    if (static_cast<int>(out.size()) < n) out.push_back(v);
  };
  auto full = [&] { return static_cast<int>(out.size()) >= n; };

  if (const auto* b = s.get_if<Ball>()) {
    for (int k = 0; k < d && !full(); ++k) {
      for (double sg : {1.0, -1.0}) {
        Vec v = b->center;
        v[k] += sg * b->radius;
        push(v);
      }
    }
    while (!full()) push(b->center + b->radius * RandomInBall(space, rng));
  } else if (const auto* b = s.get_if<Sphere>()) {
    for (int k = 0; k < d && !full(); ++k) {
      for (double sg : {1.0, -1.0}) {
        Vec v = b->center;
        v[k] += sg * b->radius;
        push(v);
      }
    }
    while (!full()) push(b->center + b->radius * RandomUnit(space, rng));
  } else if (const auto* b = s.get_if<Box>()) {
    if (d <= 16) {
      const long count = 1L << d;
      for (long mask = 0; mask < count && !full(); ++mask) {
        Vec v(d);
        for (int k = 0; k < d; ++k) v[k] = (mask >> k) & 1 ? b->hi[k] : b->lo[k];
        push(v);
      }
    }
    while (!full()) push(rng.uniform_box(b->lo, b->hi));
  } else if (const auto* p = s.get_if<VPolytope>()) {
    for (Eigen::Index i = 0; i < p->vertices.rows() && !full(); ++i) push(p->vertices.row(i).transpose());
    while (!full()) push(p->vertices.transpose() * Dirichlet(rng, p->vertices.rows()));
  } else if (const auto* p = s.get_if<PointCloud>()) {
    for (Eigen::Index i = 0; i < p->points.rows() && !full(); ++i) push(p->points.row(i).transpose());
    while (!full()) {
      push(p->points.row(static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(p->points.rows())))).transpose());
    }
  } else if (const auto* o = s.get_if<Orthant>()) {
    if (!bbox) throw Error(ErrorCode::kUnboundedImage, "sample: orthant needs a bounding box");
    const Vec lo = o->apex.cwiseMax(bbox->lo);
    if (((bbox->hi - lo).array() < 0).any()) {
      throw Error(ErrorCode::kBudgetExhausted, "sample: orthant misses the bounding box");
    }
    push(lo);
    while (!full()) push(rng.uniform_box(lo, bbox->hi));
  } else if (const auto* r = s.get_if<SublevelRegion>()) {
    if (auto v = SublevelVertices(*r)) return Sample(space, SetRep(*v), n, seed, bbox);
    if (!bbox) {
      throw Error(ErrorCode::kUnboundedImage, "sample: unbounded sublevel region needs a bounding box");
    }
    const Halfspaces h = ToHalfspaces(*r);
    if (auto p0 = FeasiblePoint(space, *r, 0.5 * (bbox->lo + bbox->hi)); p0 && InBox(*p0, bbox)) push(*p0);
    const long budget = 50L * std::max(n, 1);
    for (long i = 0; i < budget && !full(); ++i) {
      const Vec c = rng.uniform_box(bbox->lo, bbox->hi);
      if (Contains(space, s, c)) {
        push(c);
        continue;
      }
      const PolyProjection pr = ProjectOntoPolyhedron(h, c);
      if (InBox(pr.point, bbox) && Contains(space, s, pr.point, 1e-9)) push(pr.point);
    }
    if (!full()) {
      throw Error(ErrorCode::kBudgetExhausted,
                  "sample: rejection budget exhausted; supply an explicit parameterization");
    }
  } else if (const auto* e = s.get_if<Enlarged>()) {
    const int na = std::min(n, std::max(1, n / 4));
    for (const auto& a : Anchors(space, *e->base, na, rng, bbox)) push(a.point + e->radius * a.dir);
    const auto base = Sample(space, *e->base, std::max(1, n - static_cast<int>(out.size())),
                             rng.next_u64(), bbox);
    for (const auto& z : base) {
      if (full()) break;
      push(z + e->radius * RandomInBall(space, rng));
    }
  }
  return out;
}

}  // namespace setcover
