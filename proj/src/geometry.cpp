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

#include "setcover/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "setcover/kernels.hpp"
#include "setcover/rng.hpp"

namespace setcover {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

kernels::Metric MetricOf(const NormedSpace& space) {
  switch (space.kind()) {
    case NormKind::kEuclidean: return kernels::Metric::kL2;
    case NormKind::kMax: return kernels::Metric::kLinf;
    case NormKind::kP: return space.p() == 1.0 ? kernels::Metric::kL1 : kernels::Metric::kLp;
  }
  return kernels::Metric::kL2;
}

kernels::DistanceArgs ArgsFor(const NormedSpace& space, const Mat& soa_points, const Vec& y) {
  kernels::DistanceArgs a;
  a.metric = MetricOf(space);
  a.p = space.p();
  a.soa = std::span<const double>(soa_points.data(), static_cast<std::size_t>(soa_points.size()));
  a.n = static_cast<std::size_t>(soa_points.rows());
  a.dim = static_cast<std::size_t>(soa_points.cols());
  a.query = std::span<const double>(y.data(), static_cast<std::size_t>(y.size()));
  return a;
}

void CheckDims(const NormedSpace& space, const SetRep& s, const char* what) {
  if (s.dim() != space.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": set dimension " + std::to_string(s.dim()) +
                    " does not match space dimension " + std::to_string(space.dim()));
  }
}

Estimate MaxOf(const Estimate& a, const Estimate& b) {
  Estimate out = a.value >= b.value ? a : b;
  out.approximate = a.approximate || b.approximate;
  out.error = std::max(a.error, b.error);
  if (out.note.empty()) out.note = a.note.empty() ? b.note : a.note;
  return out;
}

// Points whose maximum of any convex function equals the supremum over the
// set.  Empty when the variant has no finite candidate set.
std::optional<Mat> ConvexCandidates(const NormedSpace& space, const SetRep& s) {
  const int d = space.dim();
  if (const auto* p = s.get_if<VPolytope>()) return p->vertices;
  if (const auto* p = s.get_if<PointCloud>()) return p->points;
  auto box_vertices = [d](const Vec& lo, const Vec& hi) -> std::optional<Mat> {
    if (d > 16) return std::nullopt;
    const Eigen::Index count = Eigen::Index{1} << d;
    Mat v(count, d);
    for (Eigen::Index mask = 0; mask < count; ++mask) {
      for (int k = 0; k < d; ++k) v(mask, k) = (mask >> k) & 1 ? hi[k] : lo[k];
    }
    return v;
  };
  if (const auto* b = s.get_if<Box>()) return box_vertices(b->lo, b->hi);
  auto ball_like = [&](const Vec& c, double r) -> std::optional<Mat> {
    if (r == 0.0) return Mat(c.transpose());
    if (space.kind() == NormKind::kMax) {
      return box_vertices(c.array() - r, c.array() + r);
    }
    if (space.kind() == NormKind::kP && space.p() == 1.0) {
      Mat v(2 * d, d);
      for (int k = 0; k < d; ++k) {
        v.row(2 * k) = c.transpose();
        v.row(2 * k + 1) = c.transpose();
        v(2 * k, k) += r;
        v(2 * k + 1, k) -= r;
      }
      return v;
    }
    if (d == 1) {
      Mat v(2, 1);
      v << c[0] - r, c[0] + r;
      return v;
    }
    return std::nullopt;
  };
  // The convex hull of a norm sphere is the ball, so the same candidates work.
  if (const auto* b = s.get_if<Ball>()) return ball_like(b->center, b->radius);
  if (const auto* b = s.get_if<Sphere>()) return ball_like(b->center, b->radius);
  if (const auto* r = s.get_if<SublevelRegion>()) {
    if (auto v = SublevelVertices(*r)) return v->vertices;
  }
  return std::nullopt;
}

bool SameRep(const SetRep& a, const SetRep& b) {
  if (&a == &b) return true;
  if (a.variant().index() != b.variant().index()) return false;
  if (const auto* x = a.get_if<SublevelRegion>()) {
    const auto* y = b.get_if<SublevelRegion>();
    if (x->groups.size() != y->groups.size()) return false;
    for (std::size_t i = 0; i < x->groups.size(); ++i) {
      if (x->groups[i].bound != y->groups[i].bound ||
          x->groups[i].forms.rows() != y->groups[i].forms.rows() ||
          x->groups[i].forms != y->groups[i].forms) {
        return false;
      }
    }
    return true;
  }
  if (const auto* x = a.get_if<Orthant>()) return x->apex == b.get_if<Orthant>()->apex;
  return false;
}

Estimate DistPolytope(const NormedSpace& space, const VPolytope& p, const Vec& y,
                      const GeomOptions& opts) {
  const Mat& v = p.vertices;
  const auto nearest = kernels::MinDistance(ArgsFor(space, v, y));
  if (v.rows() == 1 || nearest.value == 0.0) return Estimate::Exact(nearest.value);

  const Projection proj = ProjectOntoHull(v, y, opts);
  if (space.kind() == NormKind::kEuclidean) {
    const double value = std::min((proj.point - y).norm(), nearest.value);
    Estimate e{value, false, std::max(0.0, value - proj.lower_bound), {}};
    e.approximate = !proj.converged || e.error > opts.tol;
    if (e.approximate) e.note = "min-norm-point projection within error bound";
    return e;
  }

  // Other norms: upper bound from hull points, lower bound from the
  // separating hyperplane of the euclidean projection.
  Vec z = proj.point;
  double best = std::min(space.dist(y, z), nearest.value);
  if (nearest.value <= best) z = v.row(static_cast<Eigen::Index>(nearest.index)).transpose();
  int evals = 0;
  const int budget = std::max(64, opts.approx_samples * 4);
  bool improved = true;
  while (improved && evals < budget) {
    improved = false;
    for (Eigen::Index i = 0; i < v.rows() && evals < budget; ++i) {
      const Vec dir = v.row(i).transpose() - z;
      // golden-section search on the convex map t -> ||y - z - t dir||
      double lo = 0.0, hi = 1.0;
      const double g = 0.5 * (std::sqrt(5.0) - 1.0);
      double t1 = hi - g * (hi - lo), t2 = lo + g * (hi - lo);
      double f1 = space.dist(y, z + t1 * dir), f2 = space.dist(y, z + t2 * dir);
      for (int it = 0; it < 40; ++it) {
        if (f1 <= f2) {
          hi = t2; t2 = t1; f2 = f1; t1 = hi - g * (hi - lo);
          f1 = space.dist(y, z + t1 * dir);
        } else {
          lo = t1; t1 = t2; f1 = f2; t2 = lo + g * (hi - lo);
          f2 = space.dist(y, z + t2 * dir);
        }
      }
      evals += 42;
      const double t = 0.5 * (lo + hi);
      const double f = space.dist(y, z + t * dir);
      if (f < best - 1e-15) {
        best = f;
        z = z + t * dir;
        improved = true;
      }
    }
  }
  double lower = 0.0;
  const double wn = space.dual_norm(proj.normal);
  if (wn > 0.0) lower = std::max(0.0, proj.offset) / wn;
  Estimate e{best, false, std::max(0.0, best - lower), {}};
  e.approximate = e.error > opts.tol;
  if (e.approximate) e.note = "non-euclidean polytope distance: hull search upper bound";
  return e;
}

Estimate DistSublevel(const NormedSpace& space, const SublevelRegion& r, const Vec& y,
                      const GeomOptions& opts) {
  const Halfspaces h = ToHalfspaces(r);
  const Vec viol = h.a * y - h.b;
  if (viol.maxCoeff() <= 0.0) return Estimate::Exact(0.0);

  double single_lower = 0.0;
  for (Eigen::Index k = 0; k < h.a.rows(); ++k) {
    const double an = space.dual_norm(h.a.row(k).transpose());
    if (an > 0.0) single_lower = std::max(single_lower, std::max(0.0, viol[k]) / an);
  }
  if (h.a.rows() == 1) return Estimate::Exact(single_lower);

  const PolyProjection proj = ProjectOntoPolyhedron(h, y, opts);
  const double value = space.dist(y, proj.point);
  // Weak duality with the Dykstra multipliers: every z in the region has
  // <w, y - z> >= sum_k lambda_k (<a_k, y> - b_k).
  double lower = single_lower;
  const Vec w = h.a.transpose() * proj.multipliers;
  const double wn = space.dual_norm(w);
  if (wn > 0.0) lower = std::max(lower, proj.multipliers.dot(viol) / wn);
  double infeas = 0.0;
  for (Eigen::Index k = 0; k < h.a.rows(); ++k) {
    const double an = space.dual_norm(h.a.row(k).transpose());
    if (an > 0.0) {
      infeas = std::max(infeas, (h.a.row(k).dot(proj.point) - h.b[k]) / an);
    }
  }
  Estimate e{std::max(value, lower), false, std::max(0.0, value - lower) + std::max(0.0, infeas), {}};
  e.approximate = !proj.converged || e.error > opts.tol;
  if (e.approximate) e.note = "cyclic halfspace projection within error bound";
  return e;
}

// Supremum of dist(., B) over A estimated from samples.
Estimate SampledExcess(const NormedSpace& space, const SetRep& a, const SetRep& b,
                       const GeomOptions& opts) {
  const int d = space.dim();
  // Convex targets: the supremum sits on the boundary of A.
  const SetRep* source = &a;
  std::optional<SetRep> boundary;
  if (IsConvex(b)) {
    if (const auto* ball = a.get_if<Ball>()) {
      boundary.emplace(Sphere{ball->center, ball->radius});
      source = &*boundary;
    }
  }
  const auto pts = Sample(space, *source, opts.approx_samples, 0x5eedULL);
  Estimate best = Estimate::Exact(0.0);
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Estimate e = DistPoint(space, pts[i], b, opts);
    best = MaxOf(best, e);
    ranked.emplace_back(e.value, i);
  }
  const auto flag = Boundedness(a);
  const double radius = flag.radius_hint.value_or(1.0);
  const int deff = std::max(1, source->is<Sphere>() ? d - 1 : d);
  best.approximate = true;
  best.error = std::max(best.error,
                        2.0 * radius * std::pow(static_cast<double>(pts.size()), -1.0 / deff));
  best.note = "sampled excess (" + std::to_string(pts.size()) + " points)";
  return best;
}

}  // namespace

Estimate DistPoint(const NormedSpace& space, const Vec& y, const SetRep& s,
                   const GeomOptions& opts) {
  space.check(y, "dist_point");
  CheckDims(space, s, "dist_point");
  return std::visit(
      Overloaded{
          [&](const Ball& b) {
            return Estimate::Exact(std::max(0.0, space.dist(y, b.center) - b.radius));
          },
          [&](const Sphere& b) {
            return Estimate::Exact(std::abs(space.dist(y, b.center) - b.radius));
          },
          [&](const Box& b) {
            const Vec res = (b.lo - y).cwiseMax(0.0) + (y - b.hi).cwiseMax(0.0);
            return Estimate::Exact(space.norm(res));
          },
          [&](const Orthant& o) {
            return Estimate::Exact(space.norm((o.apex - y).cwiseMax(0.0)));
          },
          [&](const PointCloud& p) {
            return Estimate::Exact(kernels::MinDistance(ArgsFor(space, p.points, y)).value);
          },
          [&](const VPolytope& p) { return DistPolytope(space, p, y, opts); },
          [&](const SublevelRegion& r) { return DistSublevel(space, r, y, opts); },
          [&](const Enlarged& e) {
            Estimate base = DistPoint(space, y, *e.base, opts);
            base.value = std::max(0.0, base.value - e.radius);
            return base;
          },
      },
      s.variant());
}

bool Contains(const NormedSpace& space, const SetRep& s, const Vec& y, double tol) {
  space.check(y, "contains");
  CheckDims(space, s, "contains");
  if (const auto* r = s.get_if<SublevelRegion>()) {
    for (const auto& g : r->groups) {
      for (Eigen::Index j = 0; j < g.forms.rows(); ++j) {
        const Vec a = g.forms.row(j).transpose();
        if (a.dot(y) - g.bound > tol * space.dual_norm(a)) return false;
      }
    }
    return true;
  }
  if (const auto* e = s.get_if<Enlarged>()) {
    if (e->base->is<SublevelRegion>() && Contains(space, *e->base, y, tol)) return true;
    return DistPoint(space, y, *e->base).value <= e->radius + tol;
  }
  return DistPoint(space, y, s).value <= tol;
}

Estimate Excess(const NormedSpace& space, const SetRep& a, const SetRep& b,
                const GeomOptions& opts) {
  CheckDims(space, a, "excess");
  CheckDims(space, b, "excess");
  if (SameRep(a, b)) return Estimate::Exact(0.0);

  if (const auto* eb = b.get_if<Enlarged>()) {
    Estimate e = Excess(space, a, *eb->base, opts);
    if (!e.infinite()) e.value = std::max(0.0, e.value - eb->radius);
    return e;
  }
  if (const auto* pb = b.get_if<PointCloud>(); pb && pb->points.rows() == 1) {
    return Excess(space, a, SetRep(Ball{pb->points.row(0).transpose(), 0.0}), opts);
  }
  const bool b_convex = IsConvex(b);

  // Finite candidate sets.
  if (a.is<PointCloud>() || (b_convex && !a.is<Enlarged>() && !a.is<Orthant>())) {
    bool unbounded_sublevel = false;
    if (a.is<SublevelRegion>()) unbounded_sublevel = !Boundedness(a).bounded;
    if (!unbounded_sublevel && !(a.is<Ball>() && b.is<Ball>())) {
      if (auto cand = ConvexCandidates(space, a)) {
        Estimate best = Estimate::Exact(0.0);
        for (Eigen::Index i = 0; i < cand->rows(); ++i) {
          best = MaxOf(best, DistPoint(space, cand->row(i).transpose(), b, opts));
        }
        return best;
      }
    }
  }

  return std::visit(
      Overloaded{
          [&](const Ball& ba) -> Estimate {
            if (const auto* bb = b.get_if<Ball>()) {
              return Estimate::Exact(std::max(
                  0.0, space.dist(ba.center, bb->center) + ba.radius - bb->radius));
            }
            if (const auto* sb = b.get_if<Sphere>()) {
              const double c = space.dist(ba.center, sb->center);
              const double lo = std::max(0.0, c - ba.radius), hi = c + ba.radius;
              return Estimate::Exact(std::max(std::abs(lo - sb->radius), std::abs(hi - sb->radius)));
            }
            return SampledExcess(space, a, b, opts);
          },
          [&](const Sphere& sa) -> Estimate {
            if (const auto* sb = b.get_if<Sphere>(); sb && space.dim() >= 2) {
              const double c = space.dist(sa.center, sb->center);
              const double lo = std::abs(c - sa.radius), hi = c + sa.radius;
              return Estimate::Exact(std::max(std::abs(lo - sb->radius), std::abs(hi - sb->radius)));
            }
            if (b_convex) return Excess(space, SetRep(Ball{sa.center, sa.radius}), b, opts);
            return SampledExcess(space, a, b, opts);
          },
          [&](const Orthant& oa) -> Estimate {
            if (const auto* ob = b.get_if<Orthant>()) {
              // Moving along the cone never increases the residual to B.
              return Estimate::Exact(space.norm((ob->apex - oa.apex).cwiseMax(0.0)));
            }
            if (Boundedness(b).bounded) return Estimate::Infinite("unbounded set over bounded set");
            return Estimate::Infinite("unbounded orthant: no closed form over this target");
          },
          [&](const SublevelRegion&) -> Estimate {
            if (!Boundedness(a).bounded) {
              return Estimate::Infinite("unbounded sublevel region: no closed form");
            }
            return SampledExcess(space, a, b, opts);
          },
          [&](const Enlarged& ea) -> Estimate {
            const SetRep& base = *ea.base;
            if (!Boundedness(base).bounded) {
              return Estimate::Infinite("enlargement of an unbounded set");
            }
            if (b_convex) {
              // sup over conv(base) + rB of a convex function: the maximum
              // over base candidates of the ball excess.
              if (const auto* sp = base.get_if<Sphere>()) {
                return Excess(space, SetRep(Ball{sp->center, sp->radius + ea.radius}), b, opts);
              }
              if (auto cand = ConvexCandidates(space, base)) {
                Estimate best = Estimate::Exact(0.0);
                for (Eigen::Index i = 0; i < cand->rows(); ++i) {
                  best = MaxOf(best, Excess(space, SetRep(Ball{cand->row(i).transpose(), ea.radius}),
                                            b, opts));
                }
                return best;
              }
            }
            return SampledExcess(space, a, b, opts);
          },
          [&](const auto&) -> Estimate { return SampledExcess(space, a, b, opts); },
      },
      a.variant());
}

Estimate Hausdorff(const NormedSpace& space, const SetRep& a, const SetRep& b,
                   const GeomOptions& opts) {
  return MaxOf(Excess(space, a, b, opts), Excess(space, b, a, opts));
}

SetRep Enlarge(const NormedSpace& space, const SetRep& s, double r) {
  CheckDims(space, s, "enlarge");
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::kInvalidArgument, "enlarge: radius must be finite and >= 0");
  }
  if (r == 0.0) return s;
  if (const auto* b = s.get_if<Ball>()) return Ball{b->center, b->radius + r};
  if (space.kind() == NormKind::kMax) {
    if (const auto* b = s.get_if<Box>()) {
      return Box{b->lo.array() - r, b->hi.array() + r};
    }
    if (const auto* o = s.get_if<Orthant>()) return Orthant{o->apex.array() - r};
  }
  if (const auto* e = s.get_if<Enlarged>()) return Enlarged{e->base, e->radius + r};
  return Enlarged{std::make_shared<const SetRep>(s), r};
}

Projection ProjectOntoHull(const Mat& points, const Vec& y, const GeomOptions& opts) {
  const Mat p = points.rowwise() - y.transpose();
  const Eigen::Index m = p.rows();
  Projection out;
  double scale = 0.0;
  Eigen::Index j0 = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double n2 = p.row(i).squaredNorm();
    scale = std::max(scale, n2);
    if (n2 < p.row(j0).squaredNorm()) j0 = i;
  }
  const double eps = 1e-14 * std::max(scale, 1e-300);
  std::vector<Eigen::Index> active{j0};
  std::vector<double> lam{1.0};
  Vec x = p.row(j0).transpose();

  auto recompute = [&] {
    x.setZero(p.cols());
    for (std::size_t i = 0; i < active.size(); ++i) x += lam[i] * p.row(active[i]).transpose();
  };

  int iter = 0;
  for (; iter < opts.max_iter; ++iter) {
    const Vec proj = p * x;
    Eigen::Index j;
    proj.minCoeff(&j);
    const double gap = x.squaredNorm() - proj[j];
    if (gap <= eps) {
      out.converged = true;
      break;
    }
    if (std::find(active.begin(), active.end(), j) != active.end()) {
      out.converged = true;
      break;
    }
    active.push_back(j);
    lam.push_back(0.0);
    for (int minor = 0; minor < 4 * static_cast<int>(p.cols()) + 64; ++minor) {
      const auto k = static_cast<Eigen::Index>(active.size());
      Mat kkt = Mat::Zero(k + 1, k + 1);
      for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b < k; ++b) {
          kkt(a, b) = p.row(active[a]).dot(p.row(active[b]));
        }
        kkt(a, k) = 1.0;
        kkt(k, a) = 1.0;
      }
      Vec rhs = Vec::Zero(k + 1);
      rhs[k] = 1.0;
      const Vec sol = kkt.completeOrthogonalDecomposition().solve(rhs);
      const Vec mu = sol.head(k);
      if (mu.minCoeff() > 1e-15) {
        lam.assign(mu.data(), mu.data() + k);
        break;
      }
      double theta = 1.0;
      for (Eigen::Index a = 0; a < k; ++a) {
        if (mu[a] <= 1e-15) {
          const double denom = lam[a] - mu[a];
          if (denom > 0) theta = std::min(theta, lam[a] / denom);
        }
      }
      for (Eigen::Index a = 0; a < k; ++a) lam[a] = (1 - theta) * lam[a] + theta * mu[a];
      std::vector<Eigen::Index> keep_idx;
      std::vector<double> keep_lam;
      for (Eigen::Index a = 0; a < k; ++a) {
        if (lam[a] > 1e-15) {
          keep_idx.push_back(active[a]);
          keep_lam.push_back(lam[a]);
        }
      }
      if (keep_idx.empty()) {
        keep_idx.push_back(active.back());
        keep_lam.push_back(1.0);
      }
      const double total = std::accumulate(keep_lam.begin(), keep_lam.end(), 0.0);
      for (double& l : keep_lam) l /= total;
      active = std::move(keep_idx);
      lam = std::move(keep_lam);
    }
    recompute();
  }
  out.iterations = iter;
  out.point = x + y;
  out.normal = x;
  out.offset = (p * x).minCoeff();
  const double xn = x.norm();
  out.lower_bound = xn > 0.0 ? std::max(0.0, out.offset) / xn : 0.0;
  return out;
}

PolyProjection ProjectOntoPolyhedron(const Halfspaces& h, const Vec& y, const GeomOptions& opts) {
  const Eigen::Index m = h.a.rows();
  PolyProjection out;
  Vec z = y;
  Mat q = Mat::Zero(m, y.size());
  Vec an2(m);
  for (Eigen::Index k = 0; k < m; ++k) an2[k] = h.a.row(k).squaredNorm();
  const double scale = 1.0 + y.cwiseAbs().maxCoeff();
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    const Vec prev = z;
    for (Eigen::Index k = 0; k < m; ++k) {
      if (an2[k] == 0.0) continue;
      const Vec w = z + q.row(k).transpose();
      const double viol = h.a.row(k).dot(w) - h.b[k];
      const Vec zn = viol > 0 ? Vec(w - (viol / an2[k]) * h.a.row(k).transpose()) : w;
      q.row(k) = (w - zn).transpose();
      z = zn;
    }
    double maxv = 0.0;
    for (Eigen::Index k = 0; k < m; ++k) {
      if (an2[k] > 0.0) maxv = std::max(maxv, (h.a.row(k).dot(z) - h.b[k]) / std::sqrt(an2[k]));
    }
    out.max_violation = maxv;
    if ((z - prev).norm() <= 1e-15 * scale && maxv <= opts.tol * 1e-3) {
      out.converged = true;
      ++it;
      break;
    }
  }
  out.iterations = it;
  out.point = z;
  out.multipliers = Vec::Zero(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    if (an2[k] > 0.0) out.multipliers[k] = std::max(0.0, q.row(k).dot(h.a.row(k)) / an2[k]);
  }
  return out;
}

}  // namespace setcover
