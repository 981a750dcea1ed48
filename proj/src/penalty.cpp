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

#include "setcover/penalty.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "setcover/rng.hpp"

namespace setcover {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool LexLess(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

// Grid points of the box center +- radius (grid_n per axis) inside the ball.
std::vector<Vec> BallGrid(const NormedSpace& xs, const Vec& center, double radius, int grid_n) {
  const int d = xs.dim();
  if (d > 3) throw Error(ErrorCode::kInvalidArgument, "grid check: dimension above 3");
  if (grid_n < 2) throw Error(ErrorCode::kInvalidArgument, "grid check: grid_n must be >= 2");
  std::vector<Vec> out;
  long total = 1;
  for (int k = 0; k < d; ++k) total *= grid_n;
  const double h = 2.0 * radius / (grid_n - 1);
  for (long idx = 0; idx < total; ++idx) {
    Vec u(d);
    long rest = idx;
    for (int k = 0; k < d; ++k) {
      const long i = rest % grid_n;
      rest /= grid_n;
      u[k] = i == grid_n - 1 ? center[k] + radius : center[k] - radius + h * static_cast<double>(i);
    }
    if (xs.dist(u, center) <= radius * (1.0 + 1e-12)) out.push_back(u);
  }
  return out;
}

// Distance from `center` to the nearest point satisfying `member`, searched
// on rays out to `window` (dim <= 2) and refined by bisection; empty when
// nothing is found inside the window.
std::optional<double> NearestMemberDistance(const NormedSpace& space, const Vec& center,
                                            const std::function<bool(const Vec&)>& member,
                                            double window) {
  if (member(center)) return 0.0;
  const int d = space.dim();
  if (d > 2) throw Error(ErrorCode::kNoRule, "nearest member: dimension above 2");
  std::vector<Vec> dirs;
  if (d == 1) {
    dirs = {Vec::Constant(1, 1.0), Vec::Constant(1, -1.0)};
  } else {
    constexpr int kDirs = 64;
    for (int i = 0; i < kDirs; ++i) {
      const double t = 2.0 * M_PI * i / kDirs;
      Vec w(2);
      w << std::cos(t), std::sin(t);
      dirs.push_back(w / space.norm(w));
    }
  }
  const int steps = d == 1 ? 400 : 100;
  const double h = window / steps;
  for (int k = 1; k <= steps; ++k) {
    std::optional<double> best;
    for (const auto& w : dirs) {
      if (!member(center + (h * k) * w)) continue;
      double lo = h * (k - 1), hi = h * k;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (member(center + mid * w) ? hi : lo) = mid;
      }
      if (!best || hi < *best) best = hi;
    }
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// Objectives.

ObjectiveSpec::ObjectiveSpec(Variant v) : v_(std::move(v)) {
  if (const auto* w = std::get_if<WeightedSum>(&v_)) {
    if (w->weights.size() != w->terms.size() || w->terms.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "weighted_sum: weights and terms must pair up");
    }
    for (const auto& t : w->terms) {
      if (!t) throw Error(ErrorCode::kInvalidArgument, "weighted_sum: missing term");
    }
  }
  if (const auto* a = std::get_if<AbsCoord>(&v_); a && a->index < 0) {
    throw Error(ErrorCode::kInvalidArgument, "abs_coord: index must be >= 0");
  }
}

std::string ObjectiveSpec::kind() const {
  static const char* kNames[] = {"norm_to_point", "linear", "abs_coord", "weighted_sum"};
  return kNames[v_.index()];
}

double ObjectiveValue(const ObjectiveSpec& f, const NormedSpace& xs, const Vec& x) {
  xs.check(x, "objective");
  return std::visit(
      Overloaded{
          [&](const NormToPoint& o) { return xs.dist(x, o.target); },
          [&](const LinearObjective& o) { return o.c.dot(x); },
          [&](const AbsCoord& o) {
            if (o.index >= x.size()) throw Error(ErrorCode::kDimensionMismatch, "abs_coord: index out of range");
            return std::abs(x[o.index]);
          },
          [&](const WeightedSum& o) {
            double s = 0.0;
            for (std::size_t k = 0; k < o.terms.size(); ++k) s += o.weights[k] * ObjectiveValue(*o.terms[k], xs, x);
            return s;
          },
      },
      f.variant());
}

double ObjectiveLipschitz(const ObjectiveSpec& f, const NormedSpace& xs) {
  return std::visit(
      Overloaded{
          [&](const NormToPoint&) { return 1.0; },
          [&](const LinearObjective& o) { return xs.dual_norm(o.c); },
          // |x_i| <= ||x|| in every p-norm, with equality at e_i.
          [&](const AbsCoord&) { return 1.0; },
          [&](const WeightedSum& o) {
            double s = 0.0;
            for (std::size_t k = 0; k < o.terms.size(); ++k) s += std::abs(o.weights[k]) * ObjectiveLipschitz(*o.terms[k], xs);
            return s;
          },
      },
      f.variant());
}

// ---------------------------------------------------------------------------
// Penalty.

double PenaltyValue(const PenaltyProblem& prob, const Vec& x) {
  const double phi = ObjectiveValue(prob.objective, prob.inst.psi.x_space(), x);
  if (prob.l == 0.0) return phi;
  const Estimate e = InclusionResidual(prob.inst, x);
  if (e.infinite()) return kInf;
  return phi + prob.l * e.value;
}

double Threshold(double l_phi, double alpha, double beta) {
  if (!(l_phi > 0) || !(alpha > beta) || !(beta >= 0)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold: need l_phi > 0 and alpha > beta >= 0");
  }
  return l_phi / (alpha - beta);
}

double ProblemThreshold(const PenaltyProblem& prob) {
  const ResolvedConstants c = Resolve(prob.inst);
  return Threshold(ObjectiveLipschitz(prob.objective, prob.inst.psi.x_space()), c.alpha_used, c.beta);
}

PenaltyResult MinimizePenalty(const PenaltyProblem& prob, const Vec& x0, std::uint64_t seed,
                              const PatternOptions& opts) {
  const NormedSpace& xs = prob.inst.psi.x_space();
  xs.check(x0, "minimize_penalty");
  if (xs.dim() > 6) throw Error(ErrorCode::kInvalidArgument, "minimize_penalty: dimension above 6");
  if (!(prob.l >= 0)) throw Error(ErrorCode::kInvalidArgument, "minimize_penalty: l must be >= 0");
  PenaltyResult res;
  res.options = opts;
  res.seed = seed;
  std::vector<int> order(static_cast<std::size_t>(xs.dim()));
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[static_cast<std::size_t>(rng.below(i))]);
  }
  Vec x = x0;
  double f = PenaltyValue(prob, x);
  res.evaluations = 1;
  double step = opts.initial_step;
  res.trace.push_back({x, f, step});
  while (step >= opts.min_step && !res.budget_exhausted) {
    bool improved = false;
    for (int k : order) {
      for (double sg : {1.0, -1.0}) {
        if (res.evaluations >= opts.max_evaluations) {
          res.budget_exhausted = true;
          break;
        }
        Vec v = x;
        v[k] += sg * step;
        const double fv = PenaltyValue(prob, v);
        ++res.evaluations;
        if (fv < f) {
          x = v;
          f = fv;
          improved = true;
          break;
        }
      }
      if (improved || res.budget_exhausted) break;
    }
    if (!improved && !res.budget_exhausted) step *= 0.5;
    res.trace.push_back({x, f, step});
  }
  res.x = x;
  res.value = f;
  return res;
}

Certificate VerifyExactness(const PenaltyProblem& prob, const Vec& x_bar, double radius, int grid_n,
                            double slack) {
  const NormedSpace& xs = prob.inst.psi.x_space();
  xs.check(x_bar, "verify_exactness");
  if (!(radius >= 0)) throw Error(ErrorCode::kInvalidArgument, "verify_exactness: radius must be >= 0");
  Certificate cert;
  cert.property = Property::kPenaltyExactness;
  cert.subject = "penalty";
  cert.alpha = prob.l;
  cert.tol = slack;
  cert.samples_per_trial = 1;
  if (radius == 0.0) {
    cert.note = "degenerate radius: trivially exact";
    return cert;
  }
  const double fbar = PenaltyValue(prob, x_bar);
  const auto grid = BallGrid(xs, x_bar, radius, grid_n);
  cert.trials = static_cast<int>(grid.size());
  std::optional<std::pair<double, Vec>> best;
  for (const auto& u : grid) {
    const double fu = PenaltyValue(prob, u);
    if (!best || fu < best->first || (fu == best->first && LexLess(u, best->second))) best = {fu, u};
  }
  cert.note = "grid " + std::to_string(grid_n) + "^" + std::to_string(xs.dim()) + " over B(x_bar, " +
              std::to_string(radius) + ")";
  if (best && fbar > best->first + slack) {
    Violation v;
    v.x = x_bar;
    v.r = radius;
    v.y = best->second;
    v.margin = fbar - best->first - slack;
    v.conclusive = true;
    v.note = "grid point with smaller penalized value";
    cert.violations.push_back(std::move(v));
  }
  return cert;
}

ConverseReport ConverseCheck(const PenaltyProblem& prob, const ConverseOptions& opts) {
  if (!(opts.eps > 0)) throw Error(ErrorCode::kInvalidArgument, "converse_check: eps must be > 0");
  const NormedSpace& xs = prob.inst.psi.x_space();
  const int d = xs.dim();
  ConverseReport rep;
  rep.l = (1.0 + opts.eps) * ProblemThreshold(prob);
  PenaltyProblem pl = prob;
  pl.l = rep.l;
  std::vector<Vec> starts = opts.starts;
  if (starts.empty()) {
    for (int i = 0; i < opts.n_starts; ++i) {
      Rng rng(DeriveSeed(opts.seed, static_cast<std::uint64_t>(i)));
      starts.push_back(rng.uniform_box(Vec::Constant(d, opts.box_lo), Vec::Constant(d, opts.box_hi)));
    }
  }
  rep.runs.resize(starts.size());
  ParallelFor(static_cast<int>(starts.size()), opts.threads, [&](int i) {
    rep.runs[static_cast<std::size_t>(i)] =
        MinimizePenalty(pl, starts[static_cast<std::size_t>(i)], DeriveSeed(opts.seed, 1000u + i), opts.pattern);
  });
  std::vector<std::size_t> idx(rep.runs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (rep.runs[a].value != rep.runs[b].value) return rep.runs[a].value < rep.runs[b].value;
    return LexLess(rep.runs[a].x, rep.runs[b].x);
  });
  const PenaltyResult& win = rep.runs[idx.front()];
  rep.winner = win.x;
  rep.value = win.value;
  rep.strict = true;
  for (const auto& r : rep.runs) {
    if (r.value <= win.value + opts.strict_tol && xs.dist(r.x, win.x) > opts.strict_tol) rep.strict = false;
  }
  Certificate& cert = rep.certificate;
  cert.property = Property::kPenaltyExactness;
  cert.subject = "converse";
  cert.alpha = rep.l;
  cert.trials = static_cast<int>(starts.size());
  cert.seed = opts.seed;
  cert.tol = opts.feas_tol;
  if (!rep.strict) {
    cert.note = "winner is not strict: proposition not applied";
    return rep;
  }
  rep.residual = InclusionResidual(prob.inst, rep.winner).value;
  rep.feasible = rep.residual <= opts.feas_tol;
  const ObjectiveSpec& f = prob.objective;
  const Vec center = Vec::Constant(d, 0.5 * (opts.box_lo + opts.box_hi));
  const int per_axis = d == 1 ? opts.grid_n : std::min(opts.grid_n, d == 2 ? 401 : 61);
  const NormedSpace box_space = NormedSpace::Max(d);
  for (const auto& u : BallGrid(box_space, center, 0.5 * (opts.box_hi - opts.box_lo), per_axis)) {
    if (InclusionResidual(prob.inst, u).value > 1e-9) continue;
    const double v = ObjectiveValue(f, xs, u);
    if (v < rep.oracle_value) {
      rep.oracle_value = v;
      rep.oracle_point = u;
    }
  }
  const double fw = ObjectiveValue(f, xs, rep.winner);
  rep.optimal = fw <= rep.oracle_value + opts.strict_tol;
  cert.note = "strict winner checked against the feasible-grid oracle";
  if (!rep.feasible || !rep.optimal) {
    Violation v;
    v.x = rep.winner;
    v.y = rep.oracle_point;
    v.margin = !rep.feasible ? rep.residual - opts.feas_tol : fw - rep.oracle_value - opts.strict_tol;
    v.conclusive = true;
    v.note = !rep.feasible ? "strict penalized minimizer is infeasible" : "strict penalized minimizer is not optimal";
    cert.violations.push_back(std::move(v));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Families.

MapSpec ParamMapSpec::At(const Vec& p) const {
  MapSpec::Variant v = base.variant();
  for (const auto& b : bindings) {
    if (b.coeffs.size() != p.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "binding '" + b.field + "': coefficient dimension");
    }
    const double value = b.offset + b.coeffs.dot(p);
    double* slot = nullptr;
    if (auto* d = std::get_if<Dilation>(&v)) {
      if (b.field == "a") slot = &d->a;
      if (b.field == "b") slot = &d->b;
    } else if (auto* bv = std::get_if<BallValued>(&v)) {
      if (b.field == "c0") slot = &bv->c0;
      if (b.field == "c1") slot = &bv->c1;
    }
    if (slot == nullptr) {
      throw Error(ErrorCode::kInvalidArgument,
                  "binding '" + b.field + "' is not a parameter of " + std::string(base.kind()));
    }
    *slot = value;
  }
  return MapSpec(base.x_space(), base.y_space(), std::move(v));
}

InclusionInstance ParamFamily::InstanceAt(const Vec& p) const {
  p_space.check(p, "family");
  InclusionInstance inst{psi.At(p), phi.At(p), {}, {}, {}};
  return inst;
}

bool ParamFamily::InR(const Vec& p, const Vec& x) const {
  const Estimate e = InclusionResidual(InstanceAt(p), x);
  return !e.infinite() && e.value <= member_tol;
}

CalmnessRecord CalmnessDiagnostic(const ParamFamily& fam, const ObjectiveSpec& objective,
                                  const Vec& x_bar, const std::vector<double>& radii,
                                  std::uint64_t seed, int p_samples, int x_samples) {
  const NormedSpace& xs = fam.psi.base.x_space();
  const NormedSpace& ps = fam.p_space;
  xs.check(x_bar, "calmness");
  if (!fam.InR(fam.p_bar, x_bar)) {
    throw Error(ErrorCode::kInvalidArgument, "calmness: x_bar is not in R(p_bar)");
  }
  CalmnessRecord rec;
  rec.radii = radii;
  const double f_bar = ObjectiveValue(objective, xs, x_bar);
  double inf_ratio = kInf;
  for (std::size_t ri = 0; ri < radii.size(); ++ri) {
    const double r = radii[ri];
    if (!(r > 0)) throw Error(ErrorCode::kInvalidArgument, "calmness: radii must be > 0");
    for (int i = 0; i < p_samples; ++i) {
      Rng rng(DeriveSeed(DeriveSeed(seed, ri), static_cast<std::uint64_t>(i)));
      Vec p;
      if (i < 2 * ps.dim()) {
        p = fam.p_bar;
        p[i / 2] += (i % 2 == 0 ? -r : r);
      } else {
        p = fam.p_bar + r * rng.uniform(0.05, 1.0) * RandomUnit(ps, rng);
      }
      const double dp = ps.dist(p, fam.p_bar);
      if (dp == 0.0) continue;
      std::optional<InclusionInstance> inst;
      try {
        inst = fam.InstanceAt(p);
        Resolve(*inst);
      } catch (const Error&) {
        continue;
      }
      double nu = kInf;
      for (int j = 0; j < x_samples; ++j) {
        Vec x = j == 0 ? x_bar : Vec(x_bar + r * rng.uniform() * RandomUnit(xs, rng));
        if (!fam.InR(p, x)) {
          const SolveTrace tr = SolveInclusion(*inst, x);
          if (tr.status != SolveStatus::kConverged) continue;
          x = tr.x_star;
          if (!fam.InR(p, x)) continue;
        }
        if (xs.dist(x, x_bar) > r) continue;
        const double fx = ObjectiveValue(objective, xs, x);
        const double ratio = (fx - f_bar) / dp;
        nu = std::min(nu, fx);
        inf_ratio = std::min(inf_ratio, ratio);
        rec.samples.push_back({r, p, x, ratio});
      }
      if (std::isfinite(nu)) rec.nu_slope = std::max(rec.nu_slope, (f_bar - nu) / dp);
    }
    rec.zeta_by_radius.push_back(std::isfinite(inf_ratio) ? std::max(0.0, -inf_ratio) : 0.0);
  }
  rec.zeta = rec.zeta_by_radius.empty() ? 0.0 : rec.zeta_by_radius.back();
  return rec;
}

SemiregularityRecord SemiregularityEstimate(const ParamFamily& fam, const Vec& x_bar,
                                            const SemiregularityOptions& opts) {
  const NormedSpace& xs = fam.psi.base.x_space();
  const NormedSpace& ps = fam.p_space;
  xs.check(x_bar, "semiregularity");
  SemiregularityRecord rec;
  auto in_r_bar = [&](const Vec& x) { return fam.InR(fam.p_bar, x); };
  for (int i = 0; i < opts.samples; ++i) {
    Rng rng(DeriveSeed(opts.seed, static_cast<std::uint64_t>(i)));
    const Vec x = x_bar + rng.log_uniform(opts.s_lo, opts.s_hi) * RandomUnit(xs, rng);
    if (in_r_bar(x)) {
      ++rec.excluded_in_r;
      continue;
    }
    const auto dx = NearestMemberDistance(xs, x, in_r_bar, opts.x_window);
    auto preimage = [&](const Vec& p) {
      try {
        return fam.InR(p, x);
      } catch (const Error&) {
        return false;
      }
    };
    const auto dp = NearestMemberDistance(ps, fam.p_bar, preimage, opts.p_window);
    if (!dx || !dp || *dp == 0.0) {
      ++rec.excluded_no_preimage;
      continue;
    }
    const double ratio = *dx / *dp;
    rec.samples.push_back({x, *dx, *dp, ratio});
    rec.theta = std::min(rec.theta, ratio);
  }
  rec.kappa = std::isfinite(rec.theta) && rec.theta > 0 ? 1.0 / rec.theta : (std::isfinite(rec.theta) ? kInf : 0.0);
  return rec;
}

ExactnessConsistency CheckExactnessConsistency(const ParamFamily& fam, const ObjectiveSpec& objective,
                                               const Vec& x_bar, const std::vector<double>& radii,
                                               double radius, int grid_n, std::uint64_t seed) {
  ExactnessConsistency out;
  out.zeta = CalmnessDiagnostic(fam, objective, x_bar, radii, seed).zeta;
  SemiregularityOptions so;
  so.seed = seed;
  out.kappa = SemiregularityEstimate(fam, x_bar, so).kappa;
  out.preconditions = std::isfinite(out.zeta) && std::isfinite(out.kappa);
  const InclusionInstance inst = fam.InstanceAt(fam.p_bar);
  for (int k = -3; k <= 10; ++k) {
    PenaltyProblem prob{objective, inst, std::ldexp(1.0, k)};
    Certificate c = VerifyExactness(prob, x_bar, radius, grid_n);
    out.certificate = c;
    if (c.verdict() == Verdict::kNoCounterexample) {
      out.l = prob.l;
      break;
    }
  }
  return out;
}

}  // namespace setcover
