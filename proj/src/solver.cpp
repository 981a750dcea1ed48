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

#include "setcover/solver.hpp"

#include <algorithm>
#include <cmath>

#include "setcover/rng.hpp"

namespace setcover {
namespace {

// Slack of the step and contraction checks.
constexpr double kCheckSlack = 1e-9;
// Inflation of the residual before the witness call, so boundary rounding
// cannot break the inclusion premise.
constexpr double kResidualInflation = 1e-12;

double IndependentResidual(const InclusionInstance& inst, const Vec& x, std::uint64_t seed) {
  const NormedSpace& ys = inst.psi.y_space();
  const SetRep img_phi = EvalMap(inst.phi, x);
  const SetRep img_psi = EvalMap(inst.psi, x);
  double worst = 0.0;
  for (const auto& y : Sample(ys, img_phi, 256, seed)) worst = std::max(worst, Dist(ys, y, img_psi));
  return worst;
}

}  // namespace

std::string_view SolveStatusName(SolveStatus s) {
  switch (s) {
    case SolveStatus::kConverged: return "converged";
    case SolveStatus::kContractionViolated: return "contraction-violated";
    case SolveStatus::kBudgetExhausted: return "budget-exhausted";
  }
  return "unknown";
}

ResolvedConstants Resolve(const InclusionInstance& inst) {
  if (!(inst.psi.x_space() == inst.phi.x_space()) || !(inst.psi.y_space() == inst.phi.y_space())) {
    throw Error(ErrorCode::kDimensionMismatch, "inclusion: Phi and Psi must share X and Y");
  }
  if (!Boundedness(EvalMap(inst.phi, Vec::Zero(inst.phi.x_space().dim()))).bounded) {
    throw Error(ErrorCode::kUnboundedImage, "inclusion: Phi must be bounded-valued");
  }
  ResolvedConstants c;
  c.alpha = inst.alpha ? *inst.alpha : AlphaOf(inst.psi).alpha;
  c.beta = inst.beta ? *inst.beta : BetaOf(inst.phi);
  c.alpha_used = inst.alpha_used ? *inst.alpha_used : kOpenIntervalFactor * c.alpha;
  if (!(c.alpha > 0) || !(c.beta >= 0) || !(c.alpha_used > 0) || c.alpha_used > c.alpha) {
    throw Error(ErrorCode::kInvalidArgument, "inclusion: need alpha > 0, beta >= 0, alpha_used in (0, alpha]");
  }
  if (c.beta >= c.alpha_used) {
    throw Error(ErrorCode::kConstantExhausted,
                "inclusion: beta = " + std::to_string(c.beta) + " >= alpha_used = " +
                    std::to_string(c.alpha_used));
  }
  if (!(inst.tol > 0) || inst.max_iter < 0) {
    throw Error(ErrorCode::kInvalidArgument, "inclusion: tol must be > 0 and max_iter >= 0");
  }
  return c;
}

Estimate InclusionResidual(const InclusionInstance& inst, const Vec& x) {
  return Excess(inst.psi.y_space(), EvalMap(inst.phi, x), EvalMap(inst.psi, x));
}

SolveTrace SolveInclusion(const InclusionInstance& inst, const Vec& x0) {
  const NormedSpace& xs = inst.psi.x_space();
  xs.check(x0, "solve_inclusion");
  SolveTrace tr;
  tr.constants = Resolve(inst);
  tr.tol = inst.tol;
  const double au = tr.constants.alpha_used;
  const double beta = tr.constants.beta;
  const double q = beta / au;

  auto witness = [&](const Vec& x, double rho, int k) -> Vec {
    if (auto u = CoverWitness(inst.psi, x, rho)) return *u;
    tr.witness_fallback = true;
    return SearchWitness(inst.psi, x, rho, au, DeriveSeed(inst.seed, static_cast<std::uint64_t>(k))).u;
  };
  auto residual = [&](const Vec& x) {
    const Estimate e = InclusionResidual(inst, x);
    if (e.infinite()) throw Error(ErrorCode::kUnboundedImage, "inclusion: infinite residual");
    return e.value;
  };

  Vec x = x0;
  double r = residual(x);
  tr.iterates.push_back({x, r, 0.0});
  tr.status = SolveStatus::kBudgetExhausted;
  for (int k = 0; k < inst.max_iter; ++k) {
    if (r <= inst.tol) {
      tr.status = SolveStatus::kConverged;
      break;
    }
    const double rho = (r + kResidualInflation) / au;
    const Vec u = witness(x, rho, k);
    const double step = xs.dist(u, x);
    const double r_next = residual(u);
    tr.iterates.back().step = step;
    tr.iterates.push_back({u, r_next, 0.0});
    if (r > 0) tr.max_ratio = std::max(tr.max_ratio, r_next / r);
    if (step > r / au + kCheckSlack * std::max(1.0, r / au) || r_next > q * r + kCheckSlack) {
      tr.status = SolveStatus::kContractionViolated;
      tr.note = "step " + std::to_string(k) + ": r_next = " + std::to_string(r_next) + " exceeds (beta/alpha_used) r = " +
                std::to_string(q * r) + "; declared constants are inconsistent";
      x = u;
      r = r_next;
      break;
    }
    x = u;
    r = r_next;
  }
  if (tr.status == SolveStatus::kBudgetExhausted && r <= inst.tol) tr.status = SolveStatus::kConverged;

  double path = 0.0;
  for (const auto& it : tr.iterates) path += it.step;
  if (tr.status == SolveStatus::kConverged && r > 0.0) {
    ClosingStep c;
    c.from = x;
    c.r_before = r;
    c.bound = r / (au - beta);
    c.to = witness(x, (r + kResidualInflation) / (au - beta), inst.max_iter);
    c.step = xs.dist(c.to, x);
    c.r_after = residual(c.to);
    c.accepted = c.r_after < r;
    if (c.accepted) {
      x = c.to;
      r = c.r_after;
      path += c.step;
    }
    tr.closing = c;
  }
  tr.x_star = x;
  tr.r_final = r;
  tr.r_verified = std::max(r, IndependentResidual(inst, x, DeriveSeed(inst.seed, 0x7e57)));
  tr.bound.displacement = xs.dist(x0, x);
  tr.bound.path_length = path;
  tr.bound.bound = tr.iterates.front().r / (au - beta);
  tr.bound.holds = path <= tr.bound.bound + inst.tol;
  return tr;
}

StronglyFixedResult StronglyFixed(const MapSpec& psi, const Vec& x0, const StronglyFixedOptions& opts) {
  const NormedSpace& xs = psi.x_space();
  if (!(psi.y_space() == xs)) {
    throw Error(ErrorCode::kDimensionMismatch, "strongly_fixed: Psi must map X into X");
  }
  xs.check(x0, "strongly_fixed");
  const double alpha = AlphaOf(psi).alpha;
  if (alpha <= 1.0) {
    throw Error(ErrorCode::kNotExpanding, "strongly_fixed: alpha = " + std::to_string(alpha) + " <= 1");
  }
  const double au = opts.alpha_used ? *opts.alpha_used : kOpenIntervalFactor * alpha;
  if (au <= 1.0) {
    throw Error(ErrorCode::kConstantExhausted, "strongly_fixed: alpha_used <= 1 = beta of Phi_r");
  }
  const int d = xs.dim();
  const double dist_x0 = Dist(xs, x0, EvalMap(psi, x0));
  for (double r : opts.r_grid) {
    if (!(r > 0) || !std::isfinite(r)) throw Error(ErrorCode::kInvalidArgument, "strongly_fixed: grid radii must be > 0");
    const MapSpec phi(xs, xs, BallValued{AffineFn{Mat::Identity(d, d), Vec::Zero(d)}, r, 0.0, Vec::Zero(d)});
    InclusionInstance inst{psi, phi, alpha, 1.0, au, opts.tol, opts.max_iter, opts.seed};
    SolveTrace tr = SolveInclusion(inst, x0);
    if (tr.status != SolveStatus::kConverged) continue;
    StronglyFixedResult res;
    res.x = tr.x_star;
    res.r = r;
    const SetRep img = EvalMap(psi, res.x);
    res.verified = true;
    for (const auto& y : Sample(xs, SetRep(Sphere{res.x, r}), opts.verify_samples, opts.seed)) {
      if (!Contains(xs, img, y, opts.tol)) {
        res.verified = false;
        break;
      }
    }
    res.dist_x0 = dist_x0;
    res.displacement = xs.dist(x0, res.x);
    res.run_bound = (dist_x0 + r) / (au - 1.0);
    res.limit_bound = dist_x0 / (alpha - 1.0);
    res.trace = std::move(tr);
    if (res.verified) return res;
  }
  throw Error(ErrorCode::kBudgetExhausted, "strongly_fixed: no grid radius produced a verified point");
}

}  // namespace setcover
