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
#include <string_view>
#include <vector>

#include "setcover/mappings.hpp"

namespace setcover {

// Find x with Phi(x) inside Psi(x).
struct InclusionInstance {
  MapSpec psi;
  MapSpec phi;
  // Defaults: alpha from AlphaOf(psi), beta from BetaOf(phi),
  // alpha_used = kOpenIntervalFactor * alpha.
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> alpha_used;
  double tol = 1e-6;
  int max_iter = 10000;
  // Seed of the fallback witness search (maps without a witness rule).
  std::uint64_t seed = 0;
};

struct ResolvedConstants {
  double alpha = 0.0;
  double beta = 0.0;
  double alpha_used = 0.0;
};
// Validates spaces and beta < alpha_used (throws kConstantExhausted).
ResolvedConstants Resolve(const InclusionInstance& inst);

// exc(Phi(x), Psi(x)).
Estimate InclusionResidual(const InclusionInstance& inst, const Vec& x);

enum class SolveStatus { kConverged, kContractionViolated, kBudgetExhausted };
std::string_view SolveStatusName(SolveStatus s);

struct Iterate {
  Vec x;
  double r = 0.0;      // exc(Phi(x_k), Psi(x_k))
  double step = 0.0;   // d(x_{k+1}, x_k); 0 for the last iterate
};

// The final step taken once r_K <= tol: radius r_K / (alpha_used - beta),
// which by the same two inequalities lands exactly in Inc(Phi, Psi).  It is
// kept only if it does not increase the residual.
struct ClosingStep {
  Vec from;
  Vec to;
  double r_before = 0.0;
  double r_after = 0.0;
  double step = 0.0;
  double bound = 0.0;  // r_K / (alpha_used - beta)
  bool accepted = false;
};

struct BoundCheck {
  double displacement = 0.0;  // d(x0, x*)
  double path_length = 0.0;   // sum of all steps, closing step included
  double bound = 0.0;         // r0 / (alpha_used - beta)
  bool holds = false;         // path_length <= bound + tol
};

struct SolveTrace {
  std::vector<Iterate> iterates;
  SolveStatus status = SolveStatus::kBudgetExhausted;
  ResolvedConstants constants;
  double tol = 0.0;
  std::optional<ClosingStep> closing;
  Vec x_star;
  double r_final = 0.0;
  // Residual at x* re-evaluated independently (boundary sampling of Phi(x*)).
  double r_verified = 0.0;
  BoundCheck bound;
  // Largest observed r_{k+1} / r_k.
  double max_ratio = 0.0;
  bool witness_fallback = false;
  std::string note;

  int iterations() const { return static_cast<int>(iterates.size()) - 1; }
};

SolveTrace SolveInclusion(const InclusionInstance& inst, const Vec& x0);

struct StronglyFixedOptions {
  std::vector<double> r_grid = {1.0, 0.5, 0.25, 0.125};
  std::optional<double> alpha_used;
  double tol = 1e-6;
  int max_iter = 10000;
  int verify_samples = 128;
  std::uint64_t seed = 0;
};

struct StronglyFixedResult {
  Vec x;
  double r = 0.0;
  SolveTrace trace;
  // B(x, r) inside Psi(x), re-checked on sampled boundary points.
  bool verified = false;
  double dist_x0 = 0.0;           // dist(x0, Psi(x0))
  double displacement = 0.0;      // d(x0, x)
  // (dist(x0, Psi(x0)) + r) / (alpha_used - 1): what the iteration guarantees.
  double run_bound = 0.0;
  // dist(x0, Psi(x0)) / (alpha - 1): the limiting bound on dist(x0, SFix).
  double limit_bound = 0.0;
};

// Strongly fixed point of Psi : X => X (alpha > 1): solves the inclusion
// with Phi_r(x) = Ball(x, r) for each r of the grid, first success wins.
StronglyFixedResult StronglyFixed(const MapSpec& psi, const Vec& x0,
                                  const StronglyFixedOptions& opts = {});

}  // namespace setcover
