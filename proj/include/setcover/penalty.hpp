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
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "setcover/certify.hpp"
#include "setcover/solver.hpp"

namespace setcover {

// ---------------------------------------------------------------------------
// Objectives with exact Lipschitz constants.

class ObjectiveSpec;

// phi(x) = ||x - target||.
struct NormToPoint {
  Vec target;
};
// phi(x) = <c, x>.
struct LinearObjective {
  Vec c;
};
// phi(x) = |x_i|.
struct AbsCoord {
  int index = 0;
};
// phi(x) = sum_k w_k phi_k(x).
struct WeightedSum {
  std::vector<double> weights;
  std::vector<std::shared_ptr<const ObjectiveSpec>> terms;
};

class ObjectiveSpec {
 public:
  using Variant = std::variant<NormToPoint, LinearObjective, AbsCoord, WeightedSum>;
  ObjectiveSpec(Variant v);  // NOLINT(google-explicit-constructor)
  const Variant& variant() const { return v_; }
  std::string kind() const;

 private:
  Variant v_;
};

double ObjectiveValue(const ObjectiveSpec& f, const NormedSpace& xs, const Vec& x);
// l_phi under the norm of X (a sum of the term constants for weighted sums).
double ObjectiveLipschitz(const ObjectiveSpec& f, const NormedSpace& xs);

// ---------------------------------------------------------------------------
// Penalty problems.

struct PenaltyProblem {
  ObjectiveSpec objective;
  InclusionInstance inst;
  double l = 0.0;
};

// phi_l(x) = phi(x) + l exc(Phi(x), Psi(x)); +inf propagates (except l = 0).
double PenaltyValue(const PenaltyProblem& prob, const Vec& x);

// l_phi / (alpha - beta).
double Threshold(double l_phi, double alpha, double beta);
// Threshold of a problem with the instance's alpha_used and beta.
double ProblemThreshold(const PenaltyProblem& prob);

struct PatternOptions {
  double initial_step = 1.0;
  double min_step = 1e-7;
  int max_evaluations = 200000;
};

struct PatternStep {
  Vec x;
  double value = 0.0;
  double step = 0.0;
};

struct PenaltyResult {
  Vec x;
  double value = 0.0;
  int evaluations = 0;
  bool budget_exhausted = false;
  PatternOptions options;
  std::uint64_t seed = 0;
  // Accepted moves and step halvings, in order.
  std::vector<PatternStep> trace;
};

// Coordinate pattern search; the seed only permutes the poll order.
PenaltyResult MinimizePenalty(const PenaltyProblem& prob, const Vec& x0, std::uint64_t seed = 0,
                              const PatternOptions& opts = {});

// phi_l(x_bar) <= phi_l(x) + slack on grid_n^dim grid points of
// B(x_bar, radius); the violation (if any) carries the grid minimizer.
Certificate VerifyExactness(const PenaltyProblem& prob, const Vec& x_bar, double radius, int grid_n,
                            double slack = 1e-9);

struct ConverseOptions {
  double eps = 0.05;
  // Multi-start points; when empty, `n_starts` seeded points of the box.
  std::vector<Vec> starts;
  int n_starts = 8;
  std::uint64_t seed = 0;
  double strict_tol = 1e-4;
  double feas_tol = 1e-6;
  // Feasible-region grid oracle over [box_lo, box_hi]^dim.
  double box_lo = -10.0;
  double box_hi = 10.0;
  int grid_n = 2001;
  int threads = 1;
  PatternOptions pattern;
};

struct ConverseReport {
  double l = 0.0;
  std::vector<PenaltyResult> runs;
  Vec winner;
  double value = 0.0;
  bool strict = false;
  // Only meaningful when strict:
  double residual = 0.0;
  bool feasible = false;
  Vec oracle_point;
  double oracle_value = kInf;
  bool optimal = false;
  Certificate certificate;
};

// Runs the multi-start minimization at l = (1 + eps) * threshold; when the
// winner is strict, checks feasibility and global optimality against the
// grid oracle.  eps <= 0 is a precondition error.
ConverseReport ConverseCheck(const PenaltyProblem& prob, const ConverseOptions& opts = {});

// ---------------------------------------------------------------------------
// Parameterized families.

// Scalar field of the top-level map replaced by offset + <coeffs, p>.
// Fields: "a", "b" (dilation), "c0", "c1" (ball_valued).
struct ParamBinding {
  std::string field;
  double offset = 0.0;
  Vec coeffs;
};

struct ParamMapSpec {
  MapSpec base;
  std::vector<ParamBinding> bindings;

  MapSpec At(const Vec& p) const;
};

struct ParamFamily {
  NormedSpace p_space;
  ParamMapSpec phi;
  ParamMapSpec psi;
  Vec p_bar;
  // Membership in R(p): exc(Phi(p, x), Psi(p, x)) <= member_tol.
  double member_tol = 1e-9;

  InclusionInstance InstanceAt(const Vec& p) const;
  bool InR(const Vec& p, const Vec& x) const;
};

struct CalmnessSample {
  double radius = 0.0;
  Vec p;
  Vec x;
  double ratio = 0.0;  // (phi(x) - phi(x_bar)) / d(p, p_bar)
};

struct CalmnessRecord {
  std::vector<double> radii;
  // -inf ratio (clamped at 0) over all samples up to each radius.
  std::vector<double> zeta_by_radius;
  double zeta = 0.0;
  // sup over sampled p of (nu(p_bar) - nu(p)) / d(p, p_bar), nu estimated by
  // the sampled minimum of phi over R(p) near x_bar.
  double nu_slope = 0.0;
  std::vector<CalmnessSample> samples;
};

CalmnessRecord CalmnessDiagnostic(const ParamFamily& fam, const ObjectiveSpec& objective,
                                  const Vec& x_bar, const std::vector<double>& radii,
                                  std::uint64_t seed = 0, int p_samples = 16, int x_samples = 8);

struct SemiregularitySample {
  Vec x;
  double dist_x = 0.0;  // dist(x, R(p_bar))
  double dist_p = 0.0;  // dist(p_bar, R^{-1}(x))
  double ratio = 0.0;
};

struct SemiregularityRecord {
  // min sampled ratio: +inf when no sample qualifies (then kappa = 0).
  double theta = kInf;
  double kappa = 0.0;
  int excluded_in_r = 0;         // x in R(p_bar): numerator 0
  int excluded_no_preimage = 0;  // no p found within the search window
  std::vector<SemiregularitySample> samples;
};

struct SemiregularityOptions {
  int samples = 64;
  // x = x_bar + s u with s log-uniform in [s_lo, s_hi].
  double s_lo = 1e-3;
  double s_hi = 1e-1;
  // Search windows for the nearest members in X and P.
  double x_window = 10.0;
  double p_window = 10.0;
  std::uint64_t seed = 0;
};

SemiregularityRecord SemiregularityEstimate(const ParamFamily& fam, const Vec& x_bar,
                                            const SemiregularityOptions& opts = {});

// Empirical consistency of calmness + semiregularity with exact penalization
// at (p_bar, x_bar): the smallest l of a doubling ladder for which
// VerifyExactness passes.
struct ExactnessConsistency {
  double zeta = 0.0;
  double kappa = 0.0;
  bool preconditions = false;  // zeta and kappa finite
  std::optional<double> l;
  Certificate certificate;
};
ExactnessConsistency CheckExactnessConsistency(const ParamFamily& fam, const ObjectiveSpec& objective,
                                               const Vec& x_bar, const std::vector<double>& radii,
                                               double radius, int grid_n, std::uint64_t seed = 0);

}  // namespace setcover
