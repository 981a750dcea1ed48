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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "setcover/mappings.hpp"

namespace setcover {

enum class Property {
  kCovering,
  kSetCovering,
  kInverseErrorBound,
  kInverseHausdorff,
  kExcSemicontinuity,
  kPenaltyExactness,
};
std::string_view PropertyName(Property p);

enum class Verdict { kNoCounterexample, kFalsified };
std::string_view VerdictName(Verdict v);

// One counterexample: everything needed to re-check it independently.
struct Violation {
  int trial = 0;
  Vec x;
  double r = 0.0;
  // Offending point (in Y for the covering checks, in X for penalty checks).
  Vec y;
  // Best candidate found (witness or search result), when applicable.
  Vec u;
  // Amount by which the checked inequality fails (> 0).
  double margin = 0.0;
  // True when the failure is proven (e.g. a certified lower bound over the
  // whole ball); false for budget-limited ("inconclusive") failures.
  bool conclusive = false;
  // Test sets of the inverse-map checks.
  std::optional<SetRep> set_a;
  std::optional<SetRep> set_b;
  std::string note;
};

struct Certificate {
  Property property = Property::kSetCovering;
  std::string subject;
  // Constant under test: alpha for the covering checks, the penalty
  // parameter l for exactness checks.
  double alpha = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  double tol = kGeomTol;
  int samples_per_trial = 0;
  std::vector<Violation> violations;
  std::string note;

  Verdict verdict() const {
    return violations.empty() ? Verdict::kNoCounterexample : Verdict::kFalsified;
  }
};

struct CertifyOptions {
  int trials = 200;
  std::uint64_t seed = 0;
  // Absolute tolerance, scaled by max(1, |x|, r, |y|) in every comparison.
  double tol = kGeomTol;
  int samples_per_trial = 64;
  // Trial points x are drawn uniformly from [x_lo, x_hi]^dim.
  double x_lo = -10.0;
  double x_hi = 10.0;
  // Radii are log-uniform in [r_lo, r_hi].
  double r_lo = 1e-3;
  double r_hi = 1e2;
  // Worker threads; results do not depend on it.
  int threads = 1;
};

// Runs fn(i) for i in [0, n) on `threads` workers.  Callers write results
// into slot i, so the outcome is schedule-independent.
void ParallelFor(int n, int threads, const std::function<void(int)>& fn);

// B(Psi(x), alpha r) inside Psi(B(x, r)): for each sampled y of the
// enlargement, a budgeted search for u in B(x, r) with y in Psi(u).
Certificate CheckCovering(const MapSpec& m, double alpha, const CertifyOptions& opts = {});

// B(Psi(x), alpha r) inside Psi(u) for a single u in B(x, r): the cover
// witness when the map has one, a search otherwise.
Certificate CheckSetCovering(const MapSpec& m, double alpha, const CertifyOptions& opts = {});

// dist(x, Inv(S)) <= exc(S, Psi(x)) / alpha with Inv(S) = {x : S in Psi(x)}.
// Test sets are random balls, point clouds and polytopes about `y_center`
// (default: the map's y0 for dilations, the origin otherwise) unless given.
struct InverseOptions {
  CertifyOptions base;
  std::vector<SetRep> sets;
  std::optional<Vec> y_center;
  double set_spread = 5.0;
};
Certificate CheckInverseErrorBound(const MapSpec& m, double alpha, const InverseOptions& opts = {});

// H(Inv(A), Inv(B)) <= H(A, B) / alpha, for maps with a closed-form inverse.
Certificate CheckInverseHausdorff(const MapSpec& m, double alpha, const InverseOptions& opts = {});

// Lower semicontinuity of x -> exc(Phi(x), Psi(x)) at x0 along sampled
// sequences x_n -> x0 (trials = number of sequences).
Certificate CheckExcSemicontinuity(const MapSpec& phi, const MapSpec& psi, const Vec& x0,
                                   const CertifyOptions& opts = {});

// Closed-form inverse of a dilation: Inv(S) = {x : ||x - anchor|| >= rho(S)}.
double DilationInverseRadius(const MapSpec& m, const SetRep& s);

// Re-evaluates a covering or set-covering violation from its record alone.
bool RecheckViolation(const MapSpec& m, Property property, double alpha, const Violation& v,
                      double tol = kGeomTol);

}  // namespace setcover
