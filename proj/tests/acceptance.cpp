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

// Acceptance criteria 1-8: one PASS/FAIL line per criterion with the pinned
// tolerances, measured values and runtime. Every criterion also produces a
// JSON report; criterion 8 re-runs all of them with the same seeds and
// requires byte-identical reports.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "setcover/certify.hpp"
#include "setcover/penalty.hpp"
#include "setcover/serialize.hpp"
#include "setcover/solver.hpp"

using namespace setcover;

namespace {

const NormedSpace E1 = NormedSpace::Euclidean(1);
const NormedSpace E2 = NormedSpace::Euclidean(2);

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  Json report = Json::object();

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<void(Outcome&)> run;
};

MapSpec T1Psi() { return MapSpec(E1, E2, Dilation{Vec::Zero(2), 1.0, 0.0, Vec::Zero(1)}); }
MapSpec T1Phi() {
  return MapSpec(E1, E2, BallValued{AffineFn{Mat::Zero(2, 1), Vec::Zero(2)}, 1.0, 0.5, Vec::Zero(1)});
}
InclusionInstance T1() {
  InclusionInstance inst{T1Psi(), T1Phi(), {}, {}, {}};
  inst.alpha_used = 0.99;
  inst.beta = 0.5;
  return inst;
}

CertifyOptions Trials(int n, std::uint64_t seed) {
  CertifyOptions o;
  o.trials = n;
  o.seed = seed;
  return o;
}

// 1. Counterexample fidelity.
void Counterexamples(Outcome& o) {
  const std::vector<std::pair<std::string, MapSpec>> maps = {{"sphere_scale", MapSpec(E1, E2, SphereScale{})},
                                                             {"unit_ball_translate", MapSpec(E1, E1, UnitBallTranslate{})}};
  for (const auto& [name, m] : maps) {
    const Certificate cov = CheckCovering(m, 1.0, Trials(500, 1));
    o.require(cov.verdict() == Verdict::kNoCounterexample, name + " covering(1) found a counterexample");
    o.report[name]["covering"] = ToJson(cov);
    o.detail << " " << name << ": covering(1) " << VerdictName(cov.verdict()) << ", set_covering";
    for (double a : {0.1, 0.25, 0.5, 1.0}) {
      const Certificate c = CheckSetCovering(m, a, Trials(500, 2));
      o.require(c.verdict() == Verdict::kFalsified, name + " set_covering not falsified");
      o.detail << " " << a << ":" << c.violations.size() << "/500";
      o.report[name]["set_covering"].push_back(ToJson(c));
    }
    o.detail << ";";
  }
}

// 2. Solver bound tightness.
void SolverBound(Outcome& o) {
  const SolveTrace tr = SolveInclusion(T1(), Vec::Zero(1));
  const double q = 0.5 / 0.99, bound = 1.0 / (0.99 - 0.5);
  bool contracts = true;
  for (std::size_t k = 0; k + 1 < tr.iterates.size(); ++k) {
    const auto& a = tr.iterates[k];
    const auto& b = tr.iterates[k + 1];
    contracts = contracts && b.r <= q * a.r + 1e-9 && a.step <= a.r / 0.99 + 1e-9;
  }
  const double disp = tr.bound.displacement;
  o.require(tr.status == SolveStatus::kConverged, "status");
  o.require(tr.r_final <= 1e-6 && tr.r_verified <= 1e-6, "final residual <= 1e-6");
  o.require(tr.iterations() <= 40, "iterations <= 40");
  o.require(std::abs(tr.max_ratio - q) <= 0.015, "ratio within 0.015 of 0.505");
  o.require(disp >= 2.0 && disp <= bound + 1e-6, "d(x0, x*) in [2, 2.0408 + 1e-6]");
  o.require(contracts, "contraction inequality at every step");
  char buf[256];
  std::snprintf(buf, sizeof buf, " iterations=%d r_final=%.3g ratio=%.6f d(x0,x*)=%.9f bound=%.6f contraction=%s",
                tr.iterations(), tr.r_final, tr.max_ratio, disp, bound, contracts ? "all" : "broken");
  o.detail << buf;
  o.report["trace"] = ToJson(tr);
}

// 3. Penalty exactness.
void PenaltyExactness(Outcome& o) {
  const ObjectiveSpec phi(NormToPoint{Vec::Zero(1)});
  const double th = Threshold(1.0, 0.99, 0.5);
  o.require(std::abs(th - 1.0 / 0.49) <= 1e-12, "threshold = 1/0.49");
  const PenaltyProblem above{phi, T1(), 2.143};
  const PenaltyResult r = MinimizePenalty(above, Vec::Zero(1), 0);
  const Certificate v = VerifyExactness(above, r.x, 1.0, 101);
  o.require(std::abs(r.value - 2.0) <= 1e-3 && std::abs(std::abs(r.x[0]) - 2.0) <= 1e-3, "minimizer at l = 2.143");
  o.require(v.verdict() == Verdict::kNoCounterexample, "exactness at l = 2.143");
  const PenaltyProblem below{phi, T1(), 1.0};
  const PenaltyResult rb = MinimizePenalty(below, Vec::Zero(1), 0);
  const Certificate vb = VerifyExactness(below, Vec::Constant(1, 2.0), 2.5, 101);
  const bool witness_near_0 = !vb.violations.empty() && std::abs(vb.violations.front().y[0]) <= 1e-3;
  o.require(vb.verdict() == Verdict::kFalsified && witness_near_0, "falsified at l = 1 with witness near 0");
  o.require(std::abs(rb.value - 1.0) <= 1e-3 && std::abs(rb.x[0]) <= 1e-3, "l = 1 minimizer near 0, value 1");
  char buf[256];
  std::snprintf(buf, sizeof buf, " threshold=%.6f; l=2.143: x=%.9f value=%.9f verify=%s; l=1: x=%.3g value=%.9f verify=%s",
                th, r.x[0], r.value, std::string(VerdictName(v.verdict())).c_str(), rb.x[0], rb.value,
                std::string(VerdictName(vb.verdict())).c_str());
  o.detail << buf;
  o.report = Json{{"threshold", th}, {"above", ToJson(r)}, {"verify_above", ToJson(v)}, {"below", ToJson(rb)}, {"verify_below", ToJson(vb)}};
}

// 4. Constant formulas.
void Constants(Outcome& o) {
  Rng rng(404);
  int exact = 0;
  for (int t = 0; t < 20; ++t) {
    const int groups = 1 + static_cast<int>(rng.below(3));
    SublinearSystem s;
    double worst = 0.0;
    for (int g = 0; g < groups; ++g) {
      const int forms = 1 + static_cast<int>(rng.below(4));
      Mat f(forms, 2);
      for (int j = 0; j < forms; ++j) {
        f(j, 0) = rng.uniform(-4, 4);
        f(j, 1) = rng.uniform(-4, 4);
        worst = std::max(worst, std::sqrt(f(j, 0) * f(j, 0) + f(j, 1) * f(j, 1)));
      }
      s.groups.push_back({f, 0.0});
    }
    const double alpha = AlphaOf(MapSpec(NormedSpace::Max(groups), E2, s)).alpha;
    exact += alpha == 1.0 / worst ? 1 : 0;
    o.report["sublinear"].push_back(Json{{"alpha", alpha}, {"hand", 1.0 / worst}});
  }
  o.require(exact == 20, "sublinear alpha exact on all 20 instances");
  const InteriorReport orth = InteriorRadius(
      MapSpec(E1, E2, PolyhedralProcess{(Mat(2, 1) << 1, 1).finished(), (Mat(2, 2) << -1, 0, 0, -1).finished()}));
  const InteriorReport ident =
      InteriorRadius(MapSpec(E1, E1, PolyhedralProcess{(Mat(2, 1) << -1, 1).finished(), (Mat(2, 1) << 1, -1).finished()}));
  const InteriorReport trans =
      InteriorRadius(MapSpec(E1, E1, PolyhedralProcess{(Mat(1, 1) << 1).finished(), (Mat(1, 1) << -1).finished()}));
  o.require(orth.alpha > 0 && orth.alpha <= 1 + 1e-12, "orthant-graph set-covering with alpha in (0, 1]");
  o.require(ident.t_star == 0 && ident.alpha == 0, "identity-graph not set-covering");
  o.require(trans.t_star > 0 && trans.alpha > 0, "1-d translate set-covering");
  o.detail << " sublinear exact " << exact << "/20; orthant-graph alpha=" << orth.alpha
           << ", identity-graph t*=" << ident.t_star << ", translate alpha=" << trans.alpha;
  o.report["orthant_graph"] = ToJson(orth);
  o.report["identity_graph"] = ToJson(ident);
  o.report["translate_1d"] = ToJson(trans);
}

// 5. Stability propositions.
void Stability(Outcome& o) {
  auto base = std::make_shared<const MapSpec>(MapSpec(E2, E2, Dilation{Vec::Zero(2), 3.0, 0.0, Vec::Zero(2)}));
  Mat rot(2, 2);
  rot << 0.3, -0.4, 0.4, 0.3;  // 0.5 x rotation: Lipschitz constant 0.5
  const MapSpec sum(E2, E2, Sum{base, AffineFn{rot, Vec::Ones(2)}});
  const double a_sum = 0.99 * (3.0 - 0.5);
  const Certificate cs = CheckSetCovering(sum, a_sum, Trials(200, 5));
  const Mat g = (Mat(2, 2) << 2, 0, 0, 2).finished();
  const MapSpec comp(E2, E2, Composed{AffineFn{g, Vec::Zero(2)}, base});
  const double c = 2.0, a_comp = 0.99 * 3.0 * c;
  const Certificate cc = CheckSetCovering(comp, a_comp, Trials(200, 6));
  o.require(cs.violations.empty(), "sum has zero violations");
  o.require(cc.violations.empty(), "composed has zero violations");
  o.detail << " sum@" << a_sum << ": " << cs.violations.size() << " violations / 200; composed@" << a_comp << ": "
           << cc.violations.size() << " violations / 200";
  o.report = Json{{"sum", ToJson(cs)}, {"composed", ToJson(cc)}};
}

// 6. Inverse-map propositions.
void InverseMaps(Outcome& o) {
  const MapSpec d = T1Psi();
  InverseOptions io;
  io.base = Trials(100, 7);
  const Certificate e = CheckInverseErrorBound(d, 0.99, io);
  const Certificate h = CheckInverseHausdorff(d, 0.99, io);
  o.require(e.violations.empty() && h.violations.empty(), "zero violations");
  o.detail << " error bound: " << e.violations.size() << "/100, Hausdorff: " << h.violations.size() << "/100";
  o.report = Json{{"error_bound", ToJson(e)}, {"hausdorff", ToJson(h)}};
}

// 7. Diagnostics oracle match.
void Diagnostics(Outcome& o) {
  const ParamFamily fam{E1, ParamMapSpec{T1Phi(), {ParamBinding{"c0", 0.0, Vec::Ones(1)}}}, ParamMapSpec{T1Psi(), {}},
                        Vec::Ones(1)};
  const ObjectiveSpec phi(NormToPoint{Vec::Zero(1)});
  const CalmnessRecord c = CalmnessDiagnostic(fam, phi, Vec::Constant(1, 2.0), {0.5, 0.25, 0.1}, 8);
  SemiregularityOptions so;
  so.seed = 8;
  const SemiregularityRecord s = SemiregularityEstimate(fam, Vec::Constant(1, 2.0), so);
  o.require(std::abs(c.zeta - 2.0) <= 0.05 && std::abs(c.nu_slope - 2.0) <= 0.05, "calmness slope 2 +- 0.05");
  o.require(std::abs(s.theta - 2.0) <= 0.05, "semiregularity theta 2 +- 0.05");
  char buf[200];
  std::snprintf(buf, sizeof buf, " zeta=%.6f nu_slope=%.6f theta=%.6f kappa=%.6f (samples %zu / %zu)", c.zeta,
                c.nu_slope, s.theta, s.kappa, c.samples.size(), s.samples.size());
  o.detail << buf;
  o.report = Json{{"calmness", ToJson(c)}, {"semiregularity", ToJson(s)}};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "counterexample fidelity", 10.0, Counterexamples},
      {2, "solver bound tightness", 1.0, SolverBound},
      {3, "penalty exactness", 5.0, PenaltyExactness},
      {4, "constant formulas", 5.0, Constants},
      {5, "stability propositions", 20.0, Stability},
      {6, "inverse-map propositions", 10.0, InverseMaps},
      {7, "diagnostics oracle match", 10.0, Diagnostics},
  };
  std::printf("tolerances: residual <= 1e-6; ratio |q - 0.505| <= 0.015; penalty value/point +- 1e-3; "
              "threshold +- 1e-12; diagnostics +- 0.05; runtime budgets per criterion\n");
  int failed = 0;
  std::vector<std::string> first_reports;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < c.budget_s, "runtime budget");
    first_reports.push_back(o.report.dump());
    std::printf("%s criterion %d (%s):%s [%.2fs < %.0fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                o.detail.str().c_str(), secs, c.budget_s);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  // 8. Determinism: identical seeds give byte-identical reports.
  int identical = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].run(o);
    } catch (const std::exception&) {
    }
    identical += o.report.dump() == first_reports[i] ? 1 : 0;
  }
  const bool det = identical == static_cast<int>(criteria.size());
  std::printf("%s criterion 8 (determinism): %d/%zu reports byte-identical on re-run\n", det ? "PASS" : "FAIL",
              identical, criteria.size());
  failed += det ? 0 : 1;
  return failed == 0 ? 0 : 1;
}
