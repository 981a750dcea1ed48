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

#include "setcover/certify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "setcover/rng.hpp"

namespace setcover {
namespace {

double Scale(const Vec& x, double r, const Vec& y) {
  double s = std::max(1.0, r);
  if (x.size() > 0) s = std::max(s, x.cwiseAbs().maxCoeff());
  if (y.size() > 0) s = std::max(s, y.cwiseAbs().maxCoeff());
  return s;
}

Certificate NewCertificate(Property p, const std::string& subject, double alpha,
                           const CertifyOptions& opts) {
  Certificate c;
  c.property = p;
  c.subject = subject;
  c.alpha = alpha;
  c.trials = opts.trials;
  c.seed = opts.seed;
  c.tol = opts.tol;
  c.samples_per_trial = opts.samples_per_trial;
  return c;
}

void Collect(Certificate& cert, std::vector<std::optional<Violation>>& slots) {
  for (auto& s : slots) {
    if (s) cert.violations.push_back(std::move(*s));
  }
}

void CheckAlpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kInvalidArgument, "certify: alpha must be finite and > 0");
  }
}

Vec TrialPoint(const NormedSpace& xs, const CertifyOptions& opts, Rng& rng) {
  return rng.uniform_box(Vec::Constant(xs.dim(), opts.x_lo), Vec::Constant(xs.dim(), opts.x_hi));
}

// Random bounded test set of the given kind about `center`.
SetRep RandomTestSet(const NormedSpace& ys, const Vec& center, double spread, int kind, Rng& rng) {
  const int d = ys.dim();
  const Vec lo = center.array() - spread, hi = center.array() + spread;
  switch (kind) {
    case 0: return Ball{rng.uniform_box(lo, hi), rng.uniform(0.0, spread)};
    case 1: {
      const auto k = static_cast<Eigen::Index>(1 + rng.below(5));
      Mat pts(k, d);
      for (Eigen::Index i = 0; i < k; ++i) pts.row(i) = rng.uniform_box(lo, hi).transpose();
      return PointCloud{pts};
    }
    default: {
      const auto k = static_cast<Eigen::Index>(2 + rng.below(4));
      Mat pts(k, d);
      for (Eigen::Index i = 0; i < k; ++i) pts.row(i) = rng.uniform_box(lo, hi).transpose();
      return VPolytope{pts};
    }
  }
}

Vec DefaultCenter(const MapSpec& m, const InverseOptions& opts) {
  if (opts.y_center) return *opts.y_center;
  if (const auto* d = m.get_if<Dilation>()) return d->y0;
  return Vec::Zero(m.y_space().dim());
}

// Nearest member of Inv(S) = {u : S in Psi(u)} within distance `radius` of
// x, on a grid (X of dimension <= 2).
std::optional<Vec> GridMember(const MapSpec& m, const SetRep& s, const Vec& x, double radius,
                              double tol) {
  const NormedSpace& xs = m.x_space();
  const int d = xs.dim();
  if (d > 2) throw Error(ErrorCode::kNoRule, "inverse check: no closed form and dim X > 2");
  const int k = d == 1 ? 400 : 60;
  std::vector<std::pair<double, Vec>> cand;
  const double h = radius / k;
  if (d == 1) {
    for (int i = -k; i <= k; ++i) {
      Vec u = x;
      u[0] += i == k ? radius : (i == -k ? -radius : h * i);
      cand.emplace_back(xs.dist(u, x), u);
    }
  } else {
    for (int i = -k; i <= k; ++i) {
      for (int j = -k; j <= k; ++j) {
        Vec u = x;
        u[0] += h * i;
        u[1] += h * j;
        const double dd = xs.dist(u, x);
        if (dd <= radius) cand.emplace_back(dd, u);
      }
    }
  }
  std::stable_sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  // A few extreme points of S reject most candidates before the full excess.
  const std::vector<Vec> probes = Sample(m.y_space(), s, 8, 0x9e37);
  for (const auto& [dist, u] : cand) {
    const SetRep image = EvalMap(m, u);
    bool plausible = true;
    for (const auto& y : probes) {
      if (DistPoint(m.y_space(), y, image).value > tol) {
        plausible = false;
        break;
      }
    }
    if (!plausible) continue;
    const Estimate e = Excess(m.y_space(), s, image);
    if (!e.infinite() && e.value <= tol) return u;
  }
  return std::nullopt;
}

}  // namespace

std::string_view PropertyName(Property p) {
  switch (p) {
    case Property::kCovering: return "covering";
    case Property::kSetCovering: return "set_covering";
    case Property::kInverseErrorBound: return "inverse_error_bound";
    case Property::kInverseHausdorff: return "inverse_hausdorff";
    case Property::kExcSemicontinuity: return "exc_semicontinuity";
    case Property::kPenaltyExactness: return "penalty_exactness";
  }
  return "unknown";
}

std::string_view VerdictName(Verdict v) {
  return v == Verdict::kFalsified ? "falsified" : "no-counterexample-found";
}

void ParallelFor(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first;
  std::mutex mu;
  std::vector<std::thread> pool;
  const int workers = std::min(threads, n);
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!first) first = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

Certificate CheckCovering(const MapSpec& m, double alpha, const CertifyOptions& opts) {
  CheckAlpha(alpha);
  const NormedSpace& xs = m.x_space();
  const NormedSpace& ys = m.y_space();
  Certificate cert = NewCertificate(Property::kCovering, std::string(m.kind()), alpha, opts);
  const int points = std::max(4, opts.samples_per_trial / 4);
  cert.samples_per_trial = points;
  const auto lip = TryBetaOf(m);
  std::vector<std::optional<Violation>> slots(static_cast<std::size_t>(opts.trials));
  ParallelFor(opts.trials, opts.threads, [&](int t) {
    Rng rng(DeriveSeed(opts.seed, static_cast<std::uint64_t>(t)));
    const Vec x = TrialPoint(xs, opts, rng);
    const double r = rng.log_uniform(opts.r_lo, opts.r_hi);
    const SetRep image = EvalMap(m, x);
    const auto ys_pts = Sample(ys, Enlarge(ys, image, alpha * r), points, rng.next_u64(),
                               SamplingBox(ys, image, alpha * r));
    for (std::size_t k = 0; k < ys_pts.size(); ++k) {
      const Vec& y = ys_pts[k];
      const double tol = opts.tol * Scale(x, r, y);
      auto f = [&](const Vec& u) { return Dist(ys, y, EvalMap(m, u)); };
      const BallSearchResult res = BallSearch(xs, x, r, f, lip, DeriveSeed(opts.seed, 1000003ULL * t + k));
      if (res.value > tol) {
        Violation v;
        v.trial = t;
        v.x = x;
        v.r = r;
        v.y = y;
        v.u = res.best;
        v.margin = res.value - tol;
        v.conclusive = res.lower_bound > tol;
        v.note = v.conclusive ? "no preimage in B(x, r): certified grid lower bound"
                              : "search budget exhausted (inconclusive)";
        slots[static_cast<std::size_t>(t)] = std::move(v);
        return;
      }
    }
  });
  Collect(cert, slots);
  return cert;
}

Certificate CheckSetCovering(const MapSpec& m, double alpha, const CertifyOptions& opts) {
  CheckAlpha(alpha);
  const NormedSpace& xs = m.x_space();
  const NormedSpace& ys = m.y_space();
  Certificate cert = NewCertificate(Property::kSetCovering, std::string(m.kind()), alpha, opts);
  std::vector<std::optional<Violation>> slots(static_cast<std::size_t>(opts.trials));
  ParallelFor(opts.trials, opts.threads, [&](int t) {
    Rng rng(DeriveSeed(opts.seed, static_cast<std::uint64_t>(t)));
    const Vec x = TrialPoint(xs, opts, rng);
    const double r = rng.log_uniform(opts.r_lo, opts.r_hi);
    const std::uint64_t sample_seed = rng.next_u64();
    const SetRep image = EvalMap(m, x);
    const auto pts = Sample(ys, Enlarge(ys, image, alpha * r), opts.samples_per_trial, sample_seed,
                            SamplingBox(ys, image, alpha * r));
    double scale_y = 0.0;
    for (const auto& y : pts) scale_y = std::max(scale_y, y.cwiseAbs().maxCoeff());
    const double tol = opts.tol * std::max(Scale(x, r, Vec()), scale_y);
    auto worst = [&](const Vec& u) {
      const SetRep img = EvalMap(m, u);
      std::pair<double, std::size_t> w{0.0, 0};
      for (std::size_t k = 0; k < pts.size(); ++k) {
        const double d = Dist(ys, pts[k], img);
        if (d > w.first) w = {d, k};
      }
      return w;
    };
    std::string note;
    if (auto u = CoverWitness(m, x, r)) {
      if (xs.dist(*u, x) <= r + tol && worst(*u).first <= tol) return;
      note = "cover witness failed; ";
    } else {
      note = "no witness rule; ";
    }
    const WitnessSearch ws = SearchWitness(m, x, r, alpha, sample_seed, opts.samples_per_trial);
    if (ws.margin <= tol) return;
    Violation v;
    v.trial = t;
    v.x = x;
    v.r = r;
    v.u = ws.u;
    v.y = pts[worst(ws.u).second];
    v.margin = ws.margin - tol;
    v.conclusive = ws.lower_bound > tol;
    v.note = note + (v.conclusive ? "no u in B(x, r) covers the sampled enlargement (certified)"
                                  : "search found no covering u (inconclusive)");
    slots[static_cast<std::size_t>(t)] = std::move(v);
  });
  Collect(cert, slots);
  return cert;
}

double DilationInverseRadius(const MapSpec& m, const SetRep& s) {
  const auto* d = m.get_if<Dilation>();
  if (d == nullptr) throw Error(ErrorCode::kNoRule, "inverse radius: map is not a dilation");
  const Estimate reach = Excess(m.y_space(), s, SetRep(Ball{d->y0, 0.0}));
  if (reach.infinite()) return kInf;
  return std::max(0.0, (reach.value - d->b) / d->a);
}

Certificate CheckInverseErrorBound(const MapSpec& m, double alpha, const InverseOptions& opts) {
  CheckAlpha(alpha);
  const CertifyOptions& base = opts.base;
  const NormedSpace& xs = m.x_space();
  const NormedSpace& ys = m.y_space();
  Certificate cert = NewCertificate(Property::kInverseErrorBound, std::string(m.kind()), alpha, base);
  cert.samples_per_trial = 1;
  const Vec center = DefaultCenter(m, opts);
  const auto* dil = m.get_if<Dilation>();
  cert.note = dil ? "closed-form inverse" : "inverse members located on a grid";
  std::vector<std::optional<Violation>> slots(static_cast<std::size_t>(base.trials));
  ParallelFor(base.trials, base.threads, [&](int t) {
    Rng rng(DeriveSeed(base.seed, static_cast<std::uint64_t>(t)));
    const Vec x = TrialPoint(xs, base, rng);
    const SetRep s = opts.sets.empty()
                         ? RandomTestSet(ys, center, opts.set_spread, static_cast<int>(rng.below(3)), rng)
                         : opts.sets[static_cast<std::size_t>(t) % opts.sets.size()];
    const Estimate exc = Excess(ys, s, EvalMap(m, x));
    if (exc.infinite()) return;  // the bound holds trivially
    const double rhs = (exc.value + (exc.approximate ? exc.error : 0.0)) / alpha;
    const double tol = base.tol * Scale(x, rhs, center);
    std::optional<Vec> member;
    if (dil) {
      const double rho = DilationInverseRadius(m, s);
      const double dx = xs.dist(x, dil->anchor);
      if (dx >= rho) {
        member = x;
      } else {
        Vec dir = x - dil->anchor;
        if (dx > 0) {
          dir /= dx;
        } else {
          dir = Vec::Zero(xs.dim());
          dir[0] = 1.0;
        }
        member = Vec(dil->anchor + (rho * (1.0 + 1e-14) + 1e-300) * dir);
      }
      if (Excess(ys, s, EvalMap(m, *member)).value > tol) member.reset();
    } else {
      member = GridMember(m, s, x, rhs + tol, tol);
    }
    const double lhs = member ? xs.dist(x, *member) : kInf;
    if (lhs <= rhs + tol) return;
    Violation v;
    v.trial = t;
    v.x = x;
    v.r = rhs;
    if (member) v.y = *member;
    v.margin = member ? lhs - rhs - tol : kInf;
    v.conclusive = dil != nullptr;
    v.set_a = s;
    v.note = member ? "nearest inverse member beyond exc/alpha"
                    : "no inverse member within exc/alpha";
    slots[static_cast<std::size_t>(t)] = std::move(v);
  });
  Collect(cert, slots);
  return cert;
}

Certificate CheckInverseHausdorff(const MapSpec& m, double alpha, const InverseOptions& opts) {
  CheckAlpha(alpha);
  if (!m.is<Dilation>()) {
    throw Error(ErrorCode::kNoRule, "inverse Hausdorff check needs a closed-form inverse (dilation)");
  }
  const CertifyOptions& base = opts.base;
  const NormedSpace& ys = m.y_space();
  Certificate cert = NewCertificate(Property::kInverseHausdorff, std::string(m.kind()), alpha, base);
  cert.samples_per_trial = 2;
  cert.note = "H(Inv A, Inv B) = |rho(A) - rho(B)| (closed form)";
  const Vec center = DefaultCenter(m, opts);
  std::vector<std::optional<Violation>> slots(static_cast<std::size_t>(base.trials));
  ParallelFor(base.trials, base.threads, [&](int t) {
    Rng rng(DeriveSeed(base.seed, static_cast<std::uint64_t>(t)));
    SetRep a = Ball{center, 0.0}, b = Ball{center, 0.0};
    if (opts.sets.size() >= 2) {
      a = opts.sets[(2 * static_cast<std::size_t>(t)) % opts.sets.size()];
      b = opts.sets[(2 * static_cast<std::size_t>(t) + 1) % opts.sets.size()];
    } else {
      const int kind = static_cast<int>(rng.below(3));
      a = RandomTestSet(ys, center, opts.set_spread, kind, rng);
      b = RandomTestSet(ys, center, opts.set_spread, kind, rng);
    }
    const double lhs = std::abs(DilationInverseRadius(m, a) - DilationInverseRadius(m, b));
    const Estimate h = Hausdorff(ys, a, b);
    const double rhs = (h.value + (h.approximate ? h.error : 0.0)) / alpha;
    const double tol = base.tol * Scale(center, rhs, Vec());
    if (lhs <= rhs + tol) return;
    Violation v;
    v.trial = t;
    v.r = rhs;
    v.margin = lhs - rhs - tol;
    v.conclusive = !h.approximate;
    v.set_a = a;
    v.set_b = b;
    v.note = "H(Inv A, Inv B) exceeds H(A, B) / alpha";
    slots[static_cast<std::size_t>(t)] = std::move(v);
  });
  Collect(cert, slots);
  return cert;
}

Certificate CheckExcSemicontinuity(const MapSpec& phi, const MapSpec& psi, const Vec& x0,
                                   const CertifyOptions& opts) {
  const NormedSpace& xs = phi.x_space();
  const NormedSpace& ys = phi.y_space();
  if (!(psi.x_space() == xs) || !(psi.y_space() == ys)) {
    throw Error(ErrorCode::kDimensionMismatch, "semicontinuity: Phi and Psi spaces differ");
  }
  xs.check(x0, "semicontinuity");
  Certificate cert = NewCertificate(Property::kExcSemicontinuity,
                                    std::string(phi.kind()) + "/" + std::string(psi.kind()), 0.0, opts);
  constexpr int kTerms = 24;
  cert.samples_per_trial = kTerms;
  const auto bphi = TryBetaOf(phi), bpsi = TryBetaOf(psi);
  std::optional<double> lip;
  if (bphi && bpsi) lip = *bphi + *bpsi;
  cert.note = lip ? "eps(n) = (beta_phi + beta_psi) d(x_n, x0)" : "eps(n) = sqrt(d(x_n, x0))";
  auto exc = [&](const Vec& x) { return Excess(ys, EvalMap(phi, x), EvalMap(psi, x)); };
  const Estimate e0 = exc(x0);
  std::vector<std::optional<Violation>> slots(static_cast<std::size_t>(opts.trials));
  ParallelFor(opts.trials, opts.threads, [&](int t) {
    Rng rng(DeriveSeed(opts.seed, static_cast<std::uint64_t>(t)));
    const Vec w1 = RandomUnit(xs, rng), w2 = RandomUnit(xs, rng);
    const double scale = rng.log_uniform(1e-3, 1.0);
    for (int n = kTerms / 2; n <= kTerms; ++n) {
      const Vec xn = x0 + scale * std::ldexp(1.0, -n) * (n % 2 == 0 ? w1 : w2);
      const double d = xs.dist(xn, x0);
      const Estimate en = exc(xn);
      double deficit;
      if (e0.infinite()) {
        deficit = en.infinite() ? 0.0 : kInf;
      } else {
        const double tol = opts.tol * Scale(x0, e0.value, Vec());
        const double eps = (lip ? *lip * d : std::sqrt(d)) + tol + (en.approximate ? en.error : 0.0);
        deficit = (e0.value - eps) - en.value;
      }
      if (deficit > 0) {
        Violation v;
        v.trial = t;
        v.x = xn;
        v.r = d;
        v.margin = deficit;
        v.conclusive = !en.approximate && !e0.approximate;
        v.note = "excess drops below exc(x0) - eps(n) along the sequence";
        slots[static_cast<std::size_t>(t)] = std::move(v);
        return;
      }
    }
  });
  Collect(cert, slots);
  return cert;
}

bool RecheckViolation(const MapSpec& m, Property property, double alpha, const Violation& v,
                      double tol) {
  const NormedSpace& ys = m.y_space();
  switch (property) {
    case Property::kCovering:
    case Property::kSetCovering: {
      const double t = tol * Scale(v.x, v.r, v.y);
      const bool in_enlargement = Dist(ys, v.y, EvalMap(m, v.x)) <= alpha * v.r + t;
      const bool fails = Dist(ys, v.y, EvalMap(m, v.u)) > t;
      if (!in_enlargement || !fails) return false;
      if (property == Property::kCovering && v.conclusive) {
        auto f = [&](const Vec& u) { return Dist(ys, v.y, EvalMap(m, u)); };
        const BallSearchResult res = BallSearch(m.x_space(), v.x, v.r, f, TryBetaOf(m), 0);
        return res.lower_bound > t;
      }
      return true;
    }
    case Property::kInverseErrorBound: {
      if (!v.set_a) return false;
      const Estimate exc = Excess(ys, *v.set_a, EvalMap(m, v.x));
      if (exc.infinite()) return false;
      if (const auto* d = m.get_if<Dilation>()) {
        const double dist_inv =
            std::max(0.0, DilationInverseRadius(m, *v.set_a) - m.x_space().dist(v.x, d->anchor));
        return dist_inv > exc.value / alpha + tol * Scale(v.x, v.r, Vec());
      }
      return v.margin > 0;
    }
    case Property::kInverseHausdorff: {
      if (!v.set_a || !v.set_b) return false;
      const double lhs = std::abs(DilationInverseRadius(m, *v.set_a) - DilationInverseRadius(m, *v.set_b));
      return lhs > Hausdorff(ys, *v.set_a, *v.set_b).value / alpha + tol * std::max(1.0, v.r);
    }
    default:
      return v.margin > 0;
  }
}

}  // namespace setcover
