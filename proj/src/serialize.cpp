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

#include "setcover/serialize.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace setcover {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void Fail(const std::string& path, const std::string& why) {
  throw Error(ErrorCode::kParse, path + ": " + why);
}

// Field access on a JSON object that remembers which keys were consumed, so
// that leftovers can be rejected as unknown.
class Fields {
 public:
  Fields(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) Fail(path_, "expected an object");
  }
  const Json& req(const std::string& k) {
    used_.insert(k);
    auto it = j_.find(k);
    if (it == j_.end()) Fail(path_, "missing field '" + k + "'");
    return *it;
  }
  const Json* opt(const std::string& k) {
    used_.insert(k);
    auto it = j_.find(k);
    return it == j_.end() ? nullptr : &*it;
  }
  std::string at(const std::string& k) const { return path_ + "." + k; }
  const std::string& path() const { return path_; }

  double real(const std::string& k) { return RealFromJson(req(k), at(k)); }
  double real(const std::string& k, double dflt) {
    const Json* v = opt(k);
    return v ? RealFromJson(*v, at(k)) : dflt;
  }
  std::optional<double> opt_real(const std::string& k) {
    const Json* v = opt(k);
    return v ? std::optional<double>(RealFromJson(*v, at(k))) : std::nullopt;
  }
  long integer(const std::string& k, long dflt) {
    const Json* v = opt(k);
    if (!v) return dflt;
    if (!v->is_number_integer()) Fail(at(k), "expected an integer");
    return v->get<long>();
  }
  std::uint64_t u64(const std::string& k, std::uint64_t dflt) {
    const Json* v = opt(k);
    if (!v) return dflt;
    if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<long long>() >= 0)) {
      Fail(at(k), "expected a non-negative integer");
    }
    return v->get<std::uint64_t>();
  }
  std::string str(const std::string& k) {
    const Json& v = req(k);
    if (!v.is_string()) Fail(at(k), "expected a string");
    return v.get<std::string>();
  }
  std::string str(const std::string& k, const std::string& dflt) {
    return opt(k) ? str(k) : dflt;
  }
  Vec vec(const std::string& k) { return VecFromJson(req(k), at(k)); }
  Mat mat(const std::string& k) { return MatFromJson(req(k), at(k)); }
  std::vector<double> reals(const std::string& k) {
    const Json& v = req(k);
    if (v.is_number() || v.is_string()) return {RealFromJson(v, at(k))};
    if (!v.is_array()) Fail(at(k), "expected an array of reals");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(RealFromJson(v[i], at(k) + "[" + std::to_string(i) + "]"));
    return out;
  }
  std::pair<double, double> range(const std::string& k, std::pair<double, double> dflt) {
    if (!opt(k)) return dflt;
    const auto r = reals(k);
    if (r.size() != 2 || !(r[0] <= r[1])) Fail(at(k), "expected [lo, hi] with lo <= hi");
    return {r[0], r[1]};
  }

  void done() const {
    for (const auto& item : j_.items()) {
      if (!used_.count(item.key())) Fail(path_ + "." + item.key(), "unknown field");
    }
  }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> used_;
};

// Re-throws construction errors of validated types with the JSON path.
template <class F>
auto AtPath(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw;
    Fail(path, std::string(ErrorCodeName(e.code())) + ": " + e.what());
  }
}

std::string Index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

Json OptReal(const std::optional<double>& v) { return v ? RealToJson(*v) : Json(nullptr); }

Json FormGroupsToJson(const std::vector<FormGroup>& groups) {
  Json a = Json::array();
  for (const auto& g : groups) a.push_back(Json{{"forms", MatToJson(g.forms)}, {"bound", RealToJson(g.bound)}});
  return a;
}

std::vector<FormGroup> FormGroupsFromJson(const Json& j, const std::string& path) {
  if (!j.is_array()) Fail(path, "expected an array of form groups");
  std::vector<FormGroup> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    Fields f(j[i], Index(path, i));
    FormGroup g;
    g.forms = f.mat("forms");
    g.bound = f.real("bound");
    f.done();
    out.push_back(std::move(g));
  }
  return out;
}

Json ParamMapToJson(const ParamMapSpec& pm) {
  Json b = Json::array();
  for (const auto& x : pm.bindings) {
    b.push_back(Json{{"field", x.field}, {"offset", RealToJson(x.offset)}, {"coeffs", VecToJson(x.coeffs)}});
  }
  return Json{{"map", ToJson(pm.base)}, {"bindings", b}};
}

ParamMapSpec ParamMapFromJson(const Json& j, const std::string& path) {
  Fields f(j, path);
  ParamMapSpec pm{MapFromJson(f.req("map"), f.at("map")), {}};
  if (const Json* b = f.opt("bindings")) {
    if (!b->is_array()) Fail(f.at("bindings"), "expected an array");
    for (std::size_t i = 0; i < b->size(); ++i) {
      Fields g((*b)[i], Index(f.at("bindings"), i));
      ParamBinding pb;
      pb.field = g.str("field");
      pb.offset = g.real("offset", 0.0);
      pb.coeffs = g.vec("coeffs");
      g.done();
      pm.bindings.push_back(std::move(pb));
    }
  }
  f.done();
  return pm;
}

VerifySpec VerifyFromJson(const Json& j, const std::string& path, bool need_x_bar) {
  Fields f(j, path);
  VerifySpec v;
  if (need_x_bar) v.x_bar = f.vec("x_bar");
  v.radius = f.real("radius", v.radius);
  v.grid_n = static_cast<int>(f.integer("grid_n", v.grid_n));
  f.done();
  return v;
}

PatternOptions PatternFromJson(const Json& j, const std::string& path) {
  Fields f(j, path);
  PatternOptions p;
  p.initial_step = f.real("initial_step", p.initial_step);
  p.min_step = f.real("min_step", p.min_step);
  p.max_evaluations = static_cast<int>(f.integer("max_evaluations", p.max_evaluations));
  f.done();
  return p;
}

Json PatternToJson(const PatternOptions& p) {
  return Json{{"initial_step", RealToJson(p.initial_step)},
              {"min_step", RealToJson(p.min_step)},
              {"max_evaluations", p.max_evaluations}};
}

}  // namespace

// ---------------------------------------------------------------------------
// Scalars and arrays.

Json RealToJson(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return v;
}

double RealFromJson(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "+inf" || s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  Fail(path, "expected a real number (or \"+inf\" / \"-inf\")");
}

Json VecToJson(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(RealToJson(v[i]));
  return a;
}

Vec VecFromJson(const Json& j, const std::string& path) {
  if (!j.is_array()) Fail(path, "expected an array of reals");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = RealFromJson(j[i], Index(path, i));
  return v;
}

Json MatToJson(const Mat& m) {
  Json a = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(VecToJson(m.row(r).transpose()));
  return a;
}

Mat MatFromJson(const Json& j, const std::string& path) {
  if (!j.is_array()) Fail(path, "expected an array of rows");
  if (j.empty()) return Mat(0, 0);
  std::size_t cols = 0;
  Mat m;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Vec row = VecFromJson(j[r], Index(path, r));
    if (r == 0) {
      cols = static_cast<std::size_t>(row.size());
      m.resize(static_cast<Eigen::Index>(j.size()), row.size());
    } else if (static_cast<std::size_t>(row.size()) != cols) {
      Fail(Index(path, r), "row length differs from the first row");
    }
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

// ---------------------------------------------------------------------------
// Spaces, sets, functions, maps.

Json ToJson(const NormedSpace& s) {
  switch (s.kind()) {
    case NormKind::kEuclidean:
      return Json{{"dim", s.dim()}, {"norm", "euclidean"}};
    case NormKind::kMax:
      return Json{{"dim", s.dim()}, {"norm", "max"}};
    case NormKind::kP:
      return Json{{"dim", s.dim()}, {"norm", "p"}, {"p", RealToJson(s.p())}};
  }
  return {};
}

NormedSpace SpaceFromJson(const Json& j, const std::string& path) {
  Fields f(j, path);
  const int dim = static_cast<int>(f.integer("dim", -1));
  if (dim < 1) Fail(f.at("dim"), "expected an integer >= 1");
  const std::string norm = f.str("norm", "euclidean");
  std::optional<NormedSpace> s;
  if (norm == "euclidean") {
    s = NormedSpace::Euclidean(dim);
  } else if (norm == "max") {
    s = NormedSpace::Max(dim);
  } else if (norm == "p") {
    const double p = f.real("p");
    s = AtPath(path, [&] { return NormedSpace::P(dim, p); });
  } else {
    Fail(f.at("norm"), "unknown norm '" + norm + "' (euclidean, max, p)");
  }
  f.done();
  return *s;
}

Json ToJson(const SetRep& s) {
  Json j{{"kind", std::string(s.kind())}};
  std::visit(Overloaded{
                 [&](const Ball& b) {
                   j["center"] = VecToJson(b.center);
                   j["radius"] = RealToJson(b.radius);
                 },
                 [&](const Sphere& b) {
                   j["center"] = VecToJson(b.center);
                   j["radius"] = RealToJson(b.radius);
                 },
                 [&](const Box& b) {
                   j["lo"] = VecToJson(b.lo);
                   j["hi"] = VecToJson(b.hi);
                 },
                 [&](const VPolytope& p) { j["vertices"] = MatToJson(p.vertices); },
                 [&](const PointCloud& p) { j["points"] = MatToJson(p.points); },
                 [&](const SublevelRegion& r) { j["groups"] = FormGroupsToJson(r.groups); },
                 [&](const Orthant& o) { j["apex"] = VecToJson(o.apex); },
                 [&](const Enlarged& e) {
                   j["base"] = ToJson(*e.base);
                   j["radius"] = RealToJson(e.radius);
                 },
             },
             s.variant());
  return j;
}

SetRep SetFromJson(const Json& j, const std::string& path) {
  Fields f(j, path);
  const std::string kind = f.str("kind");
  std::optional<SetRep> out;
  auto make = [&](auto v) { out.emplace(AtPath(path, [&] { return SetRep(std::move(v)); })); };
  if (kind == "ball") {
    make(Ball{f.vec("center"), f.real("radius")});
  } else if (kind == "sphere") {
    make(Sphere{f.vec("center"), f.real("radius")});
  } else if (kind == "box") {
    make(Box{f.vec("lo"), f.vec("hi")});
  } else if (kind == "vpolytope") {
    make(VPolytope{f.mat("vertices")});
  } else if (kind == "point_cloud") {
    make(PointCloud{f.mat("points")});
  } else if (kind == "sublevel") {
    make(SublevelRegion{FormGroupsFromJson(f.req("groups"), f.at("groups"))});
  } else if (kind == "orthant") {
    make(Orthant{f.vec("apex")});
  } else if (kind == "enlarged") {
    auto base = std::make_shared<const SetRep>(SetFromJson(f.req("base"), f.at("base")));
    make(Enlarged{base, f.real("radius")});
  } else {
    Fail(f.at("kind"), "unknown set kind '" + kind + "'");
  }
  f.done();
  return *out;
}

Json ToJson(const CatalogFn& g) {
  return std::visit(Overloaded{
                        [](const AffineFn& a) {
                          return Json{{"kind", "affine"}, {"m", MatToJson(a.m)}, {"c", VecToJson(a.c)}};
                        },
                        [](const ScaledNormRadial& s) {
                          return Json{{"kind", "scaled_norm_radial"},
                                      {"s", RealToJson(s.s)},
                                      {"v", VecToJson(s.v)},
                                      {"xhat", VecToJson(s.xhat)}};
                        },
                    },
                    g);
}

CatalogFn FnFromJson(const Json& j, const std::string& path) {
  Fields f(j, path);
  const std::string kind = f.str("kind");
  std::optional<CatalogFn> out;
  if (kind == "affine") {
    AffineFn a{f.mat("m"), f.vec("c")};
    if (a.m.rows() != a.c.size()) Fail(f.at("c"), "length must equal the number of rows of m");
    out = a;
  } else if (kind == "scaled_norm_radial") {
    ScaledNormRadial s{f.real("s"), f.vec("v"), f.vec("xhat")};
    out = s;
  } else {
    Fail(f.at("kind"), "unknown function kind '" + kind + "' (affine, scaled_norm_radial)");
  }
  f.done();
  return *out;
}

Json ToJson(const MapSpec& m) {
  Json j{{"kind", std::string(m.kind())}, {"x_space", ToJson(m.x_space())}, {"y_space", ToJson(m.y_space())}};
  std::visit(Overloaded{
                 [&](const Dilation& d) {
                   j["y0"] = VecToJson(d.y0);
                   j["a"] = RealToJson(d.a);
                   j["b"] = RealToJson(d.b);
                   j["anchor"] = VecToJson(d.anchor);
                 },
                 [&](const SphereScale&) {},
                 [&](const UnitBallTranslate&) {},
                 [&](const SublinearSystem& s) { j["groups"] = FormGroupsToJson(s.groups); },
                 [&](const Epigraphical& e) { j["a"] = MatToJson(e.a); },
                 [&](const PolyhedralProcess& p) {
                   j["cx"] = MatToJson(p.cx);
                   j["cy"] = MatToJson(p.cy);
                 },
                 [&](const Sum& s) {
                   j["base"] = ToJson(*s.base);
                   j["g"] = ToJson(s.g);
                 },
                 [&](const Composed& c) {
                   j["g"] = ToJson(CatalogFn(c.g));
                   j["base"] = ToJson(*c.base);
                 },
                 [&](const BallValued& b) {
                   j["center"] = ToJson(b.center);
                   j["c0"] = RealToJson(b.c0);
                   j["c1"] = RealToJson(b.c1);
                   j["xhat"] = VecToJson(b.xhat);
                 },
             },
             m.variant());
  return j;
}

MapSpec MapFromJson(const Json& j, const std::string& path) {
  Fields f(j, path);
  const std::string kind = f.str("kind");
  const NormedSpace xs = SpaceFromJson(f.req("x_space"), f.at("x_space"));
  const NormedSpace ys = SpaceFromJson(f.req("y_space"), f.at("y_space"));
  std::optional<MapSpec::Variant> v;
  if (kind == "dilation") {
    Dilation d;
    d.y0 = f.opt("y0") ? f.vec("y0") : Vec(Vec::Zero(ys.dim()));
    d.a = f.real("a", d.a);
    d.b = f.real("b", d.b);
    d.anchor = f.opt("anchor") ? f.vec("anchor") : Vec(Vec::Zero(xs.dim()));
    v = d;
  } else if (kind == "sphere_scale") {
    v = SphereScale{};
  } else if (kind == "unit_ball_translate") {
    v = UnitBallTranslate{};
  } else if (kind == "sublinear") {
    v = SublinearSystem{FormGroupsFromJson(f.req("groups"), f.at("groups"))};
  } else if (kind == "epigraphical") {
    v = Epigraphical{f.mat("a")};
  } else if (kind == "polyhedral_process") {
    v = PolyhedralProcess{f.mat("cx"), f.mat("cy")};
  } else if (kind == "sum") {
    auto base = std::make_shared<const MapSpec>(MapFromJson(f.req("base"), f.at("base")));
    v = Sum{base, FnFromJson(f.req("g"), f.at("g"))};
  } else if (kind == "composed") {
    const CatalogFn g = FnFromJson(f.req("g"), f.at("g"));
    const auto* a = std::get_if<AffineFn>(&g);
    if (a == nullptr) Fail(f.at("g"), "composed maps need an affine g");
    auto base = std::make_shared<const MapSpec>(MapFromJson(f.req("base"), f.at("base")));
    v = Composed{*a, base};
  } else if (kind == "ball_valued") {
    BallValued b;
    b.center = FnFromJson(f.req("center"), f.at("center"));
    b.c0 = f.real("c0", b.c0);
    b.c1 = f.real("c1", b.c1);
    b.xhat = f.opt("xhat") ? f.vec("xhat") : Vec(Vec::Zero(xs.dim()));
    v = b;
  } else {
    Fail(f.at("kind"), "unknown map kind '" + kind + "'");
  }
  f.done();
  return AtPath(path, [&] { return MapSpec(xs, ys, std::move(*v)); });
}

Json ToJson(const ObjectiveSpec& obj) {
  return std::visit(Overloaded{
                        [](const NormToPoint& o) { return Json{{"kind", "norm_to_point"}, {"target", VecToJson(o.target)}}; },
                        [](const LinearObjective& o) { return Json{{"kind", "linear"}, {"c", VecToJson(o.c)}}; },
                        [](const AbsCoord& o) { return Json{{"kind", "abs_coord"}, {"index", o.index}}; },
                        [](const WeightedSum& o) {
                          Json terms = Json::array();
                          for (const auto& t : o.terms) terms.push_back(ToJson(*t));
                          Json w = Json::array();
                          for (double x : o.weights) w.push_back(RealToJson(x));
                          return Json{{"kind", "weighted_sum"}, {"weights", w}, {"terms", terms}};
                        },
                    },
                    obj.variant());
}

ObjectiveSpec ObjectiveFromJson(const Json& j, const std::string& path) {
  Fields f(j, path);
  const std::string kind = f.str("kind");
  std::optional<ObjectiveSpec::Variant> v;
  if (kind == "norm_to_point") {
    v = NormToPoint{f.vec("target")};
  } else if (kind == "linear") {
    v = LinearObjective{f.vec("c")};
  } else if (kind == "abs_coord") {
    v = AbsCoord{static_cast<int>(f.integer("index", 0))};
  } else if (kind == "weighted_sum") {
    WeightedSum w;
    w.weights = f.reals("weights");
    const Json& terms = f.req("terms");
    if (!terms.is_array()) Fail(f.at("terms"), "expected an array of objectives");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      w.terms.push_back(std::make_shared<const ObjectiveSpec>(ObjectiveFromJson(terms[i], Index(f.at("terms"), i))));
    }
    v = w;
  } else {
    Fail(f.at("kind"), "unknown objective kind '" + kind + "'");
  }
  f.done();
  return AtPath(path, [&] { return ObjectiveSpec(std::move(*v)); });
}

Json ToJson(const InclusionInstance& inst) {
  Json j{{"psi", ToJson(inst.psi)}, {"phi", ToJson(inst.phi)}};
  if (inst.alpha) j["alpha"] = RealToJson(*inst.alpha);
  if (inst.beta) j["beta"] = RealToJson(*inst.beta);
  if (inst.alpha_used) j["alpha_used"] = RealToJson(*inst.alpha_used);
  j["tol"] = RealToJson(inst.tol);
  j["max_iter"] = inst.max_iter;
  j["seed"] = inst.seed;
  return j;
}

InclusionInstance InclusionFromJson(const Json& j, const std::string& path) {
  Fields f(j, path);
  InclusionInstance inst{MapFromJson(f.req("psi"), f.at("psi")), MapFromJson(f.req("phi"), f.at("phi")), {}, {}, {}};
  inst.alpha = f.opt_real("alpha");
  inst.beta = f.opt_real("beta");
  inst.alpha_used = f.opt_real("alpha_used");
  inst.tol = f.real("tol", inst.tol);
  inst.max_iter = static_cast<int>(f.integer("max_iter", inst.max_iter));
  inst.seed = f.u64("seed", inst.seed);
  f.done();
  if (inst.psi.x_space().dim() != inst.phi.x_space().dim() || inst.psi.y_space().dim() != inst.phi.y_space().dim()) {
    Fail(path, "psi and phi must share X and Y");
  }
  return inst;
}

Json ToJson(const ParamFamily& fam) {
  return Json{{"p_space", ToJson(fam.p_space)},
              {"phi", ParamMapToJson(fam.phi)},
              {"psi", ParamMapToJson(fam.psi)},
              {"p_bar", VecToJson(fam.p_bar)},
              {"member_tol", RealToJson(fam.member_tol)}};
}

ParamFamily FamilyFromJson(const Json& j, const std::string& path) {
  Fields f(j, path);
  ParamFamily fam{SpaceFromJson(f.req("p_space"), f.at("p_space")), ParamMapFromJson(f.req("phi"), f.at("phi")),
                  ParamMapFromJson(f.req("psi"), f.at("psi")), f.vec("p_bar")};
  fam.member_tol = f.real("member_tol", fam.member_tol);
  f.done();
  if (fam.p_bar.size() != fam.p_space.dim()) Fail(f.at("p_bar"), "dimension differs from p_space");
  // Surface binding errors now rather than at the first evaluation.
  AtPath(path, [&] { return fam.InstanceAt(fam.p_bar); });
  return fam;
}

Property PropertyFromName(const std::string& name, const std::string& path) {
  for (Property p : {Property::kCovering, Property::kSetCovering, Property::kInverseErrorBound,
                     Property::kInverseHausdorff, Property::kExcSemicontinuity, Property::kPenaltyExactness}) {
    if (PropertyName(p) == name) return p;
  }
  Fail(path, "unknown property '" + name + "'");
}

// ---------------------------------------------------------------------------
// Reports.

Json ToJson(const Violation& v) {
  Json j{{"trial", v.trial}, {"x", VecToJson(v.x)}, {"r", RealToJson(v.r)}, {"y", VecToJson(v.y)},
         {"u", VecToJson(v.u)}, {"margin", RealToJson(v.margin)}, {"conclusive", v.conclusive}};
  if (v.set_a) j["set_a"] = ToJson(*v.set_a);
  if (v.set_b) j["set_b"] = ToJson(*v.set_b);
  j["note"] = v.note;
  return j;
}

Json ToJson(const Certificate& c) {
  Json viol = Json::array();
  int conclusive = 0;
  for (const auto& v : c.violations) {
    viol.push_back(ToJson(v));
    conclusive += v.conclusive ? 1 : 0;
  }
  return Json{{"property", std::string(PropertyName(c.property))},
              {"subject", c.subject},
              {"verdict", std::string(VerdictName(c.verdict()))},
              {"alpha", RealToJson(c.alpha)},
              {"trials", c.trials},
              {"seed", c.seed},
              {"tol", RealToJson(c.tol)},
              {"samples_per_trial", c.samples_per_trial},
              {"violation_count", c.violations.size()},
              {"conclusive_count", conclusive},
              {"violations", viol},
              {"note", c.note}};
}

Json ToJson(const SolveTrace& t, int iterate_cap) {
  const int n = static_cast<int>(t.iterates.size());
  const int cap = std::max(2, iterate_cap);
  Json its = Json::array();
  auto push = [&](int k) {
    const Iterate& it = t.iterates[static_cast<std::size_t>(k)];
    its.push_back(Json{{"k", k}, {"x", VecToJson(it.x)}, {"r", RealToJson(it.r)}, {"step", RealToJson(it.step)}});
  };
  if (n <= cap) {
    for (int k = 0; k < n; ++k) push(k);
  } else {
    for (int k = 0; k < cap - 1; ++k) push(k);
    push(n - 1);
  }
  Json j{{"status", std::string(SolveStatusName(t.status))},
         {"iterations", t.iterations()},
         {"constants",
          {{"alpha", RealToJson(t.constants.alpha)},
           {"beta", RealToJson(t.constants.beta)},
           {"alpha_used", RealToJson(t.constants.alpha_used)}}},
         {"tol", RealToJson(t.tol)},
         {"x_star", VecToJson(t.x_star)},
         {"r_final", RealToJson(t.r_final)},
         {"r_verified", RealToJson(t.r_verified)},
         {"max_ratio", RealToJson(t.max_ratio)},
         {"bound",
          {{"displacement", RealToJson(t.bound.displacement)},
           {"path_length", RealToJson(t.bound.path_length)},
           {"bound", RealToJson(t.bound.bound)},
           {"holds", t.bound.holds}}},
         {"witness_fallback", t.witness_fallback}};
  if (t.closing) {
    const ClosingStep& c = *t.closing;
    j["closing_step"] = Json{{"from", VecToJson(c.from)},         {"to", VecToJson(c.to)},
                             {"r_before", RealToJson(c.r_before)}, {"r_after", RealToJson(c.r_after)},
                             {"step", RealToJson(c.step)},         {"bound", RealToJson(c.bound)},
                             {"accepted", c.accepted}};
  } else {
    j["closing_step"] = nullptr;
  }
  j["iterates_omitted"] = std::max(0, n - cap);
  j["iterates"] = its;
  j["note"] = t.note;
  return j;
}

Json ToJson(const StronglyFixedResult& r, int iterate_cap) {
  return Json{{"x", VecToJson(r.x)},
              {"r", RealToJson(r.r)},
              {"verified", r.verified},
              {"dist_x0", RealToJson(r.dist_x0)},
              {"displacement", RealToJson(r.displacement)},
              {"run_bound", RealToJson(r.run_bound)},
              {"limit_bound", RealToJson(r.limit_bound)},
              {"trace", ToJson(r.trace, iterate_cap)}};
}

Json ToJson(const PenaltyResult& r) {
  Json trace = Json::array();
  for (const auto& s : r.trace) {
    trace.push_back(Json{{"x", VecToJson(s.x)}, {"value", RealToJson(s.value)}, {"step", RealToJson(s.step)}});
  }
  return Json{{"x", VecToJson(r.x)},
              {"value", RealToJson(r.value)},
              {"evaluations", r.evaluations},
              {"budget_exhausted", r.budget_exhausted},
              {"seed", r.seed},
              {"options", PatternToJson(r.options)},
              {"trace", trace}};
}

Json ToJson(const ConverseReport& r) {
  Json runs = Json::array();
  for (const auto& run : r.runs) {
    runs.push_back(Json{{"x", VecToJson(run.x)},
                        {"value", RealToJson(run.value)},
                        {"evaluations", run.evaluations},
                        {"budget_exhausted", run.budget_exhausted},
                        {"seed", run.seed}});
  }
  return Json{{"l", RealToJson(r.l)},
              {"winner", VecToJson(r.winner)},
              {"value", RealToJson(r.value)},
              {"strict", r.strict},
              {"residual", RealToJson(r.residual)},
              {"feasible", r.feasible},
              {"oracle_point", VecToJson(r.oracle_point)},
              {"oracle_value", RealToJson(r.oracle_value)},
              {"optimal", r.optimal},
              {"runs", runs},
              {"certificate", ToJson(r.certificate)}};
}

Json ToJson(const CalmnessRecord& r) {
  Json radii = Json::array(), zeta = Json::array(), samples = Json::array();
  for (double x : r.radii) radii.push_back(RealToJson(x));
  for (double x : r.zeta_by_radius) zeta.push_back(RealToJson(x));
  for (const auto& s : r.samples) {
    samples.push_back(Json{{"radius", RealToJson(s.radius)}, {"p", VecToJson(s.p)}, {"x", VecToJson(s.x)}, {"ratio", RealToJson(s.ratio)}});
  }
  return Json{{"zeta", RealToJson(r.zeta)}, {"nu_slope", RealToJson(r.nu_slope)}, {"radii", radii},
              {"zeta_by_radius", zeta},     {"samples", samples}};
}

Json ToJson(const SemiregularityRecord& r) {
  Json samples = Json::array();
  for (const auto& s : r.samples) {
    samples.push_back(Json{{"x", VecToJson(s.x)}, {"dist_x", RealToJson(s.dist_x)}, {"dist_p", RealToJson(s.dist_p)}, {"ratio", RealToJson(s.ratio)}});
  }
  return Json{{"theta", RealToJson(r.theta)},
              {"kappa", RealToJson(r.kappa)},
              {"excluded_in_r", r.excluded_in_r},
              {"excluded_no_preimage", r.excluded_no_preimage},
              {"samples", samples}};
}

Json ToJson(const ExactnessConsistency& r) {
  return Json{{"zeta", RealToJson(r.zeta)},
              {"kappa", RealToJson(r.kappa)},
              {"preconditions", r.preconditions},
              {"l", OptReal(r.l)},
              {"certificate", ToJson(r.certificate)}};
}

Json ToJson(const MapConstants& c) {
  return Json{{"alpha", RealToJson(c.alpha)}, {"beta", OptReal(c.beta)}, {"gamma", RealToJson(c.gamma)},
              {"rule", c.rule},               {"exact", c.exact}};
}

Json ToJson(const InteriorReport& r) {
  return Json{{"t_star", RealToJson(r.t_star)},
              {"u0", r.u0 ? VecToJson(*r.u0) : Json(nullptr)},
              {"alpha", RealToJson(r.alpha)},
              {"set_covering", r.alpha > 0}};
}

// ---------------------------------------------------------------------------
// Instance files.

std::string_view InstanceKindName(InstanceKind k) {
  switch (k) {
    case InstanceKind::kCertify: return "certify";
    case InstanceKind::kInclusion: return "inclusion";
    case InstanceKind::kPenalty: return "penalty";
    case InstanceKind::kSfix: return "sfix";
    case InstanceKind::kFamily: return "family";
  }
  return "?";
}

InstanceFile InstanceFromJson(const Json& j) {
  Fields f(j, "$");
  const std::string schema = f.str("schema");
  if (schema != kSchemaTag) Fail(f.at("schema"), "unsupported schema tag '" + schema + "' (expected " + kSchemaTag + ")");
  InstanceFile in;
  const std::string kind = f.str("kind");
  bool known = false;
  for (InstanceKind k : {InstanceKind::kCertify, InstanceKind::kInclusion, InstanceKind::kPenalty, InstanceKind::kSfix,
                         InstanceKind::kFamily}) {
    if (InstanceKindName(k) == kind) {
      in.kind = k;
      known = true;
    }
  }
  if (!known) Fail(f.at("kind"), "unknown instance kind '" + kind + "'");
  in.description = f.str("description", "");
  in.seed = f.u64("seed", 0);
  in.tol = f.opt_real("tol");
  in.threads = static_cast<int>(f.integer("threads", 1));
  if (in.threads < 1) Fail(f.at("threads"), "must be >= 1");

  switch (in.kind) {
    case InstanceKind::kCertify: {
      in.map = MapFromJson(f.req("map"), f.at("map"));
      if (f.opt("phi")) in.phi = MapFromJson(f.req("phi"), f.at("phi"));
      if (f.opt("x0")) in.x0 = f.vec("x0");
      const Json& checks = f.req("checks");
      if (!checks.is_array() || checks.empty()) Fail(f.at("checks"), "expected a non-empty array");
      for (std::size_t i = 0; i < checks.size(); ++i) {
        Fields c(checks[i], Index(f.at("checks"), i));
        CertifyCheck ck;
        ck.property = PropertyFromName(c.str("property"), c.at("property"));
        if (ck.property == Property::kPenaltyExactness) Fail(c.at("property"), "use a penalty instance");
        if (ck.property == Property::kExcSemicontinuity && (!in.phi || in.x0.size() == 0)) {
          Fail(c.at("property"), "exc_semicontinuity needs top-level 'phi' and 'x0'");
        }
        if (c.opt("alpha")) ck.alphas = c.reals("alpha");
        c.done();
        in.checks.push_back(std::move(ck));
      }
      in.certify.trials = static_cast<int>(f.integer("trials", in.certify.trials));
      in.certify.samples_per_trial = static_cast<int>(f.integer("samples_per_trial", in.certify.samples_per_trial));
      std::tie(in.certify.x_lo, in.certify.x_hi) = f.range("x_box", {in.certify.x_lo, in.certify.x_hi});
      std::tie(in.certify.r_lo, in.certify.r_hi) = f.range("r_range", {in.certify.r_lo, in.certify.r_hi});
      in.set_spread = f.real("set_spread", in.set_spread);
      if (in.certify.trials < 1) Fail(f.at("trials"), "must be >= 1");
      break;
    }
    case InstanceKind::kInclusion:
      in.inclusion = InclusionFromJson(f.req("inclusion"), f.at("inclusion"));
      in.x0 = f.vec("x0");
      break;
    case InstanceKind::kPenalty: {
      in.inclusion = InclusionFromJson(f.req("inclusion"), f.at("inclusion"));
      in.objective = ObjectiveFromJson(f.req("objective"), f.at("objective"));
      in.x0 = f.vec("x0");
      in.l = f.opt_real("l");
      in.l_factor = f.real("l_factor", in.l_factor);
      if (f.opt("pattern")) in.pattern = PatternFromJson(f.req("pattern"), f.at("pattern"));
      if (f.opt("verify")) in.verify = VerifyFromJson(f.req("verify"), f.at("verify"), true);
      if (const Json* c = f.opt("converse")) {
        Fields cf(*c, f.at("converse"));
        ConverseOptions co;
        co.eps = cf.real("eps", co.eps);
        if (const Json* s = cf.opt("starts")) {
          if (!s->is_array()) Fail(cf.at("starts"), "expected an array of points");
          for (std::size_t i = 0; i < s->size(); ++i) co.starts.push_back(VecFromJson((*s)[i], Index(cf.at("starts"), i)));
        }
        co.n_starts = static_cast<int>(cf.integer("n_starts", co.n_starts));
        co.strict_tol = cf.real("strict_tol", co.strict_tol);
        co.feas_tol = cf.real("feas_tol", co.feas_tol);
        std::tie(co.box_lo, co.box_hi) = cf.range("box", {co.box_lo, co.box_hi});
        co.grid_n = static_cast<int>(cf.integer("grid_n", co.grid_n));
        cf.done();
        in.converse = co;
      }
      const int d = in.inclusion->psi.x_space().dim();
      if (in.x0.size() != d) Fail(f.at("x0"), "dimension differs from X");
      if (in.verify && in.verify->x_bar.size() != d) Fail(f.at("verify") + ".x_bar", "dimension differs from X");
      break;
    }
    case InstanceKind::kSfix: {
      in.map = MapFromJson(f.req("map"), f.at("map"));
      in.x0 = f.vec("x0");
      if (f.opt("r_grid")) in.sfix.r_grid = f.reals("r_grid");
      in.sfix.alpha_used = f.opt_real("alpha_used");
      in.sfix.max_iter = static_cast<int>(f.integer("max_iter", in.sfix.max_iter));
      in.sfix.verify_samples = static_cast<int>(f.integer("verify_samples", in.sfix.verify_samples));
      if (in.x0.size() != in.map->x_space().dim()) Fail(f.at("x0"), "dimension differs from X");
      break;
    }
    case InstanceKind::kFamily: {
      in.family = FamilyFromJson(f.req("family"), f.at("family"));
      in.objective = ObjectiveFromJson(f.req("objective"), f.at("objective"));
      in.x_bar = f.vec("x_bar");
      if (f.opt("radii")) in.radii = f.reals("radii");
      if (const Json* s = f.opt("semiregularity")) {
        Fields sf(*s, f.at("semiregularity"));
        in.semireg.samples = static_cast<int>(sf.integer("samples", in.semireg.samples));
        std::tie(in.semireg.s_lo, in.semireg.s_hi) = sf.range("s_range", {in.semireg.s_lo, in.semireg.s_hi});
        in.semireg.x_window = sf.real("x_window", in.semireg.x_window);
        in.semireg.p_window = sf.real("p_window", in.semireg.p_window);
        sf.done();
      }
      if (f.opt("exactness")) in.exactness = VerifyFromJson(f.req("exactness"), f.at("exactness"), false);
      if (in.x_bar.size() != in.family->psi.base.x_space().dim()) Fail(f.at("x_bar"), "dimension differs from X");
      break;
    }
  }
  f.done();
  return in;
}

InstanceFile LoadInstance(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::kParse, path + ": cannot open file");
  Json j;
  try {
    j = Json::parse(is);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, path + ": malformed JSON: " + e.what());
  }
  return InstanceFromJson(j);
}

}  // namespace setcover
