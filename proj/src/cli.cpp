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

#include "setcover/cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

namespace setcover::cli {
namespace {

constexpr const char* kToolVersion = "0.1.0";

Json Envelope(const std::string& command, const std::string& kind, const std::string& description,
              std::uint64_t seed) {
  return Json{{"schema", kSchemaTag},
              {"command", command},
              {"instance_kind", kind},
              {"description", description},
              {"seed", seed}};
}

void Finish(Report& rep, bool failed) {
  rep.exit_code = failed ? kExitFalsified : kExitOk;
  rep.json["status"] = failed ? "falsified" : "ok";
  rep.json["exit_code"] = rep.exit_code;
}

bool Falsified(const Certificate& c) { return c.verdict() == Verdict::kFalsified; }

// --- certify ---------------------------------------------------------------

Report RunCertify(const InstanceFile& in, const RunOptions& o, std::uint64_t seed) {
  const MapSpec& m = *in.map;
  CertifyOptions co = in.certify;
  co.seed = seed;
  co.threads = o.threads.value_or(in.threads);
  if (o.tol) co.tol = *o.tol;
  else if (in.tol) co.tol = *in.tol;
  Report rep{Envelope("certify", "certify", in.description, seed)};
  Json result{{"map", ToJson(m)}};
  std::optional<MapConstants> mc;
  try {
    mc = AlphaOf(m);
    result["constants"] = ToJson(*mc);
  } catch (const Error& e) {
    result["constants"] = nullptr;
    result["constants_note"] = std::string(ErrorCodeName(e.code())) + ": " + e.what();
  }
  Json certs = Json::array();
  bool failed = false;
  for (const auto& ck : in.checks) {
    std::vector<double> alphas = ck.alphas;
    if (alphas.empty() && ck.property != Property::kExcSemicontinuity) {
      if (!mc) throw Error(ErrorCode::kInvalidArgument, "check without 'alpha' needs a map with an alpha rule");
      alphas = {kOpenIntervalFactor * mc->alpha};
    }
    if (ck.property == Property::kExcSemicontinuity) alphas = {0.0};
    for (double a : alphas) {
      Certificate c;
      InverseOptions io;
      io.base = co;
      io.set_spread = in.set_spread;
      switch (ck.property) {
        case Property::kCovering: c = CheckCovering(m, a, co); break;
        case Property::kSetCovering: c = CheckSetCovering(m, a, co); break;
        case Property::kInverseErrorBound: c = CheckInverseErrorBound(m, a, io); break;
        case Property::kInverseHausdorff: c = CheckInverseHausdorff(m, a, io); break;
        case Property::kExcSemicontinuity: c = CheckExcSemicontinuity(*in.phi, m, in.x0, co); break;
        case Property::kPenaltyExactness: throw Error(ErrorCode::kInvalidArgument, "use penalize");
      }
      failed = failed || Falsified(c);
      certs.push_back(ToJson(c));
    }
  }
  result["certificates"] = certs;
  rep.json["result"] = result;
  Finish(rep, failed);
  return rep;
}

// --- solve -----------------------------------------------------------------

Report RunSolve(const InstanceFile& in, const RunOptions& o, std::uint64_t seed) {
  InclusionInstance inst = *in.inclusion;
  inst.seed = seed;
  if (o.tol) inst.tol = *o.tol;
  else if (in.tol) inst.tol = *in.tol;
  Report rep{Envelope("solve", "inclusion", in.description, seed)};
  const SolveTrace tr = SolveInclusion(inst, in.x0);
  rep.json["result"] = Json{{"instance", ToJson(inst)}, {"x0", VecToJson(in.x0)}, {"trace", ToJson(tr, o.iterate_cap)}};
  Finish(rep, tr.status != SolveStatus::kConverged || !tr.bound.holds);
  return rep;
}

// --- penalize --------------------------------------------------------------

Report RunPenalty(const InstanceFile& in, const RunOptions& o, std::uint64_t seed) {
  InclusionInstance inst = *in.inclusion;
  inst.seed = seed;
  if (o.tol) inst.tol = *o.tol;
  else if (in.tol) inst.tol = *in.tol;
  PenaltyProblem prob{*in.objective, inst, 0.0};
  Report rep{Envelope("penalize", "penalty", in.description, seed)};
  Json result{{"objective", ToJson(*in.objective)}, {"instance", ToJson(inst)}};
  std::optional<double> threshold;
  try {
    threshold = ProblemThreshold(prob);
  } catch (const Error& e) {
    if (!in.l) throw;
    result["threshold_note"] = std::string(ErrorCodeName(e.code())) + ": " + e.what();
  }
  result["threshold"] = threshold ? RealToJson(*threshold) : Json(nullptr);
  prob.l = in.l ? *in.l : in.l_factor * *threshold;
  result["l"] = RealToJson(prob.l);
  const PenaltyResult pr = MinimizePenalty(prob, in.x0, seed, in.pattern);
  result["minimize"] = ToJson(pr);
  const VerifySpec vs = in.verify ? *in.verify : VerifySpec{pr.x, 1.0, 101};
  const Certificate vc = VerifyExactness(prob, vs.x_bar, vs.radius, vs.grid_n);
  result["verify"] = ToJson(vc);
  bool failed = Falsified(vc);
  if (in.converse) {
    ConverseOptions co = *in.converse;
    co.seed = seed;
    co.threads = o.threads.value_or(in.threads);
    co.pattern = in.pattern;
    if (o.tol) co.feas_tol = *o.tol;
    const ConverseReport cr = ConverseCheck(prob, co);
    result["converse"] = ToJson(cr);
    failed = failed || Falsified(cr.certificate);
  }
  rep.json["result"] = result;
  Finish(rep, failed);
  return rep;
}

Report RunFamily(const InstanceFile& in, const RunOptions& o, std::uint64_t seed) {
  ParamFamily fam = *in.family;
  if (o.tol) fam.member_tol = *o.tol;
  else if (in.tol) fam.member_tol = *in.tol;
  Report rep{Envelope("penalize", "family", in.description, seed)};
  Json result{{"family", ToJson(fam)}, {"objective", ToJson(*in.objective)}, {"x_bar", VecToJson(in.x_bar)}};
  result["calmness"] = ToJson(CalmnessDiagnostic(fam, *in.objective, in.x_bar, in.radii, seed));
  SemiregularityOptions so = in.semireg;
  so.seed = seed;
  result["semiregularity"] = ToJson(SemiregularityEstimate(fam, in.x_bar, so));
  bool failed = false;
  if (in.exactness) {
    const ExactnessConsistency ec =
        CheckExactnessConsistency(fam, *in.objective, in.x_bar, in.radii, in.exactness->radius, in.exactness->grid_n, seed);
    result["exactness"] = ToJson(ec);
    failed = ec.preconditions && !ec.l;
  }
  rep.json["result"] = result;
  Finish(rep, failed);
  return rep;
}

// --- sfix ------------------------------------------------------------------

Report RunSfix(const InstanceFile& in, const RunOptions& o, std::uint64_t seed) {
  StronglyFixedOptions so = in.sfix;
  so.seed = seed;
  if (o.tol) so.tol = *o.tol;
  else if (in.tol) so.tol = *in.tol;
  Report rep{Envelope("sfix", "sfix", in.description, seed)};
  const StronglyFixedResult r = StronglyFixed(*in.map, in.x0, so);
  rep.json["result"] = Json{{"map", ToJson(*in.map)}, {"x0", VecToJson(in.x0)}, {"strongly_fixed", ToJson(r, o.iterate_cap)}};
  Finish(rep, !r.verified);
  return rep;
}

// --- text rendering --------------------------------------------------------

std::string Scalar(const Json& v) {
  if (v.is_null()) return "-";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  if (v.is_number()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
    return buf;
  }
  if (v.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + Scalar(v[i]);
    return s + "]";
  }
  return v.dump();
}

bool IsFlat(const Json& v) {
  if (!v.is_array()) return v.is_primitive();
  for (const auto& e : v) {
    if (!e.is_primitive()) return false;
  }
  return v.size() <= 6;
}

constexpr std::size_t kMaxTableRows = 40;

void EmitTable(const Json& rows, const std::string& title, std::ostringstream& os) {
  std::vector<std::string> cols;
  for (const auto& item : rows.front().items()) {
    if (IsFlat(item.value())) cols.push_back(item.key());
  }
  std::vector<std::vector<std::string>> cells;
  const std::size_t n = rows.size();
  for (std::size_t r = 0; r < n; ++r) {
    if (n > kMaxTableRows && r == kMaxTableRows - 1) r = n - 1;  // keep the last row
    std::vector<std::string> line;
    for (const auto& c : cols) line.push_back(rows[r].contains(c) ? Scalar(rows[r][c]) : "");
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> w(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    w[c] = cols[c].size();
    for (const auto& line : cells) w[c] = std::max(w[c], line[c].size());
  }
  os << title << " (" << n << " rows" << (n > kMaxTableRows ? ", middle rows elided" : "") << ")\n";
  auto row = [&](const std::vector<std::string>& line) {
    os << "  ";
    for (std::size_t c = 0; c < line.size(); ++c) {
      os << line[c] << std::string(w[c] - line[c].size() + (c + 1 < line.size() ? 2 : 0), ' ');
    }
    os << "\n";
  };
  row(cols);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (n > kMaxTableRows && i == kMaxTableRows - 1) os << "  ...\n";
    row(cells[i]);
  }
}

void Emit(const Json& j, const std::string& prefix, std::ostringstream& os) {
  for (const auto& item : j.items()) {
    const std::string key = prefix.empty() ? item.key() : prefix + "." + item.key();
    const Json& v = item.value();
    if (IsFlat(v)) {
      os << key << " = " << Scalar(v) << "\n";
    } else if (v.is_object()) {
      Emit(v, key, os);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      EmitTable(v, key, os);
      for (std::size_t i = 0; i < v.size() && i < kMaxTableRows; ++i) {
        // Nested objects inside table rows (e.g. certificates) get their own
        // sections.
        for (const auto& inner : v[i].items()) {
          if (inner.value().is_array() && !inner.value().empty() && inner.value().front().is_object()) {
            EmitTable(inner.value(), key + "[" + std::to_string(i) + "]." + inner.key(), os);
          }
        }
      }
    } else if (v.is_array() && v.empty()) {
      os << key << " = []\n";
    } else {
      os << key << " = " << Scalar(v) << "\n";
    }
  }
}

std::string Timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

Report RunInstance(const std::string& command, const InstanceFile& in, const RunOptions& opts) {
  const std::uint64_t seed = opts.seed.value_or(in.seed);
  auto expect = [&](bool ok) {
    if (!ok) {
      throw Error(ErrorCode::kInvalidArgument, "command '" + command + "' cannot run a '" +
                                                   std::string(InstanceKindName(in.kind)) + "' instance");
    }
  };
  if (command == "certify") {
    expect(in.kind == InstanceKind::kCertify);
    return RunCertify(in, opts, seed);
  }
  if (command == "solve") {
    expect(in.kind == InstanceKind::kInclusion);
    return RunSolve(in, opts, seed);
  }
  if (command == "penalize") {
    expect(in.kind == InstanceKind::kPenalty || in.kind == InstanceKind::kFamily);
    return in.kind == InstanceKind::kPenalty ? RunPenalty(in, opts, seed) : RunFamily(in, opts, seed);
  }
  if (command == "sfix") {
    expect(in.kind == InstanceKind::kSfix);
    return RunSfix(in, opts, seed);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown command '" + command + "'");
}

Report RunDemo(const RunOptions& opts) {
  const std::uint64_t seed = opts.seed.value_or(0);
  Report rep{Envelope("demo", "builtin", "worked examples: T1, SphereScale, sublinear system, polyhedral process", seed)};
  CertifyOptions co;
  co.trials = 100;
  co.seed = seed;
  co.threads = opts.threads.value_or(1);
  if (opts.tol) co.tol = *opts.tol;
  Json sections = Json::array();
  bool all_expected = true;
  auto section = [&](const std::string& name, const std::string& expectation, bool met, Json body) {
    all_expected = all_expected && met;
    body["name"] = name;
    body["expectation"] = expectation;
    body["expectation_met"] = met;
    sections.push_back(std::move(body));
  };

  {
    const auto x = NormedSpace::Euclidean(1), y = NormedSpace::Euclidean(2);
    MapSpec psi(x, y, Dilation{Vec::Zero(2), 1.0, 0.0, Vec::Zero(1)});
    MapSpec phi(x, y, BallValued{AffineFn{Mat::Zero(2, 1), Vec::Zero(2)}, 1.0, 0.5, Vec::Zero(1)});
    InclusionInstance inst{psi, phi, {}, {}, {}};
    inst.seed = seed;
    const SolveTrace tr = SolveInclusion(inst, Vec::Zero(1));
    section("t1_inclusion", "converges to |x*| = 2 within the bound 2/(0.99-0.5)",
            tr.status == SolveStatus::kConverged && tr.bound.holds, Json{{"trace", ToJson(tr, opts.iterate_cap)}});
  }
  {
    MapSpec ss(NormedSpace::Euclidean(1), NormedSpace::Euclidean(2), SphereScale{});
    const Certificate cov = CheckCovering(ss, 1.0, co);
    const Certificate set = CheckSetCovering(ss, 0.5, co);
    section("sphere_scale", "covering with constant 1 holds, set-covering is falsified",
            !Falsified(cov) && Falsified(set), Json{{"covering", ToJson(cov)}, {"set_covering", ToJson(set)}});
  }
  {
    SublinearSystem s;
    s.groups.push_back({(Mat(2, 1) << 2.0, -2.0).finished(), 0.0});
    s.groups.push_back({(Mat(2, 1) << 1.0, -1.0).finished(), 0.0});
    MapSpec m(NormedSpace::Max(2), NormedSpace::Euclidean(1), s);
    const MapConstants mc = AlphaOf(m);
    const Vec u = *CoverWitness(m, (Vec(2) << 1.0, -1.0).finished(), 0.5);
    const Certificate c = CheckSetCovering(m, kOpenIntervalFactor * mc.alpha, co);
    section("sublinear_system", "alpha = 1/2, witness u = (1.5, -1.5), set-covering holds",
            mc.alpha == 0.5 && u[0] == 1.5 && u[1] == -1.5 && !Falsified(c),
            Json{{"constants", ToJson(mc)}, {"witness", VecToJson(u)}, {"set_covering", ToJson(c)}});
  }
  {
    PolyhedralProcess p{(Mat(2, 1) << 1.0, 1.0).finished(), (Mat(2, 2) << -1.0, 0.0, 0.0, -1.0).finished()};
    MapSpec m(NormedSpace::Euclidean(1), NormedSpace::Euclidean(2), p);
    const InteriorReport ir = InteriorRadius(m);
    Json body{{"interior", ToJson(ir)}};
    bool met = ir.t_star > 0 && ir.alpha > 0;
    if (met) {
      const Certificate c = CheckSetCovering(m, kOpenIntervalFactor * ir.alpha, co);
      met = !Falsified(c);
      body["set_covering"] = ToJson(c);
    }
    section("polyhedral_process", "int Theta(0) nonempty, set-covering with the computed alpha", met, body);
  }
  rep.json["result"] = Json{{"sections", sections}};
  Finish(rep, !all_expected);
  return rep;
}

std::string RenderJson(const Json& report) { return report.dump(2) + "\n"; }

std::string RenderText(const Json& report) {
  std::ostringstream os;
  os << report.value("schema", "") << "  command=" << report.value("command", "")
     << "  status=" << report.value("status", "") << "  exit=" << report.value("exit_code", 0) << "\n";
  Json body = report;
  for (const char* k : {"schema", "command", "status", "exit_code"}) body.erase(k);
  Emit(body, "", os);
  return os.str();
}

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"setcover: certify set-covering properties, solve set inclusions, penalize, find strongly fixed points"};
  app.name("setcover");
  app.require_subcommand(1, 1);
  std::string instance, out_path, format = "json";
  std::uint64_t seed = 0;
  double tol = 0.0;
  int threads = 1;
  bool compare = false;
  int iterate_cap = kIterateCap;
  const std::vector<std::pair<std::string, std::string>> subs = {
      {"certify", "check covering-type properties of a map"},
      {"solve", "solve Phi(x) in Psi(x) by the contraction iteration"},
      {"penalize", "minimize the exact penalty functional / run family diagnostics"},
      {"sfix", "find a strongly fixed point"},
      {"demo", "run the built-in worked examples"}};
  for (const auto& [name, desc] : subs) {
    CLI::App* s = app.add_subcommand(name, desc);
    if (name != "demo") s->add_option("--instance", instance, "instance file (JSON)")->required();
    s->add_option("--seed", seed, "random seed (overrides the instance seed)");
    s->add_option("--tol", tol, "tolerance (overrides the instance tolerance)")->check(CLI::PositiveNumber);
    s->add_option("--out", out_path, "write the report here instead of stdout");
    s->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
    s->add_option("--threads", threads, "worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
    s->add_option("--iterate-cap", iterate_cap, "maximum serialized solver iterates")->check(CLI::Range(2, 1 << 30));
    s->add_flag("--compare", compare, "comparison mode: omit the metadata member");
  }
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    const auto used = app.get_subcommands();
    out << (used.empty() ? app.help() : used.front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "setcover: " << e.what() << "\n";
    return kExitInputError;
  }
  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  RunOptions ro;
  if (sub->count("--seed") > 0) ro.seed = seed;
  if (sub->count("--tol") > 0) ro.tol = tol;
  if (sub->count("--threads") > 0) ro.threads = threads;
  ro.compare = compare;
  ro.iterate_cap = iterate_cap;

  Report rep;
  try {
    if (command == "demo") {
      rep = RunDemo(ro);
    } else {
      rep = RunInstance(command, LoadInstance(instance), ro);
    }
  } catch (const Error& e) {
    const bool failure = e.code() == ErrorCode::kNotSetCovering || e.code() == ErrorCode::kConstantExhausted ||
                         e.code() == ErrorCode::kBudgetExhausted;
    err << "setcover: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    if (!failure) return kExitInputError;
    rep.json = Envelope(command, "", "", ro.seed.value_or(0));
    rep.json["error"] = Json{{"code", ErrorCodeName(e.code())}, {"message", e.what()}};
    Finish(rep, true);
  }
  if (!ro.compare) {
    rep.json["metadata"] = Json{{"tool", "setcover"}, {"version", kToolVersion}, {"timestamp", Timestamp()},
                                {"instance_path", instance}};
  }
  const std::string text = format == "text" ? RenderText(rep.json) : RenderJson(rep.json);
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream os(out_path, std::ios::binary);
    if (!os || !(os << text)) {
      err << "setcover: cannot write " << out_path << "\n";
      return kExitInputError;
    }
  }
  return rep.exit_code;
}

}  // namespace setcover::cli
