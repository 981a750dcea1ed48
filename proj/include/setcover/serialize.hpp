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


// JSON encoding of sets, maps, objectives, instance files and reports.
//
// Encoding rules shared by every reader and writer:
//   * non-finite reals are the strings "+inf", "-inf" and "nan";
//   * vectors are arrays, matrices are arrays of rows;
//   * readers reject unknown fields and report the offending path
//     (e.g. "$.inclusion.psi.a") in the Error message (code kParse).
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "setcover/certify.hpp"
#include "setcover/penalty.hpp"
#include "setcover/solver.hpp"

namespace setcover {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaTag = "setcover-kit/1";

// Default cap on serialized solver iterates; the first and last are kept.
inline constexpr int kIterateCap = 1000;

Json RealToJson(double v);
double RealFromJson(const Json& j, const std::string& path);
Json VecToJson(const Vec& v);
Vec VecFromJson(const Json& j, const std::string& path);
Json MatToJson(const Mat& m);
Mat MatFromJson(const Json& j, const std::string& path);

Json ToJson(const NormedSpace& s);
NormedSpace SpaceFromJson(const Json& j, const std::string& path = "$");
Json ToJson(const SetRep& s);
SetRep SetFromJson(const Json& j, const std::string& path = "$");
Json ToJson(const CatalogFn& g);
CatalogFn FnFromJson(const Json& j, const std::string& path = "$");
Json ToJson(const MapSpec& m);
MapSpec MapFromJson(const Json& j, const std::string& path = "$");
Json ToJson(const ObjectiveSpec& f);
ObjectiveSpec ObjectiveFromJson(const Json& j, const std::string& path = "$");
Json ToJson(const InclusionInstance& inst);
InclusionInstance InclusionFromJson(const Json& j, const std::string& path = "$");
Json ToJson(const ParamFamily& fam);
ParamFamily FamilyFromJson(const Json& j, const std::string& path = "$");

Property PropertyFromName(const std::string& name, const std::string& path);

// Reports.
Json ToJson(const Violation& v);
Json ToJson(const Certificate& c);
Json ToJson(const SolveTrace& t, int iterate_cap = kIterateCap);
Json ToJson(const StronglyFixedResult& r, int iterate_cap = kIterateCap);
Json ToJson(const PenaltyResult& r);
Json ToJson(const ConverseReport& r);
Json ToJson(const CalmnessRecord& r);
Json ToJson(const SemiregularityRecord& r);
Json ToJson(const ExactnessConsistency& r);
Json ToJson(const MapConstants& c);
Json ToJson(const InteriorReport& r);

// ---------------------------------------------------------------------------
// Instance files.

enum class InstanceKind { kCertify, kInclusion, kPenalty, kSfix, kFamily };
std::string_view InstanceKindName(InstanceKind k);

struct CertifyCheck {
  Property property = Property::kSetCovering;
  // Empty: kOpenIntervalFactor * AlphaOf(map).alpha.
  std::vector<double> alphas;
};

struct VerifySpec {
  Vec x_bar;
  double radius = 1.0;
  int grid_n = 101;
};

struct InstanceFile {
  InstanceKind kind = InstanceKind::kCertify;
  std::string description;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  int threads = 1;

  // certify
  std::optional<MapSpec> map;
  std::optional<MapSpec> phi;  // second map of exc_semicontinuity checks
  std::vector<CertifyCheck> checks;
  CertifyOptions certify;
  double set_spread = 5.0;

  // inclusion, penalty, sfix, exc_semicontinuity
  std::optional<InclusionInstance> inclusion;
  Vec x0;

  // penalty
  std::optional<ObjectiveSpec> objective;
  std::optional<double> l;
  double l_factor = 1.05;  // l = l_factor * threshold when `l` is absent
  std::optional<VerifySpec> verify;
  std::optional<ConverseOptions> converse;
  PatternOptions pattern;

  // sfix
  StronglyFixedOptions sfix;

  // family
  std::optional<ParamFamily> family;
  Vec x_bar;
  std::vector<double> radii = {0.5, 0.25, 0.1};
  SemiregularityOptions semireg;
  std::optional<VerifySpec> exactness;
};

InstanceFile InstanceFromJson(const Json& j);
InstanceFile LoadInstance(const std::string& path);

}  // namespace setcover
