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

#include <memory>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "setcover/common.hpp"

namespace setcover {

class SetRep;

// Closed ball {y : ||y - center|| <= radius} in the ambient norm.
struct Ball {
  Vec center;
  double radius = 0.0;
};

// Norm sphere {y : ||y - center|| = radius}; radius 0 is the single point.
struct Sphere {
  Vec center;
  double radius = 0.0;
};

struct Box {
  Vec lo;
  Vec hi;
};

// Convex hull of the rows of `vertices` (one point per row; column-major
// storage makes this the structure-of-arrays layout the kernels expect).
struct VPolytope {
  Mat vertices;
};

// Finite set of points, one per row.
struct PointCloud {
  Mat points;
};

// One group of a sublevel region: max_j <forms.row(j), y> <= bound.
struct FormGroup {
  Mat forms;
  double bound = 0.0;
};

// {y : max_j <a_ij, y> <= b_i for every group i}.
struct SublevelRegion {
  std::vector<FormGroup> groups;
};

// apex + R^n_+.
struct Orthant {
  Vec apex;
};

// Implicit r-enlargement {y : dist(y, base) <= radius}; used whenever no
// closed-form representation of the enlargement exists.
struct Enlarged {
  std::shared_ptr<const SetRep> base;
  double radius = 0.0;
};

class SetRep {
 public:
  using Variant = std::variant<Ball, Box, VPolytope, PointCloud, SublevelRegion,
                               Orthant, Sphere, Enlarged>;

  template <typename T>
    requires std::is_constructible_v<Variant, T&&> &&
             (!std::is_same_v<std::remove_cvref_t<T>, SetRep>)
  SetRep(T&& value) : v_(std::forward<T>(value)) {  // NOLINT(google-explicit-constructor)
    validate();
  }

  const Variant& variant() const { return v_; }
  template <typename T>
  const T* get_if() const { return std::get_if<T>(&v_); }
  template <typename T>
  bool is() const { return std::holds_alternative<T>(v_); }

  int dim() const;
  std::string_view kind() const;

 private:
  void validate() const;
  Variant v_;
};

struct BoundednessFlag {
  bool bounded = false;
  std::optional<double> radius_hint;  // radius of a ball about the origin
};

// SublevelRegion and Orthant report bounded=false unless a recession-cone
// check proves otherwise.
BoundednessFlag Boundedness(const SetRep& s);

// Halfspace rows (a_k, b_k) of a sublevel region, one per linear form.
struct Halfspaces {
  Mat a;  // one row per halfspace
  Vec b;
};
Halfspaces ToHalfspaces(const SublevelRegion& s);

// Whether the set is convex by construction (everything but spheres and
// multi-point clouds; enlargements inherit convexity from their base).
bool IsConvex(const SetRep& s);

SetRep Translate(const SetRep& s, const Vec& shift);

// Vertex description of a bounded sublevel region (desk scale: brute-force
// basis enumeration).  Empty optional when unbounded or too large.
std::optional<VPolytope> SublevelVertices(const SublevelRegion& s,
                                          double tol = kGeomTol);

}  // namespace setcover
