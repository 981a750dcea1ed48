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


// Batch front-end: loads instance files, dispatches to the modules and
// renders JSON or text reports.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "setcover/serialize.hpp"

namespace setcover::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFalsified = 2;
inline constexpr int kExitInputError = 3;

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides the instance seed
  std::optional<double> tol;          // overrides the instance tolerance
  std::optional<int> threads;
  // Omit the "metadata" member (timestamps, paths) so that reports of
  // identical runs compare byte for byte.
  bool compare = false;
  int iterate_cap = kIterateCap;
};

struct Report {
  Json json;
  int exit_code = kExitOk;
};

// Executes `command` (certify, solve, penalize, sfix) on a loaded instance.
Report RunInstance(const std::string& command, const InstanceFile& in, const RunOptions& opts);
// The built-in end-to-end examples.
Report RunDemo(const RunOptions& opts);

std::string RenderJson(const Json& report);
std::string RenderText(const Json& report);

// Full command-line entry point; returns the process exit code.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace setcover::cli
