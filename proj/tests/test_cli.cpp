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

#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "setcover/cli.hpp"

using namespace setcover;

namespace {

const std::string kInstances = SETCOVER_INSTANCES_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome RunCli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Inst(const std::string& name) { return kInstances + "/" + name; }

}  // namespace

TEST_CASE("solve t1 succeeds with a small final residual") {
  const Outcome o = RunCli({"solve", "--instance", Inst("t1.json"), "--seed", "0"});
  REQUIRE(o.code == cli::kExitOk);
  const Json j = Json::parse(o.out);
  CHECK(j["schema"] == kSchemaTag);
  CHECK(j["result"]["trace"]["status"] == "converged");
  CHECK(j["result"]["trace"]["r_final"].get<double>() <= 1e-6);
  CHECK(j.contains("metadata"));
}

TEST_CASE("certify on the sphere-scale counterexample exits with the falsified code") {
  const Outcome o = RunCli({"certify", "--instance", Inst("sphere_scale.json"), "--compare"});
  CHECK(o.code == cli::kExitFalsified);
  const Json j = Json::parse(o.out);
  CHECK(j["status"] == "falsified");
  CHECK_FALSE(j.contains("metadata"));
}

TEST_CASE("input errors exit with code 3") {
  CHECK(RunCli({"bogus"}).code == cli::kExitInputError);
  CHECK(RunCli({}).code == cli::kExitInputError);
  CHECK(RunCli({"solve"}).code == cli::kExitInputError);
  CHECK(RunCli({"solve", "--instance", Inst("does_not_exist.json")}).code == cli::kExitInputError);
  CHECK(RunCli({"solve", "--instance", Inst("sphere_scale.json")}).code == cli::kExitInputError);
  CHECK(RunCli({"solve", "--instance", Inst("t1.json"), "--format", "xml"}).code == cli::kExitInputError);

  const std::string bad = "cli_test_bad_instance.json";
  std::ofstream(bad) << R"({"schema": "setcover-kit/1", "kind": "inclusion", "x0": [0], "inclusion": {"psi": 1}})";
  const Outcome o = RunCli({"solve", "--instance", bad});
  CHECK(o.code == cli::kExitInputError);
  CHECK(o.err.find("$.inclusion.psi") != std::string::npos);
  std::ofstream(bad) << "{ not json";
  CHECK(RunCli({"solve", "--instance", bad}).code == cli::kExitInputError);
  std::remove(bad.c_str());
}

TEST_CASE("comparison mode is byte-identical across runs") {
  for (const auto& [cmd, inst] : std::vector<std::pair<std::string, std::string>>{
           {"solve", "t1.json"}, {"penalize", "penalty_t1.json"}, {"sfix", "sfix.json"}, {"certify", "process.json"}}) {
    const auto a = RunCli({cmd, "--instance", Inst(inst), "--compare", "--seed", "4"});
    const auto b = RunCli({cmd, "--instance", Inst(inst), "--compare", "--seed", "4", "--threads", "3"});
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("text format and report files") {
  const std::string path = "cli_test_report.txt";
  const Outcome o = RunCli({"penalize", "--instance", Inst("penalty_t1.json"), "--format", "text", "--out", path});
  CHECK(o.code == cli::kExitOk);
  CHECK(o.out.empty());
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  const std::string text = ss.str();
  CHECK(text.rfind("setcover-kit/1  command=penalize  status=ok  exit=0", 0) == 0);
  CHECK(text.find("result.threshold = 2.040816327") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("penalize below the threshold and family diagnostics") {
  CHECK(RunCli({"penalize", "--instance", Inst("penalty_t1_below.json"), "--compare"}).code == cli::kExitFalsified);
  const Outcome f = RunCli({"penalize", "--instance", Inst("family_t1.json"), "--compare"});
  REQUIRE(f.code == cli::kExitOk);
  const Json j = Json::parse(f.out);
  CHECK(j["result"]["calmness"]["zeta"].get<double>() == doctest::Approx(2.0).epsilon(0.025));
  CHECK(j["result"]["semiregularity"]["theta"].get<double>() == doctest::Approx(2.0).epsilon(0.025));
}

TEST_CASE("demo runs the built-in examples end to end") {
  const Outcome o = RunCli({"demo", "--compare"});
  REQUIRE(o.code == cli::kExitOk);
  const Json j = Json::parse(o.out);
  REQUIRE(j["result"]["sections"].size() == 4);
  for (const auto& s : j["result"]["sections"]) CHECK(s["expectation_met"] == true);
}
