// Copyright 2026 The Authors.
//
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

#include "latdr/cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "latdr/instance_io.h"
#include "latdr/json_util.h"
#include "latdr/parallel.h"

namespace latdr {
namespace {

const std::string kDataDir = LATDR_DATA_DIR;
const std::string kExample = kDataDir + "/example_coverage.json";

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "latdr");
  std::ostringstream out, err;
  CliRun r;
  r.code = RunCli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

TEST(ExitCodeFor, Mapping) {
  EXPECT_EQ(ExitCodeFor(ErrorCode::kParse), kExitIo);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kIo), kExitIo);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kInvalidArgument), kExitValidation);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kCycleDetected), kExitValidation);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kCapExceeded), kExitCap);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kNoConvergence), kExitNoConvergence);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kNoAdmissibleBelow), kExitNoConvergence);
}

TEST(Validate, ExampleIsValid) {
  const CliRun r = Cli({"validate", kExample});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("order: ok"), std::string::npos);
  EXPECT_NE(r.out.find("dr: ok"), std::string::npos);
  EXPECT_NE(r.out.find("monotone: ok"), std::string::npos);
  EXPECT_NE(r.out.find("valid\n"), std::string::npos);
}

TEST(Validate, OrderViolationNamesTheWitness) {
  const CliRun r = Cli({"validate", kDataDir + "/order_violation.json"});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("order-consistency failed for constraint 'c0': "
                       "p2 <= p3 but c(p2) = 3 > c(p3) = 2"),
            std::string::npos)
      << r.err;
}

TEST(Validate, MalformedAndMissing) {
  EXPECT_EQ(Cli({"validate", kDataDir + "/malformed.json"}).code, kExitIo);
  EXPECT_EQ(Cli({"validate", kDataDir + "/nope.json"}).code, kExitIo);
}

TEST(Validate, LowCapAssumesDr) {
  const CliRun r = Cli({"validate", kExample, "--cap", "3"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("dr: assumed"), std::string::npos);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(Validate, NonDrTableFails) {
  const std::string path = TempPath("latdr_non_dr.json");
  WriteFile(path, R"({"schema_version": 1, "name": "sq",
      "poset": {"elements": ["a", "b"], "covers": []},
      "objective": {"family": "table", "values": [
        {"ideal": [], "value": 0}, {"ideal": ["a"], "value": 1},
        {"ideal": ["b"], "value": 1}, {"ideal": ["a", "b"], "value": 4}]},
      "constraints": [{"label": "c", "weights": [1, 1], "budget": 1}]})");
  const CliRun r = Cli({"validate", path});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("DR failed"), std::string::npos) << r.err;
  std::filesystem::remove(path);
}

TEST(Solve, ReportHasAllSections) {
  const CliRun r = Cli({"solve", kExample, "--trials", "20", "--seed", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  for (const char* key : {"instance", "config", "dr_status", "solution",
                          "value", "feasible", "usage", "continuous",
                          "rounding"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["dr_status"], "validated");
  EXPECT_EQ(j["feasible"], true);
  EXPECT_EQ(j["value"].get<double>(), 11.5);
  EXPECT_EQ(j["solution"], Json::array({"p1", "p2", "p4"}));
  EXPECT_EQ(j["rounding"]["enumeration_truncated"], true);
  EXPECT_EQ(j["rounding"]["trials"], 20);
}

TEST(Solve, ContinuousOnlyHasTrace) {
  const CliRun r = Cli({"solve", kExample, "--continuous-only",
                     "--exact-gradient", "--epsilon-greedy", "0.25"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_FALSE(j.contains("rounding"));
  EXPECT_EQ(j["continuous"]["iterations"], 4);
  EXPECT_EQ(j["continuous"]["trace"].size(), 5u);
}

TEST(Solve, ByteIdenticalAcrossRunsAndThreads) {
  const std::vector<std::string> args = {"solve", kExample, "--trials", "40",
                                         "--seed", "17"};
  const int saved = MaxThreads();
  SetMaxThreads(1);
  const CliRun a = Cli(args);
  const CliRun b = Cli(args);
  SetMaxThreads(4);
  const CliRun c = Cli(args);
  SetMaxThreads(saved);
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST(Solve, WritesReportFile) {
  const std::string path = TempPath("latdr_report.json");
  const CliRun r = Cli({"solve", kExample, "--trials", "5", "--out", path});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("solution {p1,p2,p4} value 11.5"), std::string::npos)
      << r.out;
  const Json j = Json::parse(ReadFile(path));
  EXPECT_EQ(j["instance"], "example-coverage");
  std::filesystem::remove(path);
}

TEST(Solve, BadArguments) {
  EXPECT_EQ(Cli({"solve", kExample, "--epsilon-round", "0.7"}).code,
            kExitValidation);
  EXPECT_EQ(Cli({"solve", kExample, "--trials", "abc"}).code, kExitIo);
  EXPECT_EQ(Cli({"solve"}).code, kExitIo);
  EXPECT_EQ(Cli({"frobnicate"}).code, kExitIo);
  EXPECT_EQ(Cli({}).code, kExitIo);
}

TEST(Compare, RatioAgainstOptimum) {
  const CliRun r = Cli({"compare", kExample, "--trials", "10"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["opt_value"].get<double>(), 11.5);
  EXPECT_EQ(j["opt_solution"], Json::array({"p1", "p2", "p4"}));
  EXPECT_EQ(j["ratio"].get<double>(), 1.0);
  EXPECT_EQ(j["trials"].size(), 10u);
  EXPECT_LE(j["min_ratio"].get<double>(), j["mean_ratio"].get<double>());
  EXPECT_EQ(j["feasibility_rate"].get<double>(), 1.0);
}

std::vector<double> Row(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

void ExpectRow(const std::string& line, const std::vector<double>& expect) {
  const std::vector<double> got = Row(line);
  ASSERT_EQ(got.size(), expect.size()) << line;
  for (size_t i = 0; i < got.size(); ++i) {
    EXPECT_NEAR(got[i], expect[i], 1e-12) << line;
  }
}

TEST(Ulm, ExampleCsv) {
  const CliRun r = Cli({"ulm", kExample, "--samples", "3", "--at", "0.5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,p1,p2,p3,p4");
  std::getline(in, line);
  EXPECT_EQ(line, "0,0,0,0,0");
  std::getline(in, line);
  ExpectRow(line, {1.0 / 3, 1.0 / 3, 1, 0, 0});
  std::getline(in, line);
  ExpectRow(line, {0.5, 0.5, 1, 0.25, 0.25});
  std::getline(in, line);
  ExpectRow(line, {2.0 / 3, 2.0 / 3, 1, 0.5, 0.5});
  std::getline(in, line);
  EXPECT_EQ(line, "1,1,1,1,1");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# breakpoints: 0.33333333333333", 0), 0u) << line;
  std::getline(in, line);
  EXPECT_EQ(line, "# speeds: p1=1 p2=3 p3=1.5 p4=1.5");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# straightness: ok faces 1", 0), 0u) << line;
}

TEST(Ulm, ConstantMotionAndErrors) {
  const CliRun same = Cli({"ulm", kExample, "--from", "top", "--to", "top"});
  ASSERT_EQ(same.code, kExitOk) << same.err;
  EXPECT_NE(same.out.find("t,p1,p2,p3,p4\n0,1,1,1,1\n"), std::string::npos);
  EXPECT_EQ(Cli({"ulm", kExample, "--from", "top", "--to", "bottom"}).code,
            kExitValidation);
  EXPECT_EQ(Cli({"ulm", kExample, "--to", "0,0,1,0"}).code, kExitValidation);
  EXPECT_EQ(Cli({"ulm", kExample, "--to", "0,x,0,0"}).code, kExitIo);
}

TEST(Gen, ProducesValidInstances) {
  for (const char* family : {"chain", "antichain", "forest", "layered",
                             "random", "sensor-coverage"}) {
    const std::string path = TempPath(std::string("latdr_gen_") + family);
    const CliRun g = Cli({"gen", "--family", family, "--n", "6", "--seed", "5",
                       "--constraints", "2", "--out", path});
    ASSERT_EQ(g.code, kExitOk) << family << g.err;
    const CliRun v = Cli({"validate", path});
    EXPECT_EQ(v.code, kExitOk) << family << v.err;
    const InstanceFile f = LoadInstance(path);
    EXPECT_EQ(f.elements.size(), 6u);
    EXPECT_EQ(f.constraints.size(), 2u);
    std::filesystem::remove(path);
  }
  EXPECT_EQ(Cli({"gen", "--family", "blob"}).code, kExitValidation);
  EXPECT_EQ(Cli({"gen", "--objective", "blob"}).code, kExitValidation);
}

TEST(Gen, DeterministicOutput) {
  const CliRun a = Cli({"gen", "--seed", "9", "--objective", "concave"});
  const CliRun b = Cli({"gen", "--seed", "9", "--objective", "concave"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("\"family\": \"concave_modular\""), std::string::npos);
}

}  // namespace
}  // namespace latdr
