// Copyright 2026 The Noise Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

namespace noise_lab::cli {
namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("noise_lab_cli_" + name);
  std::ofstream(path) << body;
  return path.string();
}

TEST(CliTest, SpectrumOfTwistedWalk) {
  const Invocation r = run({"spectrum", "--family", "twisted-walk", "--n", "8", "--m", "4"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("# schema=noise_lab/1"), std::string::npos);
  std::istringstream in(r.out);
  std::string line;
  double s_low = -1.0;
  while (std::getline(in, line)) {
    if (line.rfind("S_low,4,", 0) == 0) s_low = std::stod(line.substr(8));
  }
  EXPECT_NEAR(s_low, 0.5, 1e-12);
}

TEST(CliTest, SpiderExactTwoSteps) {
  const Invocation r = run({"spider", "exact", "--n", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("\nA,0.25\n"), std::string::npos) << r.out;
}

TEST(CliTest, DriftCensusPasses) {
  const Invocation r = run({"spider", "drift-census", "--radius", "30"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("verdict=pass"), std::string::npos);
}

TEST(CliTest, HyperToleranceFailureExitsThree) {
  const Invocation r = run({"hyper-verify", "--tolerance", "-1", "--format", "json"});
  EXPECT_EQ(r.code, kExitVerification);
  EXPECT_NE(r.out.find("\"verdict\": \"fail\""), std::string::npos);
}

TEST(CliTest, ConfigErrorsExitTwo) {
  EXPECT_EQ(run({"spectrum", "--family", "nope", "--n", "3"}).code, kExitConfig);
  EXPECT_EQ(run({"spider", "exact", "--n", "9000000"}).code, kExitConfig);
  EXPECT_EQ(run({"bogus"}).code, kExitConfig);
  EXPECT_EQ(run({"--config", "/nonexistent/x.json", "spider", "cosiness"}).code, kExitConfig);
  const auto bad = temp_file("bad.json", "{\"n\": [4], ");
  EXPECT_EQ(run({"--config", bad, "spider", "cosiness"}).code, kExitConfig);
}

TEST(CliTest, CouplingCheck) {
  const auto good = temp_file("good.json", R"({"n": 3, "kind": "correlated", "rho": 0.4})");
  const Invocation ok = run({"--config", good, "coupling-check"});
  EXPECT_EQ(ok.code, kExitOk) << ok.err;
  EXPECT_NE(ok.out.find("rhoMax,0.4"), std::string::npos);
  const auto mass = temp_file("mass.json", R"({"n": 1, "table": [1, 0, 0, 0]})");
  EXPECT_EQ(run({"--config", mass, "coupling-check"}).code, kExitVerification);
}

TEST(CliTest, RepeatedRunsAreByteIdentical) {
  const auto cfg = temp_file("cos.json",
      R"({"n": [32, 64], "rho": [0.9], "family": ["correlated", "tree_twisted"],
          "samples": 500, "seed": 11, "automorphisms": 2})");
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"--config", cfg, "spider", "cosiness"},
           {"--config", cfg, "--format", "json", "spider", "cosiness"},
           {"--seed", "4", "spider", "walk", "--n", "50"},
           {"noise", "--family", "majority", "--n", "5", "--rho", "0.3"}}) {
    const Invocation a = run(args);
    const Invocation b = run(args);
    EXPECT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
  const Invocation s1 = run({"--seed", "4", "spider", "walk", "--n", "50"});
  const Invocation s2 = run({"--seed", "5", "spider", "walk", "--n", "50"});
  EXPECT_NE(s1.out, s2.out);
}

TEST(CliTest, WritesOutputFile) {
  const auto path = (std::filesystem::temp_directory_path() / "noise_lab_cli_out.csv").string();
  std::filesystem::remove(path);
  const Invocation r = run({"--out", path, "spider", "exact", "--n", "3"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  EXPECT_NE(first.find("command=spider exact"), std::string::npos);
}

}  // namespace
}  // namespace noise_lab::cli
