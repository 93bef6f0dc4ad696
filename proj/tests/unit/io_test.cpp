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

#include "noise_lab/io.hpp"

#include <sstream>

#include "gtest/gtest.h"
#include "noise_lab/errors.hpp"
#include "oracles.hpp"

namespace noise_lab::io {
namespace {

TEST(FormatTest, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.25), "0.25");
  EXPECT_EQ(format_double(1e-300), "1e-300");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(FunctionIoTest, JsonRoundTrip) {
  Rng rng(81);
  const auto f = testing::random_function(5, rng);
  const auto back = function_from_json(json::parse(to_json(f).dump()));
  ASSERT_EQ(back.n(), 5);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(back[i], f[i]);
  EXPECT_THROW(function_from_json(json{{"n", 2}}), InvalidInput);
  EXPECT_THROW(function_from_json(json{{"n", 1}, {"values", {{1.0}, {2.0}}}}), InvalidInput);
}

TEST(FunctionIoTest, CsvRoundTrip) {
  Rng rng(82);
  const auto f = testing::random_function(4, rng);
  std::stringstream buf;
  write_function_csv(buf, f);
  const auto back = read_function_csv(buf);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(back[i], f[i]);
  std::stringstream bad("index,re,im\n1,0,0\n");
  EXPECT_THROW(read_function_csv(bad), InvalidInput);
}

TEST(AutomorphismIoTest, RoundTrip) {
  Rng rng(83);
  const auto a = random_automorphism(4, rng);
  EXPECT_EQ(automorphism_from_json(to_json(a)), a);
  EXPECT_THROW(automorphism_from_json(json{{"n", 1}, {"labels", {2}}}), InvalidInput);
}

TEST(CouplingSpecIoTest, RoundTrip) {
  CouplingSpec spec;
  spec.n = 3;
  spec.kind = CouplingKind::kTreeTwisted;
  spec.rho = 0.25;
  spec.labels = TreeAutomorphism::cumulative_product(3);
  const auto back = coupling_spec_from_json(to_json(spec));
  EXPECT_EQ(back.kind, spec.kind);
  EXPECT_EQ(back.rho, spec.rho);
  EXPECT_EQ(*back.labels, *spec.labels);
  const json custom = json::parse(R"({"n": 1, "kind": "custom", "kernel": [0.5]})");
  EXPECT_EQ(coupling_spec_from_json(custom).kernel, std::vector<double>{0.5});
  EXPECT_THROW(coupling_spec_from_json(json::parse(R"({"n": 1, "kind": "weird"})")), InvalidInput);
}

TEST(HyperReportIoTest, FrozenKeys) {
  HyperReport r;
  r.max_value = 4.0;
  r.pass = true;
  const json j = to_json(r);
  for (const char* key : {"maxValue", "argmax", "gridStep", "tolerance", "verdict", "evaluations"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["schema"], kSchemaVersion);
}

TEST(ExperimentConfigIoTest, ScalarsAndLists) {
  const auto c = experiment_config_from_json(json::parse(
      R"({"n": [256, 1024], "rho": 0.9, "family": "tree_twisted", "samples": 100, "seed": 7,
          "automorphisms": 20})"));
  EXPECT_EQ(c.n, (std::vector<std::int64_t>{256, 1024}));
  EXPECT_EQ(c.rho, std::vector<double>{0.9});
  EXPECT_EQ(c.families, std::vector<spider::CouplingFamily>{spider::CouplingFamily::kTreeTwisted});
  EXPECT_EQ(c.automorphisms, 20);
  EXPECT_THROW(experiment_config_from_json(json::parse(R"({"n": [4], "rho": [2.0], "family": "product", "samples": 10, "seed": 1})")),
               InvalidInput);
  EXPECT_THROW(experiment_config_from_json(json::parse(R"({"rho": [0.5]})")), InvalidInput);
}

}  // namespace
}  // namespace noise_lab::io
