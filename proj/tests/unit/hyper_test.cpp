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

#include "noise_lab/hyper.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "noise_lab/errors.hpp"
#include "oracles.hpp"

namespace noise_lab {
namespace {

Coupling random_coupling(int n, double rho, Rng& rng) {
  std::vector<double> k(kernel_size(n));
  for (double& c : k) c = rho * (2.0 * rng.uniform() - 1.0);
  return Coupling::custom(n, k);
}

TEST(FourPointTest, OriginIsFour) {
  for (double r : {0.5, 0.6, 0.75, 0.9, 1.0}) {
    const double bound = (1.0 - r) / r;
    for (double rho : {-bound, 0.0, bound}) {
      EXPECT_NEAR(four_point_value({r, rho, 0.0, 0.0}), 4.0, 1e-12);
    }
  }
  EXPECT_NEAR(four_point_value({1.0, 0.0, 0.3, 0.8}), 4.0, 1e-12);
}

TEST(FourPointTest, InteriorStaysBelowFour) {
  // Direct evaluation of sum_{s,t} (1 + rho s t) ((1 + s x)(1 + t y))^r.
  const double r = 0.75, rho = 1.0 / 3.0, x = 0.5, y = 0.5;
  double direct = 0.0;
  for (int s : {1, -1}) {
    for (int t : {1, -1}) {
      direct += (1.0 + rho * s * t) * std::pow((1.0 + s * x) * (1.0 + t * y), r);
    }
  }
  const double v = four_point_value({r, rho, x, y});
  EXPECT_NEAR(v, direct, 1e-12);
  EXPECT_LE(v, 4.0);
}

TEST(FourPointTest, RejectsInadmissibleInput) {
  EXPECT_THROW(four_point_value({0.4, 0.0, 0.0, 0.0}), InvalidInput);
  EXPECT_THROW(four_point_value({0.75, 0.5, 0.0, 0.0}), InvalidInput);
  EXPECT_THROW(four_point_value({0.75, 0.1, 1.5, 0.0}), InvalidInput);
}

TEST(VerifyFourPointTest, SlicesPass) {
  const auto half = verify_four_point_slice(0.5, 1.0 / 64.0, 1e-9);
  EXPECT_TRUE(half.pass);
  EXPECT_LE(half.max_value, 4.0 + 1e-9);
  const auto one = verify_four_point_slice(1.0, 1.0 / 64.0, 1e-9);
  EXPECT_TRUE(one.pass);
  EXPECT_NEAR(one.max_value, 4.0, 1e-12);
}

TEST(VerifyFourPointTest, CoarseScanFindsOrigin) {
  const auto rep = verify_four_point(1.0 / 64.0, 1e-9, 2);
  EXPECT_TRUE(rep.pass);
  EXPECT_NEAR(rep.max_value, 4.0, 1e-9);
  EXPECT_EQ(rep.argmax.x, 0.0);
  EXPECT_EQ(rep.argmax.y, 0.0);
  EXPECT_LE(rep.origin_deviation, 1e-12);
  const auto serial = verify_four_point(1.0 / 64.0, 1e-9, 1);
  EXPECT_EQ(serial.max_value, rep.max_value);
  EXPECT_EQ(serial.argmax.r, rep.argmax.r);
  EXPECT_FALSE(verify_four_point(1.0 / 64.0, -1.0, 1).pass);
  EXPECT_THROW(verify_four_point(0.1, 1e-9, 1), InvalidInput);
}

TEST(PNormTest, ClosedForms) {
  EXPECT_NEAR(p_norm(BooleanFunction::constant(3, {0.0, -2.0}), 1.7), 2.0, 1e-12);
  Rng rng(51);
  const auto f = testing::random_function(5, rng);
  EXPECT_NEAR(p_norm(f, 2.0), std::sqrt(norm_sq(f)), 1e-12);
  for (double p : {1.0, 1.5, 3.0}) EXPECT_NEAR(p_norm(builtin_family(Family::kDictator, 4), p), 1.0, 1e-12);
  EXPECT_THROW(p_norm(f, 0.5), InvalidInput);
}

TEST(HypercontractivityTest, CharacterUnderCorrelation) {
  const auto chi = BooleanFunction::character(3, 1);
  EXPECT_NEAR(hypercontractivity_ratio(chi, chi, Coupling::correlated(3, 0.4), 0.4), 0.4, 1e-12);
}

TEST(HypercontractivityTest, RandomCouplingsStayBelowOne) {
  Rng rng(52);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Coupling mu = random_coupling(5, 0.8, rng);
    const auto f = testing::random_function(5, rng);
    const auto g = testing::random_function(5, rng);
    worst = std::max(worst, hypercontractivity_ratio(f, g, mu, 0.8));
  }
  EXPECT_LE(worst, 1.0 + 1e-9);
}

TEST(IndicatorTest, TrivialAndEqualityCases) {
  std::vector<bool> s(16), t(16);
  for (std::uint64_t i = 0; i < 16; ++i) {
    s[i] = (i % 3) == 0;
    t[i] = (i & 1U) == 0;
  }
  Rng rng(53);
  const auto any = indicator_inequality_check(s, s, random_coupling(4, 1.0, rng), 1.0);
  EXPECT_TRUE(any.ok);
  const auto indep = indicator_inequality_check(s, t, Coupling::product(4), 0.0);
  EXPECT_TRUE(indep.ok);
  EXPECT_NEAR(indep.lhs, indep.rhs, 1e-15);
}

TEST(IndicatorTest, FirstCoordinateUnderCorrelation) {
  std::vector<bool> s(8);
  for (std::uint64_t i = 0; i < 8; ++i) s[i] = coordinate_sign(i, 0) > 0;
  const auto c = indicator_inequality_check(s, s, Coupling::correlated(3, 0.5), 0.5);
  EXPECT_NEAR(c.joint, 1.5 / 4.0, 1e-15);
  EXPECT_NEAR(c.lhs, std::pow(1.5 / 4.0, 1.5), 1e-15);
  EXPECT_NEAR(c.rhs, 0.25, 1e-15);
  EXPECT_TRUE(c.ok);
}

TEST(SupermartingaleTest, ConstantsGiveEqualities) {
  const auto one = BooleanFunction::constant(3, 1.0);
  Rng rng(54);
  const auto trace = supermartingale_trace(one, one, random_coupling(3, 0.6, rng), 0.6);
  EXPECT_TRUE(trace.ok);
  for (const auto& st : trace.steps) EXPECT_NEAR(st.worst_slack, 0.0, 1e-12);
}

TEST(SupermartingaleTest, RandomInputsPassEveryHistory) {
  Rng rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = testing::random_function(4, rng);
    const auto g = testing::random_function(4, rng);
    const auto trace = supermartingale_trace(f, g, random_coupling(4, 0.6, rng), 0.6);
    EXPECT_TRUE(trace.ok);
    EXPECT_LE(trace.final_lhs, trace.final_rhs * (1.0 + 1e-12));
    EXPECT_EQ(trace.steps.size(), 4U);
  }
}

TEST(SupermartingaleTest, ProductCouplingReproducesFinalBound) {
  Rng rng(56);
  const auto f = testing::random_function(3, rng);
  const auto g = testing::random_function(3, rng);
  const auto trace = supermartingale_trace(f, g, Coupling::product(3), 0.0);
  EXPECT_TRUE(trace.ok);
  EXPECT_NEAR(trace.final_rhs, p_norm(f, 1.0) * p_norm(g, 1.0), 1e-12);
  EXPECT_LE(trace.final_lhs, trace.final_rhs + 1e-12);
}

TEST(AdversarialTest, FindsNoViolation) {
  AdversarialOptions opt;
  opt.n = 3;
  opt.rho = 0.6;
  opt.restarts = 10;
  const auto res = adversarial_search(opt);
  EXPECT_LE(res.best_ratio, 1.0 + 1e-9);
  EXPECT_GT(res.best_ratio, 0.0);
  EXPECT_EQ(res.best_kernel.size(), kernel_size(3));
}

}  // namespace
}  // namespace noise_lab
