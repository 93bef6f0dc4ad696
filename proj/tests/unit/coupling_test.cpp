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

#include "noise_lab/coupling.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "noise_lab/errors.hpp"
#include "oracles.hpp"

namespace noise_lab {
namespace {

std::vector<double> random_kernel(int n, double rho, Rng& rng) {
  std::vector<double> k(kernel_size(n));
  for (double& c : k) c = rho * (2.0 * rng.uniform() - 1.0);
  return k;
}

TEST(CouplingTest, KernelLayout) {
  EXPECT_EQ(kernel_offset(1), 0U);
  EXPECT_EQ(kernel_offset(2), 1U);
  EXPECT_EQ(kernel_offset(3), 5U);
  EXPECT_EQ(kernel_size(3), 21U);
  EXPECT_THROW(kernel_size(13), ResourceError);
  EXPECT_THROW(Coupling::custom(2, std::vector<double>(4, 0.0)), InvalidInput);
  EXPECT_THROW(Coupling::custom(1, std::vector<double>{1.5}), InvalidInput);
}

TEST(CouplingTest, TablesMatchStepProducts) {
  Rng rng(31);
  for (int n = 1; n <= 5; ++n) {
    const Coupling mu = Coupling::custom(n, random_kernel(n, 0.9, rng));
    const JointTable t = to_table(mu);
    const auto naive = testing::naive_joint(mu);
    for (std::size_t i = 0; i < naive.size(); ++i) EXPECT_NEAR(t.probs()[i], naive[i], 1e-15);
    EXPECT_TRUE(validate_immersion(t).ok);
  }
}

TEST(CouplingTest, ProductAndCorrelatedTables) {
  const JointTable prod = to_table(Coupling::product(3));
  for (double p : prod.probs()) EXPECT_NEAR(p, 1.0 / 64.0, 1e-15);
  const double rho = 0.3;
  const JointTable corr = to_table(Coupling::correlated(2, rho));
  // (tau' = (+,+), tau'' = (+,+)) and (tau' = (+,-), tau'' = (-,+)).
  EXPECT_NEAR(corr.probs()[(0U << 2) | 0U], (1 + rho) / 4 * (1 + rho) / 4, 1e-15);
  EXPECT_NEAR(corr.probs()[(2U << 2) | 1U], (1 - rho) / 4 * (1 - rho) / 4, 1e-15);
}

TEST(ImmersionTest, PointMassFailsAtFirstStep) {
  std::vector<double> probs(16, 0.0);
  probs[0] = 1.0;
  const auto v = validate_immersion(JointTable(2, probs));
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.step, 1);
}

TEST(ImmersionTest, RejectsBadTables) {
  EXPECT_THROW(JointTable(2, std::vector<double>(15, 1.0 / 15)), InvalidInput);
  std::vector<double> neg(4, 0.5);
  neg[0] = -0.5;
  EXPECT_THROW(JointTable(1, neg), InvalidInput);
  EXPECT_THROW(JointTable(1, std::vector<double>(4, 0.3)), InvalidInput);
}

TEST(CouplingTest, FromTableRoundTrip) {
  Rng rng(32);
  for (int n = 1; n <= 5; ++n) {
    const Coupling mu = Coupling::custom(n, random_kernel(n, 1.0, rng));
    const Coupling back = from_table(to_table(mu));
    const std::uint64_t size = std::uint64_t{1} << n;
    for (int m = 1; m <= n; ++m) {
      const std::uint64_t prefixes = std::uint64_t{1} << (m - 1);
      for (std::uint64_t p1 = 0; p1 < prefixes; ++p1) {
        for (std::uint64_t p2 = 0; p2 < prefixes; ++p2) {
          EXPECT_NEAR(back.correlation(m, p1, p2), mu.correlation(m, p1, p2), 1e-9);
        }
      }
    }
    (void)size;
  }
}

TEST(RhoMaxTest, BuiltinKinds) {
  EXPECT_EQ(rho_max(Coupling::product(4)), 0.0);
  EXPECT_NEAR(rho_max(Coupling::correlated(4, -0.6)), 0.6, 1e-15);
  Rng rng(33);
  const auto a = random_automorphism(5, rng);
  EXPECT_NEAR(rho_max(Coupling::tree_twisted(0.7, a)), 0.7, 1e-15);
  std::vector<double> k(kernel_size(2), 0.1);
  k[3] = -0.8;
  EXPECT_NEAR(rho_max(Coupling::custom(2, k)), 0.8, 1e-15);
}

TEST(RhoMaxTest, IgnoresUnreachableHistories) {
  // Step 1 is fully correlated, so histories with tau'_1 != tau''_1 never occur.
  std::vector<double> k(kernel_size(2), 0.2);
  k[0] = 1.0;
  k[1 + history_index(0, 1, 1)] = 0.95;
  k[1 + history_index(1, 0, 1)] = -0.95;
  EXPECT_NEAR(rho_max(Coupling::custom(2, k)), 1.0, 1e-15);
  k[0] = 0.5;
  k[1 + history_index(0, 0, 1)] = 0.0;
  k[1 + history_index(1, 1, 1)] = 0.0;
  EXPECT_NEAR(rho_max(Coupling::custom(2, k)), 0.95, 1e-15);
}

TEST(MakeCouplingTest, TreeTwistWithTrivialLabelsIsCorrelated) {
  CouplingSpec spec;
  spec.n = 4;
  spec.kind = CouplingKind::kTreeTwisted;
  spec.rho = 0.45;
  spec.labels = TreeAutomorphism::identity(4);
  const auto twisted = to_table(make_coupling(spec));
  const auto corr = to_table(Coupling::correlated(4, 0.45));
  for (std::size_t i = 0; i < corr.probs().size(); ++i) {
    EXPECT_NEAR(twisted.probs()[i], corr.probs()[i], 1e-15);
  }
}

TEST(MakeCouplingTest, TreeTwistIsPushforwardOfCorrelated) {
  Rng rng(34);
  for (int n = 1; n <= 5; ++n) {
    const auto a = random_automorphism(n, rng);
    const auto twisted = to_table(Coupling::tree_twisted(0.6, a));
    const auto corr = to_table(Coupling::correlated(n, 0.6));
    const std::uint64_t size = std::uint64_t{1} << n;
    for (std::uint64_t x = 0; x < size; ++x) {
      for (std::uint64_t y = 0; y < size; ++y) {
        EXPECT_NEAR(twisted.probs()[(x << n) | y],
                    corr.probs()[(a.apply_index(x) << n) | a.apply_index(y)], 1e-15);
      }
    }
  }
}

TEST(MakeCouplingTest, FullCorrelationCopiesThePoint) {
  Rng rng(35);
  const Coupling mu = Coupling::correlated(20, 1.0);
  for (int i = 0; i < 50; ++i) {
    const auto [a, b] = sample_pair(mu, rng);
    EXPECT_EQ(a, b);
  }
}

TEST(BilinearFormTest, CorrelatedMatchesNoiseCorrelation) {
  Rng rng(36);
  for (int n = 1; n <= 6; ++n) {
    const auto f = testing::random_function(n, rng);
    const auto g = testing::random_function(n, rng);
    const Complex direct = bilinear_form(f, Coupling::correlated(n, 0.35), g);
    // <f|mu|g> = E conj(f(tau')) g(tau'') = (rho^N g, f).
    const Complex spectral = noise_correlation(g, f, NoiseParam(0.35));
    EXPECT_NEAR(std::abs(direct - spectral), 0.0, 1e-12);
  }
}

TEST(BilinearFormTest, ProductFactorizes) {
  Rng rng(37);
  const auto f = testing::random_function(4, rng);
  const auto g = testing::random_function(4, rng);
  const Complex v = bilinear_form(f, Coupling::product(4), g);
  EXPECT_NEAR(std::abs(v - std::conj(mean(f)) * mean(g)), 0.0, 1e-12);
}

TEST(BilinearFormTest, TwistUndoesTwistedWalkFrequencies) {
  for (int n = 2; n <= 10; n += 4) {
    const auto g = builtin_family(Family::kTwistedWalk, n);
    const auto mu = Coupling::tree_twisted(0.8, TreeAutomorphism::cumulative_product(n));
    EXPECT_NEAR(bilinear_form(g, mu, g).real(), 0.8, 1e-12);
  }
}

TEST(BilinearFormTest, TableAndCouplingAgree) {
  Rng rng(38);
  const Coupling mu = Coupling::custom(4, random_kernel(4, 0.7, rng));
  const auto f = testing::random_function(4, rng);
  const auto g = testing::random_function(4, rng);
  EXPECT_NEAR(std::abs(bilinear_form(f, mu, g) - bilinear_form(f, to_table(mu), g)), 0.0, 1e-13);
}

TEST(CosinessGapTest, ClosedForms) {
  Rng rng(39);
  const auto f = testing::random_function(5, rng);
  EXPECT_NEAR(cosiness_gap(f, Coupling::correlated(5, 1.0)), 0.0, 1e-12);
  for (int n : {3, 8}) {
    EXPECT_NEAR(cosiness_gap(builtin_family(Family::kSimpleWalk, n), Coupling::correlated(n, 0.7)),
                0.3, 1e-12);
    double level_sum = 0.0;
    for (int m = 1; m <= n; ++m) level_sum += std::pow(0.7, m);
    EXPECT_NEAR(cosiness_gap(builtin_family(Family::kTwistedWalk, n), Coupling::correlated(n, 0.7)),
                1.0 - level_sum / n, 1e-12);
  }
}

TEST(CosinessGapTest, TwistTransportsGap) {
  Rng rng(40);
  for (int n = 1; n <= 8; ++n) {
    const auto f = testing::random_function(n, rng);
    const auto a = random_automorphism(n, rng);
    // (f o A) under the A-twist has the gap of f under plain correlation.
    EXPECT_NEAR(cosiness_gap(pushforward(a, f), Coupling::tree_twisted(0.5, a)),
                cosiness_gap(f, Coupling::correlated(n, 0.5)), 1e-12);
  }
}

TEST(SamplePairTest, CoordinateCorrelations) {
  Rng rng(41);
  const int draws = 100000;
  for (double rho : {0.0, 0.8}) {
    const Coupling mu = Coupling::correlated(3, rho);
    double acc = 0.0;
    for (int i = 0; i < draws; ++i) {
      const auto [a, b] = sample_pair(mu, rng);
      acc += a.sign(1) * b.sign(1);
    }
    EXPECT_NEAR(acc / draws, rho, 4.0 * std::sqrt((1.0 - rho * rho + 1e-3) / draws));
  }
}

TEST(SamplePairTest, SampledBilinearFormMatchesExact) {
  Rng rng(42);
  const auto f = testing::random_function(8, rng);
  const Coupling mu = Coupling::tree_twisted(0.6, random_automorphism(8, rng));
  const Complex exact = bilinear_form(f, mu, f);
  const auto est = bilinear_form_sampled(f, mu, f, 200000, 7);
  EXPECT_NEAR(est.re.mean, exact.real(), 4.0 * est.re.std_error);
  EXPECT_NEAR(est.im.mean, exact.imag(), 4.0 * est.im.std_error + 1e-12);
  const auto again = bilinear_form_sampled(f, mu, f, 200000, 7, 4);
  EXPECT_EQ(est.re.mean, again.re.mean);
}

TEST(SamplePairTest, ProceduralTwistSamplesDeepTrees) {
  Rng rng(43);
  const Coupling mu = Coupling::tree_twisted(2000, 0.9, std::make_shared<HashedLabels>(5));
  std::vector<int> a(2000), b(2000);
  sample_signs(mu, rng, a, b);
  int agree = 0;
  for (int i = 0; i < 2000; ++i) agree += a[i] == b[i] ? 1 : 0;
  EXPECT_GT(agree, 0);
  EXPECT_NEAR(rho_max(mu), 0.9, 1e-15);
  EXPECT_THROW(to_table(mu), UnsupportedRepresentation);
}

}  // namespace
}  // namespace noise_lab
