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

#include "noise_lab/spider_graph.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "noise_lab/errors.hpp"
#include "oracles.hpp"

namespace noise_lab::spider {
namespace {

std::vector<SpiderVertex> near_vertices(std::int64_t radius) {
  std::vector<SpiderVertex> out;
  for (int a = 0; a < 3; ++a) {
    for (std::int64_t k = 0; k <= radius; ++k) out.push_back({static_cast<Arm>(a), k});
  }
  return out;
}

TEST(SpiderGraphTest, MovesAreOppositeUnitVectors) {
  const SpiderGraph g = build_graph();
  EXPECT_EQ(g.origin(), SpiderVertex::triangle(Arm::kA));
  EXPECT_EQ(std::abs(g.position(g.origin())), 0.0);
  for (const auto& v : near_vertices(12)) {
    const auto [up, down] = g.moves(v);
    const auto z = g.position(v);
    EXPECT_NEAR(std::abs(g.position(up) - z), 1.0, 1e-12) << to_string(v);
    EXPECT_NEAR(std::abs(g.position(down) - z), 1.0, 1e-12) << to_string(v);
    EXPECT_NEAR(std::abs((g.position(up) + g.position(down)) / 2.0 - z), 0.0, 1e-12);
    EXPECT_NEAR(squared_modulus(v), std::norm(z), 1e-9);
  }
}

TEST(SpiderGraphTest, TriangleCyclesAndRaysPointOutward) {
  EXPECT_EQ(step(SpiderVertex::triangle(Arm::kA), -1), SpiderVertex::triangle(Arm::kB));
  EXPECT_EQ(step(SpiderVertex::triangle(Arm::kB), -1), SpiderVertex::triangle(Arm::kC));
  EXPECT_EQ(step(SpiderVertex::triangle(Arm::kC), -1), SpiderVertex::triangle(Arm::kA));
  EXPECT_NEAR(std::abs(position(SpiderVertex::ray(Arm::kA, 3)) - std::complex<double>(-3, 0)), 0, 1e-12);
  const auto w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  EXPECT_NEAR(std::abs(position(SpiderVertex::ray(Arm::kB, 2)) - (1.0 - 2.0 * w)), 0, 1e-12);
  const auto e = std::polar(1.0, std::numbers::pi / 3.0);
  EXPECT_NEAR(std::abs(position(SpiderVertex::ray(Arm::kC, 4)) - 5.0 * e), 0, 1e-12);
  // Ray directions are pairwise at 120 degrees.
  std::array<double, 3> args{};
  for (int a = 0; a < 3; ++a) {
    const Arm x = static_cast<Arm>(a);
    args[a] = std::arg(position({x, 1}) - position({x, 0}));
  }
  for (int a = 0; a < 3; ++a) {
    double d = std::remainder(args[a] - args[(a + 1) % 3], 2.0 * std::numbers::pi);
    EXPECT_NEAR(std::abs(d), 2.0 * std::numbers::pi / 3.0, 1e-12);
  }
}

TEST(SpiderGraphTest, DistanceMatchesBreadthFirstSearch) {
  const auto vs = near_vertices(8);
  for (const auto& u : vs) {
    for (const auto& v : vs) {
      EXPECT_EQ(graph_distance(u, v), testing::bfs_distance(u, v, 20))
          << to_string(u) << " " << to_string(v);
    }
  }
  EXPECT_EQ(graph_distance(SpiderVertex::triangle(Arm::kA), SpiderVertex::triangle(Arm::kB)), 1);
  EXPECT_EQ(graph_distance(SpiderVertex::ray(Arm::kA, 1), SpiderVertex::ray(Arm::kC, 1)), 3);
  EXPECT_EQ(graph_distance(SpiderVertex::ray(Arm::kA, 2), SpiderVertex::ray(Arm::kA, 5)), 3);
}

TEST(SpiderGraphTest, DeltaNeighborhoods) {
  EXPECT_TRUE(in_delta(SpiderVertex::triangle(Arm::kC)));
  EXPECT_FALSE(in_delta(SpiderVertex::ray(Arm::kA, 1)));
  EXPECT_TRUE(in_delta_plus(SpiderVertex::ray(Arm::kB, 2), 2));
  EXPECT_FALSE(in_delta_plus(SpiderVertex::ray(Arm::kB, 3), 2));
  EXPECT_THROW(in_delta_plus(SpiderVertex::triangle(Arm::kA), -1), InvalidInput);
  EXPECT_THROW(SpiderVertex::ray(Arm::kA, 0), InvalidInput);
}

TEST(SpiderGraphTest, VertexNamesRoundTrip) {
  for (const auto& v : near_vertices(11)) EXPECT_EQ(parse_vertex(to_string(v)), v);
  EXPECT_THROW(parse_vertex("D2"), InvalidInput);
  EXPECT_THROW(parse_vertex("A0"), InvalidInput);
}

TEST(DriftTest, GenericRayPair) {
  const Drift d = drift_classify(SpiderVertex::ray(Arm::kA, 3), SpiderVertex::ray(Arm::kB, 2));
  EXPECT_EQ(d.distance, 6);
  EXPECT_EQ(d.alpha, 6.0);
  EXPECT_EQ(d.beta, 0.0);
  EXPECT_EQ(d.tag, DriftCase::kGeneric);
}

TEST(DriftTest, BeginningOfRayGainsHalf) {
  for (std::int64_t k = 1; k <= 6; ++k) {
    const auto v1 = SpiderVertex::ray(Arm::kA, k);
    const auto v2 = SpiderVertex::triangle(Arm::kB);
    const Drift d = drift_classify(v1, v2);
    EXPECT_TRUE(d.l_flag);
    EXPECT_EQ(d.distance, k + 1);
    EXPECT_EQ(d.alpha, static_cast<double>(k + 1) + 0.5);
    EXPECT_EQ(d.beta, 0.0);
    EXPECT_EQ(d.tag, DriftCase::kGainHalf);
    // Four outcomes: D - 1, D, D + 1, D + 2.
    std::multiset<std::int64_t> outcomes;
    for (int s : {1, -1}) {
      for (int t : {1, -1}) outcomes.insert(graph_distance(step(v1, s), step(v2, t)));
    }
    EXPECT_EQ(outcomes, (std::multiset<std::int64_t>{k, k + 1, k + 2, k + 3}));
    // The mirror configuration gains too but is not flagged.
    const Drift m = drift_classify(v2, v1);
    EXPECT_FALSE(m.l_flag);
    EXPECT_EQ(m.tag, DriftCase::kGainHalf);
  }
}

TEST(DriftTest, CoincidentAndTrianglePairs) {
  const auto a = SpiderVertex::triangle(Arm::kA);
  const Drift same = drift_classify(a, a);
  EXPECT_EQ(same.tag, DriftCase::kCoincide);
  EXPECT_GE(same.min_mean(), 0.0);
  for (const auto& u : near_vertices(0)) {
    for (const auto& v : near_vertices(0)) {
      const Drift d = drift_classify(u, v);
      EXPECT_GT(d.alpha, static_cast<double>(d.distance));
    }
  }
}

TEST(DriftTest, SameRayPairsAtDistanceTwoOrMoreArePreserving) {
  for (std::int64_t k = 1; k <= 10; ++k) {
    for (std::int64_t j = k + 2; j <= 12; ++j) {
      const Drift d = drift_classify(SpiderVertex::ray(Arm::kC, k), SpiderVertex::ray(Arm::kC, j));
      EXPECT_EQ(d.alpha, static_cast<double>(j - k));
      EXPECT_EQ(d.beta, 0.0);
    }
  }
  // Adjacent walkers on one ray can swap places; the mean then depends on c.
  const Drift adj = drift_classify(SpiderVertex::ray(Arm::kC, 4), SpiderVertex::ray(Arm::kC, 5));
  EXPECT_EQ(adj.alpha, 1.5);
  EXPECT_EQ(adj.beta, -0.5);
  EXPECT_GE(adj.min_mean(), 1.0);
}

TEST(DriftCensusTest, RadiusThirtyPasses) {
  const DriftCensus c = check_drift_monotonicity(30);
  EXPECT_TRUE(c.pass());
  EXPECT_EQ(c.violations, 0);
  EXPECT_EQ(c.gain_half_mismatches, 0);
  EXPECT_EQ(c.ray_pair_nonzero_drift, 0);
  EXPECT_EQ(c.delta_pairs_not_strict, 0);
  std::int64_t total = 0;
  for (const auto& [tag, count] : c.counts) total += count;
  EXPECT_EQ(total, c.pairs);
  EXPECT_THROW(check_drift_monotonicity(2), InvalidInput);
}

TEST(LipschitzTest, ScanAndCap) {
  const auto small = lipschitz_constant(2);
  EXPECT_GE(small.constant, 1.0);
  const auto rep = lipschitz_constant(50);
  EXPECT_LE(rep.constant, 3.0);
  EXPECT_NEAR(rep.asymptotic_cap, 2.0 / std::sqrt(3.0), 1e-15);
  // Attained already by (A, B1): distance 2 over embedded length sqrt(3).
  EXPECT_NEAR(rep.scan_max, 2.0 / std::sqrt(3.0), 1e-12);
  const double far = static_cast<double>(graph_distance({Arm::kA, 1000}, {Arm::kC, 1000})) /
                     std::abs(position({Arm::kA, 1000}) - position({Arm::kC, 1000}));
  EXPECT_NEAR(far, 2001.0 / (1000.0 * std::sqrt(3.0)), 1e-3);
  EXPECT_LE(lipschitz_constant(40).constant, lipschitz_constant(10).constant + 1e-15);
  EXPECT_THROW(lipschitz_constant(1), InvalidInput);
}

}  // namespace
}  // namespace noise_lab::spider
