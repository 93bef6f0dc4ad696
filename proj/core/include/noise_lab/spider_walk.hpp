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

#ifndef NOISE_LAB_SPIDER_WALK_HPP_
#define NOISE_LAB_SPIDER_WALK_HPP_

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "noise_lab/boolean_cube.hpp"
#include "noise_lab/coupling.hpp"
#include "noise_lab/rng.hpp"
#include "noise_lab/spider_graph.hpp"

namespace noise_lab::spider {

// Exact law of Z_m by forward dynamic programming over (arm, depth).
// Mass below kNegligibleMass at the outer frontier is dropped and counted in
// discarded_mass(); in practice that is below 1e-290 in total.
class ExactWalk {
 public:
  static constexpr long double kNegligibleMass = 1e-300L;
  // Upper bound on stored states, 3 (n + 1).
  static constexpr std::int64_t kMaxStates = 10'000'000;

  // Reserves room for `max_steps` steps; throws ResourceError past the budget.
  explicit ExactWalk(std::int64_t max_steps);

  void advance();
  std::int64_t steps() const { return steps_; }

  double probability(const SpiderVertex& v) const;
  double delta_probability() const;
  double second_moment() const;  // E |Z_m|^2
  std::complex<double> mean_position() const;
  double total_mass() const;
  double discarded_mass() const { return static_cast<double>(discarded_); }
  std::int64_t frontier() const { return len_; }

  std::vector<std::pair<SpiderVertex, double>> support() const;

 private:
  std::int64_t max_steps_;
  std::int64_t steps_ = 0;
  std::int64_t len_ = 1;  // depths 0 .. len_ - 1 are stored per arm
  std::array<std::vector<long double>, 3> mass_;
  std::array<std::vector<long double>, 3> scratch_;
  long double discarded_ = 0.0L;
};

// Law of Z_n as (vertex, probability) pairs in arm-then-depth order.
std::vector<std::pair<SpiderVertex, double>> exact_distribution(std::int64_t n);

// Per-step series of the exact law, indexed by m = 0 .. n.
struct WalkSeries {
  std::vector<double> origin;          // P(Z_m = A)
  std::vector<double> delta;           // P(Z_m in triangle)
  std::vector<double> vertex_b;        // P(Z_m = B)
  std::vector<double> ray_a1;          // P(Z_m = Ray(A, 1))
  std::vector<double> second_moment;   // E |Z_m|^2
  std::vector<std::complex<double>> mean;
  double discarded_mass = 0.0;
};

WalkSeries walk_series(std::int64_t n);

// Decoding: bit j drives step j + 1; +1 is the outward move.
std::vector<SpiderVertex> walk_from_signs(std::span<const int> signs);
SpiderVertex endpoint_from_signs(std::span<const int> signs);
std::vector<SpiderVertex> walk_from_bits(const CubePoint& x);

// f_n(x) = position(Z_n(x)) tabulated on the cube, n <= 25.
inline constexpr int kMaxEndpointLevels = 25;
BooleanFunction endpoint_function(int n);
// Same table as vertices rather than positions.
std::vector<SpiderVertex> endpoint_vertices(int n);

struct PairState {
  SpiderVertex first;
  SpiderVertex second;
  int s = 0;  // bits that produced this state; 0 at m = 0
  int t = 0;
  std::int64_t distance = 0;
  bool l_flag = false;
  DriftCase tag = DriftCase::kCoincide;
};

struct PairTrajectory {
  std::vector<PairState> states;  // m = 0 .. n
};

// Two walkers driven by bits drawn from mu, both started at the origin.
PairTrajectory coupled_walk(const Coupling& mu, Rng& rng);

// D_m - (1/2) sum_{k<m} L_k along a trajectory, m = 0 .. n.
std::vector<double> submartingale_ledger(const PairTrajectory& t);

// Steps a pair of walkers under a coupling without storing the path.
class PairWalker {
 public:
  explicit PairWalker(const Coupling& mu);

  const SpiderVertex& first() const { return v1_; }
  const SpiderVertex& second() const { return v2_; }
  std::int64_t step_count() const { return cursor_.step(); }
  bool done() const { return cursor_.step() >= n_; }

  std::pair<int, int> advance(Rng& rng);

 private:
  Coupling::Cursor cursor_;
  int n_;
  SpiderVertex v1_ = kOrigin;
  SpiderVertex v2_ = kOrigin;
};

}  // namespace noise_lab::spider

#endif  // NOISE_LAB_SPIDER_WALK_HPP_
