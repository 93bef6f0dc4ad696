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

#ifndef NOISE_LAB_SPIDER_GRAPH_HPP_
#define NOISE_LAB_SPIDER_GRAPH_HPP_

// The spider graph: a one-way triangle A -> B -> C -> A with a ray attached
// at every corner. Every vertex has two equiprobable moves of unit length in
// opposite directions, so the embedded position is a complex martingale.
//
//   positions   A = 0, B = 1, C = e^{i pi/3}
//   ray at X    Ray(X, k) = X + k (X - next(X)), k >= 1
//   moves       Triangle(X): {Ray(X, 1), Triangle(next(X))}
//               Ray(X, k):   {Ray(X, k + 1), Ray(X, k - 1)}, Ray(X, 0) = Triangle(X)
//
// Each ray together with its backward extension is the straight line through
// next(X), X, Ray(X, 1), ...; next(X) is the "beginning" of that line.
// Distances are undirected shortest paths over triangle and ray edges.

#include <array>
#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace noise_lab::spider {

enum class Arm : std::uint8_t { kA = 0, kB = 1, kC = 2 };

constexpr Arm next(Arm x) { return static_cast<Arm>((static_cast<int>(x) + 1) % 3); }
constexpr Arm prev(Arm x) { return static_cast<Arm>((static_cast<int>(x) + 2) % 3); }
char arm_name(Arm x);

// Triangle(X) is depth 0 on arm X; Ray(X, k) is depth k >= 1.
struct SpiderVertex {
  Arm arm = Arm::kA;
  std::int64_t depth = 0;

  static SpiderVertex triangle(Arm x) { return {x, 0}; }
  static SpiderVertex ray(Arm x, std::int64_t k);

  bool on_triangle() const { return depth == 0; }

  friend auto operator<=>(const SpiderVertex&, const SpiderVertex&) = default;
};

// "A", "B", "C" for triangle corners, "A3" for Ray(A, 3).
std::string to_string(const SpiderVertex& v);
SpiderVertex parse_vertex(const std::string& text);

inline constexpr SpiderVertex kOrigin{Arm::kA, 0};

std::complex<double> position(const SpiderVertex& v);
// |position(v)|^2 in closed form (exact for integer depths).
double squared_modulus(const SpiderVertex& v);

// sign +1 takes the outward (ray) move, -1 the other one.
SpiderVertex step(const SpiderVertex& v, int sign);
std::array<SpiderVertex, 2> moves(const SpiderVertex& v);

std::int64_t graph_distance(const SpiderVertex& u, const SpiderVertex& v);

bool in_delta(const SpiderVertex& v);
bool in_delta_plus(const SpiderVertex& v, std::int64_t radius);

// Value type bundling the graph operations under one handle.
class SpiderGraph {
 public:
  SpiderVertex origin() const { return kOrigin; }
  std::complex<double> position(const SpiderVertex& v) const { return spider::position(v); }
  std::array<SpiderVertex, 2> moves(const SpiderVertex& v) const { return spider::moves(v); }
  std::int64_t distance(const SpiderVertex& u, const SpiderVertex& v) const {
    return graph_distance(u, v);
  }
};

SpiderGraph build_graph();

enum class DriftCase { kCoincide, kGeneric, kGainHalf, kDeltaAdjacent };
std::string_view drift_case_name(DriftCase c);

// E(D_next | v1, v2) = alpha + beta c for conditional bit correlation c.
struct Drift {
  std::int64_t distance = 0;
  double alpha = 0.0;
  double beta = 0.0;
  DriftCase tag = DriftCase::kGeneric;
  bool l_flag = false;

  double min_mean() const { return alpha - std::abs(beta); }
};

// v1 = Ray(X, k), k >= 1, and v2 = Triangle(next(X)): the second walker sits
// at the beginning of the first walker's ray line.
bool l_condition(const SpiderVertex& v1, const SpiderVertex& v2);

// Enumerates the four joint moves. Tags: coincide (v1 == v2), generic
// (beta = 0, alpha = D), gain-half (beta = 0, alpha = D + 1/2), and
// delta-adjacent for everything else (pairs touching the triangle or
// adjacent on one ray, where the mean depends on c).
Drift drift_classify(const SpiderVertex& v1, const SpiderVertex& v2);

struct DriftCensus {
  std::int64_t radius = 0;
  std::int64_t pairs = 0;
  std::int64_t violations = 0;
  std::map<DriftCase, std::int64_t> counts;
  // gain-half pairs that are neither the L configuration nor its mirror,
  // and L / mirror pairs that are not gain-half.
  std::int64_t gain_half_mismatches = 0;
  // Ray-ray pairs at distance >= 2 whose drift is not exactly alpha = D, beta = 0.
  std::int64_t ray_pair_nonzero_drift = 0;
  std::int64_t delta_pairs_not_strict = 0;
  std::vector<std::pair<SpiderVertex, SpiderVertex>> violating_pairs;

  bool pass() const {
    return violations == 0 && gain_half_mismatches == 0 &&
           ray_pair_nonzero_drift == 0 && delta_pairs_not_strict == 0;
  }
};

inline constexpr double kDriftTolerance = 1e-12;

// All ordered pairs with depth <= radius plus far-pair templates; checks
// min over c in {-1, +1} of alpha + beta c >= D for each.
DriftCensus check_drift_monotonicity(std::int64_t radius);

struct LipschitzReport {
  double constant = 0.0;        // max(scan, asymptotic cap)
  double scan_max = 0.0;
  double asymptotic_cap = 0.0;  // 2 / sqrt(3), approached by ray pairs at 120 degrees
  SpiderVertex argmax_first;
  SpiderVertex argmax_second;
};

// max over distinct pairs of depth <= radius of graph distance / embedded
// distance. radius >= 2.
LipschitzReport lipschitz_constant(std::int64_t radius);

}  // namespace noise_lab::spider

#endif  // NOISE_LAB_SPIDER_GRAPH_HPP_
