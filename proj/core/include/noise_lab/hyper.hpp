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

#ifndef NOISE_LAB_HYPER_HPP_
#define NOISE_LAB_HYPER_HPP_

// Hypercontractivity on trees.
//
// The four-point inequality: for r in [1/2, 1], x, y in [0, 1] and
// |rho| <= (1 - r) / r,
//
//   (1+rho)(1-x)^r(1-y)^r + (1-rho)(1-x)^r(1+y)^r
//     + (1-rho)(1+x)^r(1-y)^r + (1+rho)(1+x)^r(1+y)^r <= 4.
//
// It drives the tree inequality |E f(tau') g(tau'')| <= ||f||_{1+rho} ||g||_{1+rho}
// for every coupling with rho_max <= rho: with r = 1/(1+rho), the product
// (M'_m M''_m)^r of the conditional-expectation martingales of |f|^{1+rho} and
// |g|^{1+rho} is a supermartingale. This module checks both numerically.

#include <cstdint>
#include <vector>

#include "noise_lab/boolean_cube.hpp"
#include "noise_lab/coupling.hpp"

namespace noise_lab {

struct FourPointInput {
  double r = 1.0;
  double rho = 0.0;
  double x = 0.0;
  double y = 0.0;

  // Throws InvalidInput unless r in [1/2, 1], |rho| <= (1-r)/r, x, y in [0, 1].
  void validate() const;
};

double four_point_value(const FourPointInput& in);

struct HyperReport {
  double max_value = 0.0;
  FourPointInput argmax;
  double grid_step = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::int64_t evaluations = 0;
  // max over grid r of |value(r, rho, 0, 0) - 4|.
  double origin_deviation = 0.0;
};

// Scans r over [1/2, 1] and x, y over [0, 1] at `grid_step` (the exact
// endpoints are always included) with rho = +-(1-r)/r, then refines the best
// cells by golden-section search. Passes iff max <= 4 + tolerance. Values
// within 1e-12 of the maximum tie, and ties go to the lexicographically
// smallest (r, x, y, rho).
HyperReport verify_four_point(double grid_step, double tolerance,
                              std::size_t threads = 1);

// Same scan restricted to a single r.
HyperReport verify_four_point_slice(double r, double grid_step, double tolerance);

// (2^-n sum |f|^p)^(1/p); p >= 1.
double p_norm(const BooleanFunction& f, double p);

// E f(tau') g(tau'') over an explicit coupling (no conjugation).
Complex pair_expectation(const BooleanFunction& f, const Coupling& mu,
                         const BooleanFunction& g);

// |E f(tau') g(tau'')| / (||f||_{1+rho} ||g||_{1+rho}); 0 when the
// denominator vanishes. rho in [0, 1].
double hypercontractivity_ratio(const BooleanFunction& f, const BooleanFunction& g,
                                const Coupling& mu, double rho);

struct IndicatorCheck {
  double joint = 0.0;  // P(tau' in S1 & tau'' in S2)
  double lhs = 0.0;    // joint^(1+rho)
  double rhs = 0.0;    // P(S1) P(S2)
  bool ok = false;
};

// Membership masks of length 2^n.
IndicatorCheck indicator_inequality_check(const std::vector<bool>& s1,
                                          const std::vector<bool>& s2,
                                          const Coupling& mu, double rho);

struct SupermartingaleStep {
  int step = 0;
  std::int64_t histories = 0;
  // min over histories of (M'_{m-1} M''_{m-1})^r - E((M'_m M''_m)^r | h).
  double worst_slack = 0.0;
  std::uint64_t first_prefix = 0;
  std::uint64_t second_prefix = 0;
};

struct SupermartingaleTrace {
  double r = 1.0;
  std::vector<SupermartingaleStep> steps;
  bool ok = true;
  double final_lhs = 0.0;  // E |f(tau') g(tau'')|
  double final_rhs = 0.0;  // ||f||_{1+rho} ||g||_{1+rho}
};

inline constexpr int kMaxTraceLevels = 10;

SupermartingaleTrace supermartingale_trace(const BooleanFunction& f,
                                           const BooleanFunction& g,
                                           const Coupling& mu, double rho);

struct AdversarialOptions {
  int n = 4;
  double rho = 0.5;
  int restarts = 100;
  int sweeps = 4;
  std::uint64_t seed = 1;
};

struct AdversarialResult {
  double best_ratio = 0.0;
  int best_restart = -1;
  std::int64_t evaluations = 0;
  std::vector<double> best_kernel;
};

// Falsification search: from random complex f, g and random kernels with
// entries in [-rho, rho], alternates coordinate ascent on the kernel entries
// (the ratio is convex in each entry, so only +-rho are tried) with
// hill-climbing perturbations of f and g.
AdversarialResult adversarial_search(const AdversarialOptions& options);

}  // namespace noise_lab

#endif  // NOISE_LAB_HYPER_HPP_
