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

#ifndef NOISE_LAB_SPIDER_EXPERIMENT_HPP_
#define NOISE_LAB_SPIDER_EXPERIMENT_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "noise_lab/coupling.hpp"
#include "noise_lab/stats.hpp"

namespace noise_lab::spider {

// Greedy adversary: at each step picks c in {-rho, +rho} minimizing the
// conditional mean of the next distance between the two spider walkers.
class GreedyStrategy final : public KernelStrategy {
 public:
  explicit GreedyStrategy(double rho);
  std::unique_ptr<KernelCursor> start() const override;
  std::string name() const override { return "greedy"; }

 private:
  double rho_;
};

enum class CouplingFamily { kProduct, kCorrelated, kTreeTwisted, kGreedy };

std::string_view family_name(CouplingFamily f);
CouplingFamily parse_family(std::string_view name);

// Member `replicate` of a family at (n, rho). Tree twists draw hashed labels
// from (seed, replicate); the other families ignore both.
Coupling family_coupling(CouplingFamily f, int n, double rho, std::uint64_t seed,
                         std::uint64_t replicate);

// Per-sample observables of two walkers run under one coupling, reduced in a
// fixed batch order so results do not depend on the thread count.
struct PairStatistics {
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream_key = 0;
  MeanEstimate distance;        // D_n
  MeanEstimate gap;             // |Z'_n - Z''_n|^2 / (2n)
  MeanEstimate gap_direct;      // 1 - Re(conj(Z'_n) Z''_n) / n
  MeanEstimate sum_l;           // sum_{k=0}^{n} L_k
  MeanEstimate sum_joint_delta; // sum_{k=0}^{n} 1{Z'_k, Z''_k in triangle}
  MeanEstimate ledger;          // D_n - (1/2) sum_{k<n} L_k
  double max_distance_ratio = 0.0;  // max D_n / |Z'_n - Z''_n|
  // Conditional step: Z''_k at the origin, Z'_k outside the 2-neighborhood
  // of the triangle, k + 2 <= n. Success: some L among k, k+1, k+2. Indexed
  // by the arm of Z'_k.
  std::array<std::int64_t, 3> conditional_events{};
  std::array<std::int64_t, 3> conditional_successes{};
};

inline constexpr std::int64_t kBatchSamples = 256;

PairStatistics simulate_pairs(const Coupling& mu, std::int64_t samples, std::uint64_t seed,
                              std::uint64_t stream_key, std::size_t threads = 0);

struct EqAReport {
  std::int64_t n = 0;
  double rho = 0.0;
  MeanEstimate joint;              // sum_k P(both in triangle), Monte Carlo
  std::vector<double> joint_exact; // per k, filled by the exact variant
  double marginal_sum = 0.0;       // sum_k P(Z_k in triangle)
  double bound_sum = 0.0;          // sum_k P(Z_k in triangle)^{2/(1+rho)}
  double epsilon_bound = 0.0;      // bound_sum / sqrt(n)
  double epsilon_empirical = 0.0;  // joint / sqrt(n)
  bool within_bound = false;
};

// rho is rho_max(mu); sums run over k = 0 .. n.
EqAReport eq_a_estimate(const Coupling& mu, double rho, std::int64_t samples, std::uint64_t seed,
                        std::size_t threads = 0);
// Exact joint probabilities by enumerating mu (explicit, n <= 12).
EqAReport eq_a_exact(const Coupling& mu, double rho);

inline constexpr std::int64_t kMinConditionalEvents = 100;

struct EqBReport {
  std::int64_t n = 0;
  MeanEstimate sum_l;
  double c0_hat = 0.0;
  double c0_lower = 0.0;
  std::int64_t events = 0;
  std::int64_t successes = 0;
  std::array<std::int64_t, 3> arm_events{};
  std::array<std::int64_t, 3> arm_successes{};
  double frequency = 0.0;
  double frequency_se = 0.0;
  // Binomial normal approximation; events within a run overlap, so this CI
  // is indicative only.
  bool conditional_pass = false;
  bool low_events = false;
};

EqBReport eq_b_estimate(const Coupling& mu, std::int64_t samples, std::uint64_t seed,
                        std::size_t threads = 0);
EqBReport eq_b_from(const PairStatistics& stats);

struct ExperimentConfig {
  std::vector<std::int64_t> n;
  std::vector<double> rho;
  std::vector<CouplingFamily> families;
  std::int64_t samples = 10000;
  std::uint64_t seed = 1;
  // Random tree twists per (n, rho); other families run one replicate.
  std::int64_t automorphisms = 1;
  std::int64_t lipschitz_radius = 64;
  std::size_t threads = 0;

  void validate() const;
};

struct ExperimentRow {
  std::int64_t n = 0;
  double rho = 0.0;
  CouplingFamily family = CouplingFamily::kCorrelated;
  std::int64_t replicate = 0;
  std::string coupling;
  std::uint64_t seed = 0;
  std::uint64_t stream_key = 0;
  PairStatistics stats;
  double c0_hat = 0.0;
  double c1 = 0.0;
  // E D_n >= (1/2) sum_{k<n} P(L_k = 1), within CI.
  bool submartingale_ok = false;
  // D_n <= C1 |Z'_n - Z''_n| on every sample.
  bool lipschitz_ok = false;
  bool gap_positive = false;  // CI lower bound > 0
};

struct ExperimentReport {
  ExperimentConfig config;
  double c1 = 0.0;
  std::vector<ExperimentRow> rows;

  bool pass() const;
  // Smallest gap over families and replicates at (n, rho).
  MeanEstimate min_gap(std::int64_t n, double rho) const;
};

ExperimentReport noncosiness_experiment(const ExperimentConfig& config);

// Gap of the normalized simple walk under correlated(rho): 1 - rho.
double simple_walk_gap(int n, double rho);

}  // namespace noise_lab::spider

#endif  // NOISE_LAB_SPIDER_EXPERIMENT_HPP_
