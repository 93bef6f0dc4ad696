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

#include "noise_lab/spider_experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "noise_lab/boolean_cube.hpp"
#include "noise_lab/errors.hpp"
#include "noise_lab/parallel.hpp"
#include "noise_lab/rng.hpp"
#include "noise_lab/spider_graph.hpp"
#include "noise_lab/spider_walk.hpp"
#include "noise_lab/tree_automorphism.hpp"

namespace noise_lab::spider {
namespace {

class GreedyCursor final : public KernelCursor {
 public:
  explicit GreedyCursor(double rho) : rho_(rho) {}

  double correlation() override {
    const Drift d = drift_classify(v1_, v2_);
    return d.beta > 0.0 ? -rho_ : rho_;
  }

  void advance(int s, int t) override {
    v1_ = step(v1_, s);
    v2_ = step(v2_, t);
  }

 private:
  double rho_;
  SpiderVertex v1_ = kOrigin;
  SpiderVertex v2_ = kOrigin;
};

struct BatchResult {
  RunningStats distance, gap, gap_direct, sum_l, sum_joint, ledger;
  double max_ratio = 0.0;
  std::array<std::int64_t, 3> events{};
  std::array<std::int64_t, 3> successes{};
};

// A pending conditional event waits for L at k, k + 1, k + 2.
struct Pending {
  std::int64_t deadline;
  int arm;
  bool hit;
};

void run_sample(const Coupling& mu, Rng& rng, BatchResult& out) {
  const std::int64_t n = mu.n();
  PairWalker walker(mu);
  std::int64_t l_before = 0;
  std::int64_t l_total = 0;
  std::int64_t joint = 0;
  std::array<Pending, 3> pending{};
  int pending_count = 0;
  for (std::int64_t k = 0;; ++k) {
    const SpiderVertex& v1 = walker.first();
    const SpiderVertex& v2 = walker.second();
    const bool l = l_condition(v1, v2);
    if (in_delta(v1) && in_delta(v2)) ++joint;
    if (v2 == kOrigin && !in_delta_plus(v1, 2) && k + 2 <= n) {
      pending[static_cast<std::size_t>(pending_count++)] = {k + 2, static_cast<int>(v1.arm), false};
    }
    int kept = 0;
    for (int i = 0; i < pending_count; ++i) {
      Pending p = pending[static_cast<std::size_t>(i)];
      p.hit = p.hit || l;
      if (p.deadline == k) {
        ++out.events[static_cast<std::size_t>(p.arm)];
        if (p.hit) ++out.successes[static_cast<std::size_t>(p.arm)];
      } else {
        pending[static_cast<std::size_t>(kept++)] = p;
      }
    }
    pending_count = kept;
    if (l) ++l_total;
    if (k == n) break;
    if (l) ++l_before;
    walker.advance(rng);
  }
  const SpiderVertex& v1 = walker.first();
  const SpiderVertex& v2 = walker.second();
  const auto z1 = position(v1);
  const auto z2 = position(v2);
  const auto dn = static_cast<double>(graph_distance(v1, v2));
  const double sep = std::abs(z1 - z2);
  const double nd = static_cast<double>(n);
  out.distance.add(dn);
  out.gap.add(std::norm(z1 - z2) / (2.0 * nd));
  out.gap_direct.add(1.0 - (std::conj(z1) * z2).real() / nd);
  out.sum_l.add(static_cast<double>(l_total));
  out.sum_joint.add(static_cast<double>(joint));
  out.ledger.add(dn - 0.5 * static_cast<double>(l_before));
  if (dn > 0.0) out.max_ratio = std::max(out.max_ratio, dn / sep);
}

std::uint64_t double_bits(double x) { return std::bit_cast<std::uint64_t>(x); }

}  // namespace

GreedyStrategy::GreedyStrategy(double rho) : rho_(std::abs(rho)) {
  if (!(rho_ <= 1.0)) throw InvalidInput("greedy coupling needs |rho| <= 1");
}

std::unique_ptr<KernelCursor> GreedyStrategy::start() const {
  return std::make_unique<GreedyCursor>(rho_);
}

std::string_view family_name(CouplingFamily f) {
  switch (f) {
    case CouplingFamily::kProduct: return "product";
    case CouplingFamily::kCorrelated: return "correlated";
    case CouplingFamily::kTreeTwisted: return "tree_twisted";
    case CouplingFamily::kGreedy: return "greedy";
  }
  return "unknown";
}

CouplingFamily parse_family(std::string_view name) {
  for (auto f : {CouplingFamily::kProduct, CouplingFamily::kCorrelated,
                 CouplingFamily::kTreeTwisted, CouplingFamily::kGreedy}) {
    if (family_name(f) == name) return f;
  }
  throw InvalidInput("unknown coupling family: " + std::string(name));
}

Coupling family_coupling(CouplingFamily f, int n, double rho, std::uint64_t seed,
                         std::uint64_t replicate) {
  switch (f) {
    case CouplingFamily::kProduct:
      return Coupling::product(n);
    case CouplingFamily::kCorrelated:
      return Coupling::correlated(n, rho);
    case CouplingFamily::kTreeTwisted:
      return Coupling::tree_twisted(
          n, rho, std::make_shared<HashedLabels>(stream_id(seed, 0x7ee0000 + replicate)));
    case CouplingFamily::kGreedy:
      return Coupling::custom(n, std::make_shared<GreedyStrategy>(rho));
  }
  throw InvalidInput("unknown coupling family");
}

PairStatistics simulate_pairs(const Coupling& mu, std::int64_t samples, std::uint64_t seed,
                              std::uint64_t stream_key, std::size_t threads) {
  if (samples < 2) throw InvalidInput("need at least 2 samples");
  const auto batches = static_cast<std::size_t>((samples + kBatchSamples - 1) / kBatchSamples);
  std::vector<BatchResult> results(batches);
  parallel_for(batches, threads == 0 ? thread_budget() : threads, [&](std::size_t b) {
    Rng rng(seed, stream_id(stream_key, b));
    const std::int64_t begin = static_cast<std::int64_t>(b) * kBatchSamples;
    const std::int64_t end = std::min(samples, begin + kBatchSamples);
    for (std::int64_t i = begin; i < end; ++i) run_sample(mu, rng, results[b]);
  });
  BatchResult total;
  for (const auto& r : results) {
    total.distance.merge(r.distance);
    total.gap.merge(r.gap);
    total.gap_direct.merge(r.gap_direct);
    total.sum_l.merge(r.sum_l);
    total.sum_joint.merge(r.sum_joint);
    total.ledger.merge(r.ledger);
    total.max_ratio = std::max(total.max_ratio, r.max_ratio);
    for (std::size_t a = 0; a < 3; ++a) {
      total.events[a] += r.events[a];
      total.successes[a] += r.successes[a];
    }
  }
  PairStatistics out;
  out.n = mu.n();
  out.seed = seed;
  out.stream_key = stream_key;
  out.distance = total.distance.estimate();
  out.gap = total.gap.estimate();
  out.gap_direct = total.gap_direct.estimate();
  out.sum_l = total.sum_l.estimate();
  out.sum_joint_delta = total.sum_joint.estimate();
  out.ledger = total.ledger.estimate();
  out.max_distance_ratio = total.max_ratio;
  out.conditional_events = total.events;
  out.conditional_successes = total.successes;
  return out;
}

namespace {

void fill_bounds(EqAReport& r) {
  const WalkSeries series = walk_series(r.n);
  const double exponent = 2.0 / (1.0 + r.rho);
  for (double p : series.delta) {
    r.marginal_sum += p;
    r.bound_sum += std::pow(p, exponent);
  }
  const double root = std::sqrt(static_cast<double>(r.n));
  r.epsilon_bound = r.bound_sum / root;
}

void check_rho(double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidInput("eqA needs rho_max in [0, 1]");
}

}  // namespace

EqAReport eq_a_estimate(const Coupling& mu, double rho, std::int64_t samples, std::uint64_t seed,
                        std::size_t threads) {
  check_rho(rho);
  EqAReport r;
  r.n = mu.n();
  r.rho = rho;
  fill_bounds(r);
  const PairStatistics stats = simulate_pairs(mu, samples, seed, stream_id(0xea, r.n), threads);
  r.joint = stats.sum_joint_delta;
  r.epsilon_empirical = r.joint.mean / std::sqrt(static_cast<double>(r.n));
  r.within_bound = r.joint.lower() <= r.bound_sum;
  return r;
}

EqAReport eq_a_exact(const Coupling& mu, double rho) {
  check_rho(rho);
  EqAReport r;
  r.n = mu.n();
  r.rho = rho;
  fill_bounds(r);
  const int n = mu.n();
  r.joint_exact.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for_each_outcome(mu, [&](std::uint64_t p1, std::uint64_t p2, double prob) {
    SpiderVertex a = kOrigin;
    SpiderVertex b = kOrigin;
    r.joint_exact[0] += prob;
    for (int j = 0; j < n; ++j) {
      a = step(a, coordinate_sign(p1, j));
      b = step(b, coordinate_sign(p2, j));
      if (in_delta(a) && in_delta(b)) r.joint_exact[static_cast<std::size_t>(j) + 1] += prob;
    }
  });
  double total = 0.0;
  for (double p : r.joint_exact) total += p;
  r.joint = {total, 0.0, 0};
  r.epsilon_empirical = total / std::sqrt(static_cast<double>(n));
  r.within_bound = total <= r.bound_sum + 1e-12;
  return r;
}

EqBReport eq_b_from(const PairStatistics& stats) {
  EqBReport r;
  r.n = stats.n;
  r.sum_l = stats.sum_l;
  const double root = std::sqrt(static_cast<double>(stats.n));
  r.c0_hat = r.sum_l.mean / root;
  r.c0_lower = r.sum_l.lower() / root;
  r.arm_events = stats.conditional_events;
  r.arm_successes = stats.conditional_successes;
  for (std::size_t a = 0; a < 3; ++a) {
    r.events += r.arm_events[a];
    r.successes += r.arm_successes[a];
  }
  r.low_events = r.events < kMinConditionalEvents;
  if (r.events > 0) {
    const auto e = static_cast<double>(r.events);
    r.frequency = static_cast<double>(r.successes) / e;
    r.frequency_se = std::sqrt(std::max(r.frequency * (1.0 - r.frequency), 0.25 / e) / e);
    // Few events: widen the interval to the 99.9% quantile.
    const double z = r.low_events ? 3.29 : kZ95;
    r.conditional_pass = r.frequency + z * r.frequency_se >= 0.25;
  }
  return r;
}

EqBReport eq_b_estimate(const Coupling& mu, std::int64_t samples, std::uint64_t seed,
                        std::size_t threads) {
  return eq_b_from(simulate_pairs(mu, samples, seed, stream_id(0xeb, mu.n()), threads));
}

void ExperimentConfig::validate() const {
  if (n.empty()) throw InvalidInput("experiment needs at least one n");
  for (auto v : n) {
    if (v < 1 || v > std::numeric_limits<int>::max()) throw InvalidInput("experiment n out of range");
  }
  if (rho.empty()) throw InvalidInput("experiment needs at least one rho");
  for (double r : rho) {
    if (!(r >= -1.0 && r <= 1.0)) throw InvalidInput("experiment rho must lie in [-1, 1]");
  }
  if (families.empty()) throw InvalidInput("experiment needs at least one family");
  if (samples < 2) throw InvalidInput("experiment needs at least 2 samples");
  if (automorphisms < 1) throw InvalidInput("experiment needs automorphisms >= 1");
  if (lipschitz_radius < 2) throw InvalidInput("lipschitz radius must be >= 2");
}

bool ExperimentReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ExperimentRow& r) {
    return r.submartingale_ok && r.lipschitz_ok;
  });
}

MeanEstimate ExperimentReport::min_gap(std::int64_t n, double rho) const {
  MeanEstimate best{std::numeric_limits<double>::infinity(), 0.0, 0};
  for (const auto& r : rows) {
    if (r.n == n && r.rho == rho && r.stats.gap.mean < best.mean) best = r.stats.gap;
  }
  return best;
}

ExperimentReport noncosiness_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentReport report;
  report.config = config;
  report.c1 = lipschitz_constant(config.lipschitz_radius).constant;
  for (auto n : config.n) {
    for (double rho : config.rho) {
      for (auto family : config.families) {
        const std::int64_t reps =
            family == CouplingFamily::kTreeTwisted ? config.automorphisms : 1;
        for (std::int64_t rep = 0; rep < reps; ++rep) {
          ExperimentRow row;
          row.n = n;
          row.rho = rho;
          row.family = family;
          row.replicate = rep;
          const Coupling mu = family_coupling(family, static_cast<int>(n), rho, config.seed,
                                              static_cast<std::uint64_t>(rep));
          row.coupling = mu.describe();
          row.seed = config.seed;
          row.stream_key = stream_id(
              stream_id(static_cast<std::uint64_t>(n), double_bits(rho)),
              (static_cast<std::uint64_t>(family) << 32) | static_cast<std::uint64_t>(rep));
          row.stats = simulate_pairs(mu, config.samples, config.seed, row.stream_key,
                                     config.threads);
          row.c1 = report.c1;
          row.c0_hat = row.stats.sum_l.mean / std::sqrt(static_cast<double>(n));
          row.submartingale_ok = row.stats.ledger.upper() >= 0.0;
          row.lipschitz_ok = row.stats.max_distance_ratio <= report.c1 + 1e-9;
          row.gap_positive = row.stats.gap.lower() > 0.0;
          report.rows.push_back(std::move(row));
        }
      }
    }
  }
  return report;
}

double simple_walk_gap(int n, double rho) {
  const BooleanFunction f = builtin_family(Family::kSimpleWalk, n);
  const double norm = norm_sq(f);
  return (norm - noise_correlation(f, f, NoiseParam(rho)).real()) / norm;
}

}  // namespace noise_lab::spider
