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

#include "noise_lab/spider_walk.hpp"

#include <numbers>

#include "noise_lab/errors.hpp"

namespace noise_lab::spider {
namespace {

constexpr std::array<Arm, 3> kArms{Arm::kA, Arm::kB, Arm::kC};

int idx(Arm x) { return static_cast<int>(x); }

}  // namespace

ExactWalk::ExactWalk(std::int64_t max_steps) : max_steps_(max_steps) {
  if (max_steps < 0) throw InvalidInput("step count must be >= 0");
  if (3 * (max_steps + 1) > kMaxStates) {
    throw ResourceError("exact walk law exceeds the state budget of 1e7");
  }
  for (auto& v : mass_) v.assign(1, 0.0L);
  mass_[idx(Arm::kA)][0] = 1.0L;
}

void ExactWalk::advance() {
  if (steps_ >= max_steps_) throw InvalidInput("exact walk advanced past its reserved steps");
  const std::int64_t len = len_ + 1;
  for (Arm x : kArms) {
    const auto& old = mass_[idx(x)];
    auto& out = scratch_[idx(x)];
    out.assign(static_cast<std::size_t>(len), 0.0L);
    out[0] = 0.5L * (len_ > 1 ? old[1] : 0.0L) + 0.5L * mass_[idx(prev(x))][0];
    for (std::int64_t k = 1; k < len; ++k) {
      const long double below = old[static_cast<std::size_t>(k - 1)];
      const long double above = k + 1 < len_ ? old[static_cast<std::size_t>(k + 1)] : 0.0L;
      out[static_cast<std::size_t>(k)] = 0.5L * (below + above);
    }
  }
  std::swap(mass_, scratch_);
  len_ = len;
  ++steps_;
  // Trim the frontier while it carries negligible mass on every arm.
  while (len_ > 1) {
    const auto last = static_cast<std::size_t>(len_ - 1);
    bool negligible = true;
    for (Arm x : kArms) negligible = negligible && mass_[idx(x)][last] < kNegligibleMass;
    if (!negligible) break;
    for (Arm x : kArms) {
      discarded_ += mass_[idx(x)][last];
      mass_[idx(x)].pop_back();
    }
    --len_;
  }
}

double ExactWalk::probability(const SpiderVertex& v) const {
  if (v.depth < 0 || v.depth >= len_) return 0.0;
  return static_cast<double>(mass_[idx(v.arm)][static_cast<std::size_t>(v.depth)]);
}

double ExactWalk::delta_probability() const {
  long double total = 0.0L;
  for (Arm x : kArms) total += mass_[idx(x)][0];
  return static_cast<double>(total);
}

double ExactWalk::second_moment() const {
  long double total = 0.0L;
  for (Arm x : kArms) {
    const auto& m = mass_[idx(x)];
    for (std::size_t k = 0; k < m.size(); ++k) {
      const auto kk = static_cast<long double>(k);
      long double sq = 0.0L;
      switch (x) {
        case Arm::kA: sq = kk * kk; break;
        case Arm::kB: sq = 1.0L + kk + kk * kk; break;
        case Arm::kC: sq = (1.0L + kk) * (1.0L + kk); break;
      }
      total += m[k] * sq;
    }
  }
  return static_cast<double>(total);
}

std::complex<double> ExactWalk::mean_position() const {
  // Position is affine in depth on each arm: corner + k * direction.
  long double re = 0.0L;
  long double im = 0.0L;
  const long double h = std::numbers::sqrt3_v<long double> / 2.0L;
  for (Arm x : kArms) {
    long double p0 = 0.0L;
    long double p1 = 0.0L;
    const auto& m = mass_[idx(x)];
    for (std::size_t k = 0; k < m.size(); ++k) {
      p0 += m[k];
      p1 += m[k] * static_cast<long double>(k);
    }
    switch (x) {
      case Arm::kA: re -= p1; break;
      case Arm::kB: re += p0 + 0.5L * p1; im -= h * p1; break;
      case Arm::kC: re += 0.5L * (p0 + p1); im += h * (p0 + p1); break;
    }
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

double ExactWalk::total_mass() const {
  long double total = 0.0L;
  for (const auto& m : mass_) {
    for (long double p : m) total += p;
  }
  return static_cast<double>(total);
}

std::vector<std::pair<SpiderVertex, double>> ExactWalk::support() const {
  std::vector<std::pair<SpiderVertex, double>> out;
  for (Arm x : kArms) {
    const auto& m = mass_[idx(x)];
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k] > 0.0L) {
        out.push_back({SpiderVertex{x, static_cast<std::int64_t>(k)}, static_cast<double>(m[k])});
      }
    }
  }
  return out;
}

std::vector<std::pair<SpiderVertex, double>> exact_distribution(std::int64_t n) {
  ExactWalk walk(n);
  for (std::int64_t m = 0; m < n; ++m) walk.advance();
  return walk.support();
}

WalkSeries walk_series(std::int64_t n) {
  ExactWalk walk(n);
  WalkSeries out;
  const auto size = static_cast<std::size_t>(n + 1);
  out.origin.reserve(size);
  out.delta.reserve(size);
  out.vertex_b.reserve(size);
  out.ray_a1.reserve(size);
  out.second_moment.reserve(size);
  out.mean.reserve(size);
  for (std::int64_t m = 0;; ++m) {
    out.origin.push_back(walk.probability(kOrigin));
    out.delta.push_back(walk.delta_probability());
    out.vertex_b.push_back(walk.probability(SpiderVertex::triangle(Arm::kB)));
    out.ray_a1.push_back(walk.probability(SpiderVertex{Arm::kA, 1}));
    out.second_moment.push_back(walk.second_moment());
    out.mean.push_back(walk.mean_position());
    if (m == n) break;
    walk.advance();
  }
  out.discarded_mass = walk.discarded_mass();
  return out;
}

std::vector<SpiderVertex> walk_from_signs(std::span<const int> signs) {
  std::vector<SpiderVertex> path;
  path.reserve(signs.size() + 1);
  path.push_back(kOrigin);
  for (int s : signs) {
    if (s != 1 && s != -1) throw InvalidInput("walk signs must be +1 or -1");
    path.push_back(step(path.back(), s));
  }
  return path;
}

SpiderVertex endpoint_from_signs(std::span<const int> signs) {
  SpiderVertex v = kOrigin;
  for (int s : signs) {
    if (s != 1 && s != -1) throw InvalidInput("walk signs must be +1 or -1");
    v = step(v, s);
  }
  return v;
}

std::vector<SpiderVertex> walk_from_bits(const CubePoint& x) {
  const auto signs = x.signs();
  return walk_from_signs(signs);
}

std::vector<SpiderVertex> endpoint_vertices(int n) {
  if (n < 1 || n > kMaxEndpointLevels) {
    throw ResourceError("endpoint tables need 1 <= n <= 25");
  }
  const std::size_t size = std::size_t{1} << n;
  std::vector<SpiderVertex> out(size);
  // Depth-first over prefixes; bit j of the index is the sign of step j + 1.
  struct Frame {
    int depth;
    std::uint64_t prefix;
    SpiderVertex v;
  };
  std::vector<Frame> stack{{0, 0, kOrigin}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.depth == n) {
      out[f.prefix] = f.v;
      continue;
    }
    stack.push_back({f.depth + 1, f.prefix, step(f.v, 1)});
    stack.push_back({f.depth + 1, f.prefix | (std::uint64_t{1} << f.depth), step(f.v, -1)});
  }
  return out;
}

BooleanFunction endpoint_function(int n) {
  const auto vertices = endpoint_vertices(n);
  std::vector<Complex> values(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) values[i] = position(vertices[i]);
  return BooleanFunction(n, std::move(values));
}

PairWalker::PairWalker(const Coupling& mu) : cursor_(mu.cursor()), n_(mu.n()) {}

std::pair<int, int> PairWalker::advance(Rng& rng) {
  const auto [s, t] = cursor_.draw(rng);
  v1_ = step(v1_, s);
  v2_ = step(v2_, t);
  return {s, t};
}

PairTrajectory coupled_walk(const Coupling& mu, Rng& rng) {
  PairTrajectory out;
  out.states.reserve(static_cast<std::size_t>(mu.n()) + 1);
  PairWalker walker(mu);
  auto record = [&](int s, int t) {
    const Drift d = drift_classify(walker.first(), walker.second());
    out.states.push_back({walker.first(), walker.second(), s, t, d.distance, d.l_flag, d.tag});
  };
  record(0, 0);
  while (!walker.done()) {
    const auto [s, t] = walker.advance(rng);
    record(s, t);
  }
  return out;
}

std::vector<double> submartingale_ledger(const PairTrajectory& t) {
  std::vector<double> out;
  out.reserve(t.states.size());
  double half_l = 0.0;
  for (const auto& st : t.states) {
    out.push_back(static_cast<double>(st.distance) - half_l);
    if (st.l_flag) half_l += 0.5;
  }
  return out;
}

}  // namespace noise_lab::spider
