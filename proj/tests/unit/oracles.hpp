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

#ifndef NOISE_LAB_TESTS_ORACLES_HPP_
#define NOISE_LAB_TESTS_ORACLES_HPP_

// Slow, obviously-correct reference implementations.

#include <bit>
#include <cstdint>
#include <deque>
#include <map>
#include <vector>

#include "noise_lab/boolean_cube.hpp"
#include "noise_lab/coupling.hpp"
#include "noise_lab/rng.hpp"
#include "noise_lab/spider_graph.hpp"

namespace noise_lab::testing {

inline int character(std::uint64_t subset, std::uint64_t x) {
  return (std::popcount(subset & x) & 1) != 0 ? -1 : 1;
}

// f^(S) = 2^-n sum_x f(x) chi_S(x), O(4^n).
inline std::vector<Complex> naive_coefficients(const BooleanFunction& f) {
  const std::size_t size = f.size();
  std::vector<Complex> out(size);
  for (std::uint64_t s = 0; s < size; ++s) {
    Complex acc = 0.0;
    for (std::uint64_t x = 0; x < size; ++x) acc += f[x] * static_cast<double>(character(s, x));
    out[s] = acc / static_cast<double>(size);
  }
  return out;
}

// E(f(tau'') | tau' = x) by summing the product kernel over all y.
inline BooleanFunction brute_noise(const BooleanFunction& f, double rho) {
  const int n = f.n();
  return BooleanFunction::tabulate(n, [&](std::uint64_t x) {
    Complex acc = 0.0;
    for (std::uint64_t y = 0; y < f.size(); ++y) {
      double p = 1.0;
      for (int j = 0; j < n; ++j) {
        p *= (1.0 + rho * coordinate_sign(x, j) * coordinate_sign(y, j)) / 2.0;
      }
      acc += p * f[y];
    }
    return acc;
  });
}

// P(i1, i2) as the product of per-step kernels (1 + s t c_m(h)) / 4.
inline std::vector<double> naive_joint(const Coupling& mu) {
  const int n = mu.n();
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<double> out(size * size);
  for (std::uint64_t i1 = 0; i1 < size; ++i1) {
    for (std::uint64_t i2 = 0; i2 < size; ++i2) {
      double p = 1.0;
      for (int m = 1; m <= n; ++m) {
        const std::uint64_t mask = (std::uint64_t{1} << (m - 1)) - 1;
        const double c = mu.correlation(m, i1 & mask, i2 & mask);
        p *= (1.0 + coordinate_sign(i1, m - 1) * coordinate_sign(i2, m - 1) * c) / 4.0;
      }
      out[(i1 << n) | i2] = p;
    }
  }
  return out;
}

inline BooleanFunction random_function(int n, Rng& rng) {
  return BooleanFunction::tabulate(n, [&](std::uint64_t) {
    return Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
  });
}

// Breadth-first distances over the spider graph truncated at `radius`.
inline std::int64_t bfs_distance(const spider::SpiderVertex& from, const spider::SpiderVertex& to,
                                 std::int64_t radius) {
  using spider::Arm;
  using spider::SpiderVertex;
  auto neighbors = [&](const SpiderVertex& v) {
    std::vector<SpiderVertex> out;
    if (v.depth == 0) {
      for (int a = 0; a < 3; ++a) {
        if (a != static_cast<int>(v.arm)) out.push_back({static_cast<Arm>(a), 0});
      }
    } else {
      out.push_back({v.arm, v.depth - 1});
    }
    if (v.depth < radius) out.push_back({v.arm, v.depth + 1});
    return out;
  };
  std::map<SpiderVertex, std::int64_t> dist{{from, 0}};
  std::deque<SpiderVertex> queue{from};
  while (!queue.empty()) {
    const SpiderVertex v = queue.front();
    queue.pop_front();
    if (v == to) return dist[v];
    for (const auto& w : neighbors(v)) {
      if (dist.emplace(w, dist[v] + 1).second) queue.push_back(w);
    }
  }
  return -1;
}

}  // namespace noise_lab::testing

#endif  // NOISE_LAB_TESTS_ORACLES_HPP_
