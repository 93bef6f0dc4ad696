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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "noise_lab/errors.hpp"

namespace noise_lab::spider {
namespace {

using cplx = std::complex<double>;

cplx corner(Arm x) {
  switch (x) {
    case Arm::kA: return {0.0, 0.0};
    case Arm::kB: return {1.0, 0.0};
    case Arm::kC: return {0.5, std::numbers::sqrt3 / 2.0};
  }
  return {};
}

constexpr std::array<Arm, 3> kArms{Arm::kA, Arm::kB, Arm::kC};

std::vector<SpiderVertex> vertices_within(std::int64_t radius) {
  std::vector<SpiderVertex> out;
  for (Arm x : kArms) {
    for (std::int64_t k = 0; k <= radius; ++k) out.push_back({x, k});
  }
  return out;
}

}  // namespace

char arm_name(Arm x) { return static_cast<char>('A' + static_cast<int>(x)); }

SpiderVertex SpiderVertex::ray(Arm x, std::int64_t k) {
  if (k < 1) throw InvalidInput("ray vertices need k >= 1");
  return {x, k};
}

std::string to_string(const SpiderVertex& v) {
  std::string out(1, arm_name(v.arm));
  if (v.depth > 0) out += std::to_string(v.depth);
  return out;
}

SpiderVertex parse_vertex(const std::string& text) {
  if (text.empty() || text[0] < 'A' || text[0] > 'C') {
    throw InvalidInput("bad spider vertex: " + text);
  }
  const Arm x = static_cast<Arm>(text[0] - 'A');
  if (text.size() == 1) return SpiderVertex::triangle(x);
  std::size_t used = 0;
  const long long k = std::stoll(text.substr(1), &used);
  if (used != text.size() - 1) throw InvalidInput("bad spider vertex: " + text);
  return SpiderVertex::ray(x, k);
}

std::complex<double> position(const SpiderVertex& v) {
  const cplx base = corner(v.arm);
  return base + static_cast<double>(v.depth) * (base - corner(next(v.arm)));
}

double squared_modulus(const SpiderVertex& v) {
  const auto k = static_cast<double>(v.depth);
  switch (v.arm) {
    case Arm::kA: return k * k;
    case Arm::kB: return 1.0 + k + k * k;
    case Arm::kC: return (1.0 + k) * (1.0 + k);
  }
  return 0.0;
}

SpiderVertex step(const SpiderVertex& v, int sign) {
  if (sign > 0) return {v.arm, v.depth + 1};
  if (v.depth == 0) return {next(v.arm), 0};
  return {v.arm, v.depth - 1};
}

std::array<SpiderVertex, 2> moves(const SpiderVertex& v) {
  return {step(v, 1), step(v, -1)};
}

std::int64_t graph_distance(const SpiderVertex& u, const SpiderVertex& v) {
  if (u.arm == v.arm) return u.depth > v.depth ? u.depth - v.depth : v.depth - u.depth;
  // Different arms: walk both down to the triangle and cross one edge.
  return u.depth + v.depth + 1;
}

bool in_delta(const SpiderVertex& v) { return v.depth == 0; }

bool in_delta_plus(const SpiderVertex& v, std::int64_t radius) {
  if (radius < 0) throw InvalidInput("neighborhood radius must be >= 0");
  return v.depth <= radius;
}

SpiderGraph build_graph() { return {}; }

std::string_view drift_case_name(DriftCase c) {
  switch (c) {
    case DriftCase::kCoincide: return "coincide";
    case DriftCase::kGeneric: return "generic";
    case DriftCase::kGainHalf: return "gain-half";
    case DriftCase::kDeltaAdjacent: return "delta-adjacent";
  }
  return "unknown";
}

bool l_condition(const SpiderVertex& v1, const SpiderVertex& v2) {
  return v1.depth >= 1 && v2.depth == 0 && v2.arm == next(v1.arm);
}

Drift drift_classify(const SpiderVertex& v1, const SpiderVertex& v2) {
  Drift out;
  out.distance = graph_distance(v1, v2);
  out.l_flag = l_condition(v1, v2);
  std::int64_t sum = 0;
  std::int64_t signed_sum = 0;
  for (int s : {1, -1}) {
    for (int t : {1, -1}) {
      const std::int64_t d = graph_distance(step(v1, s), step(v2, t));
      sum += d;
      signed_sum += s * t * d;
    }
  }
  // Quarters of integers are exact in binary floating point.
  out.alpha = static_cast<double>(sum) / 4.0;
  out.beta = static_cast<double>(signed_sum) / 4.0;
  const auto d = static_cast<double>(out.distance);
  if (v1 == v2) {
    out.tag = DriftCase::kCoincide;
  } else if (out.beta == 0.0 && out.alpha == d) {
    out.tag = DriftCase::kGeneric;
  } else if (out.beta == 0.0 && out.alpha == d + 0.5) {
    out.tag = DriftCase::kGainHalf;
  } else {
    out.tag = DriftCase::kDeltaAdjacent;
  }
  return out;
}

DriftCensus check_drift_monotonicity(std::int64_t radius) {
  if (radius < 3) throw InvalidInput("drift census needs radius >= 3");
  DriftCensus census;
  census.radius = radius;
  auto vertices = vertices_within(radius);
  // Far templates: deep ray vertices, paired with everything near and with
  // each other.
  for (Arm x : kArms) {
    for (std::int64_t k : {radius + 1, radius + 2, std::int64_t{1000}, std::int64_t{1000001}}) {
      vertices.push_back({x, k});
    }
  }
  for (const auto& v1 : vertices) {
    for (const auto& v2 : vertices) {
      const Drift dr = drift_classify(v1, v2);
      ++census.pairs;
      ++census.counts[dr.tag];
      const auto d = static_cast<double>(dr.distance);
      if (dr.min_mean() < d - kDriftTolerance) {
        ++census.violations;
        if (census.violating_pairs.size() < 16) census.violating_pairs.push_back({v1, v2});
      }
      const bool declared = l_condition(v1, v2) || l_condition(v2, v1);
      if ((dr.tag == DriftCase::kGainHalf) != declared) ++census.gain_half_mismatches;
      if (v1.depth >= 1 && v2.depth >= 1 && dr.distance >= 2 &&
          !(dr.alpha == d && dr.beta == 0.0)) {
        ++census.ray_pair_nonzero_drift;
      }
      if (in_delta(v1) && in_delta(v2) && !(dr.alpha > d)) ++census.delta_pairs_not_strict;
    }
  }
  return census;
}

LipschitzReport lipschitz_constant(std::int64_t radius) {
  if (radius < 2) throw InvalidInput("Lipschitz scan needs radius >= 2");
  LipschitzReport report;
  report.asymptotic_cap = 2.0 / std::numbers::sqrt3;
  const auto vertices = vertices_within(radius);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      const double gap = std::abs(position(vertices[i]) - position(vertices[j]));
      const double ratio = static_cast<double>(graph_distance(vertices[i], vertices[j])) / gap;
      if (ratio > report.scan_max) {
        report.scan_max = ratio;
        report.argmax_first = vertices[i];
        report.argmax_second = vertices[j];
      }
    }
  }
  report.constant = std::max(report.scan_max, report.asymptotic_cap);
  return report;
}

}  // namespace noise_lab::spider
