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

#include "noise_lab/boolean_cube.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "noise_lab/errors.hpp"

namespace noise_lab {
namespace {

void butterfly(std::vector<Complex>& a) {
  const std::size_t size = a.size();
  for (std::size_t h = 1; h < size; h <<= 1) {
    for (std::size_t i = 0; i < size; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const Complex x = a[j];
        const Complex y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
    }
  }
}

std::vector<double> level_powers(int n, double rho) {
  std::vector<double> pw(n + 1);
  pw[0] = 1.0;
  for (int m = 1; m <= n; ++m) pw[m] = pw[m - 1] * rho;
  return pw;
}

void require_same_n(const BooleanFunction& f, const BooleanFunction& g) {
  if (f.n() != g.n()) {
    throw InvalidInput("dimension mismatch: n=" + std::to_string(f.n()) +
                       " vs n=" + std::to_string(g.n()));
  }
}

}  // namespace

CubePoint::CubePoint(int n, std::uint64_t index) : n_(n), index_(index) {
  if (n < 1 || n > kMaxPointLevels) {
    throw InvalidInput("cube point level count out of range: " +
                       std::to_string(n));
  }
  if (n < 64 && (index >> n) != 0) {
    throw InvalidInput("cube point index out of range");
  }
}

CubePoint CubePoint::from_signs(std::span<const int> signs) {
  std::uint64_t index = 0;
  for (std::size_t j = 0; j < signs.size(); ++j) {
    if (signs[j] != 1 && signs[j] != -1) throw InvalidInput("sign must be +1 or -1");
    index |= sign_bit(signs[j]) << j;
  }
  return CubePoint(static_cast<int>(signs.size()), index);
}

std::vector<int> CubePoint::signs() const {
  std::vector<int> out(n_);
  for (int j = 0; j < n_; ++j) out[j] = sign(j);
  return out;
}

std::size_t BooleanFunction::table_size(int n) {
  if (n < 1 || n > kMaxDenseLevels) {
    throw InvalidInput("dense table needs 1 <= n <= 30, got n=" +
                       std::to_string(n));
  }
  return std::size_t{1} << n;
}

BooleanFunction::BooleanFunction(int n, std::vector<Complex> values)
    : n_(n), values_(std::move(values)) {
  if (values_.size() != table_size(n)) {
    throw InvalidInput("function table length " + std::to_string(values_.size()) +
                       " does not match 2^" + std::to_string(n));
  }
}

BooleanFunction BooleanFunction::constant(int n, Complex c) {
  return BooleanFunction(n, std::vector<Complex>(table_size(n), c));
}

BooleanFunction BooleanFunction::character(int n, std::uint64_t subset) {
  const std::size_t size = table_size(n);
  if (subset >= size) throw InvalidInput("subset mask out of range");
  return tabulate(n, [subset](std::uint64_t i) {
    return Complex((std::popcount(subset & i) & 1) != 0 ? -1.0 : 1.0, 0.0);
  });
}

Complex BooleanFunction::operator()(const CubePoint& p) const {
  if (p.n() != n_) throw InvalidInput("point dimension does not match function");
  return values_[p.index()];
}

BooleanFunction BooleanFunction::conj() const {
  std::vector<Complex> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::conj(values_[i]);
  return BooleanFunction(n_, std::move(out));
}

SpectralDecomposition::SpectralDecomposition(int n, std::vector<Complex> coeffs)
    : n_(n), coeffs_(std::move(coeffs)), level_weights_(n + 1, 0.0) {
  if (coeffs_.size() != BooleanFunction::table_size(n)) {
    throw InvalidInput("coefficient array length does not match 2^n");
  }
  for (std::uint64_t s = 0; s < coeffs_.size(); ++s) {
    level_weights_[std::popcount(s)] += std::norm(coeffs_[s]);
  }
}

double SpectralDecomposition::total_weight() const {
  double total = 0.0;
  for (double w : level_weights_) total += w;
  return total;
}

SpectralDecomposition wht_forward(const BooleanFunction& f) {
  std::vector<Complex> a(f.values().begin(), f.values().end());
  butterfly(a);
  const double scale = 1.0 / static_cast<double>(a.size());
  for (auto& c : a) c *= scale;
  return SpectralDecomposition(f.n(), std::move(a));
}

BooleanFunction wht_inverse(const SpectralDecomposition& spec) {
  std::vector<Complex> a(spec.coeffs().begin(), spec.coeffs().end());
  butterfly(a);
  return BooleanFunction(spec.n(), std::move(a));
}

double norm_sq(const BooleanFunction& f) {
  double total = 0.0;
  for (const auto& v : f.values()) total += std::norm(v);
  return total / static_cast<double>(f.size());
}

Complex mean(const BooleanFunction& f) {
  Complex total = 0.0;
  for (const auto& v : f.values()) total += v;
  return total / static_cast<double>(f.size());
}

SpectralTails spectral_tails(const SpectralDecomposition& spec, int m) {
  if (m < 1 || m > spec.n()) {
    throw InvalidInput("spectral tail index m must satisfy 1 <= m <= n");
  }
  SpectralTails tails;
  const auto w = spec.level_weights();
  for (int i = 1; i <= m; ++i) tails.low += w[i];
  for (int i = m; i <= spec.n(); ++i) tails.high += w[i];
  return tails;
}

NoiseParam::NoiseParam(double rho) : rho_(rho) {
  if (!(rho >= -1.0 && rho <= 1.0)) {
    throw InvalidInput("correlation rho must lie in [-1, 1]");
  }
}

NoiseParam NoiseParam::from_epsilon(double epsilon) {
  return NoiseParam(1.0 - 2.0 * epsilon);
}

BooleanFunction noise_operator(const BooleanFunction& f, NoiseParam rho) {
  auto spec = wht_forward(f);
  const auto pw = level_powers(f.n(), rho.rho());
  std::vector<Complex> coeffs(spec.coeffs().begin(), spec.coeffs().end());
  for (std::uint64_t s = 0; s < coeffs.size(); ++s) coeffs[s] *= pw[std::popcount(s)];
  return wht_inverse(SpectralDecomposition(f.n(), std::move(coeffs)));
}

Complex noise_correlation(const BooleanFunction& f, const BooleanFunction& g,
                          NoiseParam rho) {
  require_same_n(f, g);
  const auto fs = wht_forward(f);
  const auto gs = wht_forward(g);
  const auto pw = level_powers(f.n(), rho.rho());
  Complex total = 0.0;
  for (std::uint64_t s = 0; s < fs.coeffs().size(); ++s) {
    total += pw[std::popcount(s)] * fs.coefficient(s) * std::conj(gs.coefficient(s));
  }
  return total;
}

double expected_conditional_variance(const BooleanFunction& f, NoiseParam rho) {
  const auto spec = wht_forward(f);
  const double r2 = rho.rho() * rho.rho();
  double total = 0.0;
  double pw = 1.0;
  for (int m = 0; m <= f.n(); ++m) {
    total += (1.0 - pw) * spec.level_weight(m);
    pw *= r2;
  }
  return total;
}

std::pair<CubePoint, CubePoint> sample_correlated_pair(int n, NoiseParam rho,
                                                       Rng& rng) {
  if (n < 1 || n > kMaxPointLevels) throw InvalidInput("n out of range for a cube point");
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  const std::uint64_t first = rng() & mask;
  const double flip = rho.epsilon();
  std::uint64_t flips = 0;
  for (int j = 0; j < n; ++j) {
    if (rng.bernoulli(flip)) flips |= std::uint64_t{1} << j;
  }
  return {CubePoint(n, first), CubePoint(n, first ^ flips)};
}

Family parse_family(std::string_view name) {
  if (name == "simple-walk") return Family::kSimpleWalk;
  if (name == "twisted-walk") return Family::kTwistedWalk;
  if (name == "dictator") return Family::kDictator;
  if (name == "parity") return Family::kParity;
  if (name == "majority") return Family::kMajority;
  throw InvalidInput("unknown function family: " + std::string(name));
}

std::string_view family_name(Family family) {
  switch (family) {
    case Family::kSimpleWalk: return "simple-walk";
    case Family::kTwistedWalk: return "twisted-walk";
    case Family::kDictator: return "dictator";
    case Family::kParity: return "parity";
    case Family::kMajority: return "majority";
  }
  return "unknown";
}

BooleanFunction builtin_family(Family family, int n) {
  BooleanFunction::table_size(n);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  switch (family) {
    case Family::kSimpleWalk:
      return BooleanFunction::tabulate(n, [&](std::uint64_t i) {
        return Complex(static_cast<double>(n - 2 * std::popcount(i)) * inv_sqrt_n, 0.0);
      });
    case Family::kTwistedWalk:
      return BooleanFunction::tabulate(n, [&](std::uint64_t i) {
        int prod = 1;
        int sum = 0;
        for (int j = 0; j < n; ++j) {
          prod *= coordinate_sign(i, j);
          sum += prod;
        }
        return Complex(sum * inv_sqrt_n, 0.0);
      });
    case Family::kDictator:
      return BooleanFunction::character(n, 1);
    case Family::kParity:
      return BooleanFunction::character(n, (std::uint64_t{1} << n) - 1);
    case Family::kMajority:
      return BooleanFunction::tabulate(n, [&](std::uint64_t i) {
        const int sum = n - 2 * std::popcount(i);
        if (sum == 0) return Complex(coordinate_sign(i, 0), 0.0);
        return Complex(sum > 0 ? 1.0 : -1.0, 0.0);
      });
  }
  throw InvalidInput("unknown function family");
}

BooleanFunction builtin_family(std::string_view name, int n) {
  return builtin_family(parse_family(name), n);
}

}  // namespace noise_lab
