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

#ifndef NOISE_LAB_BOOLEAN_CUBE_HPP_
#define NOISE_LAB_BOOLEAN_CUBE_HPP_

// Fourier-Walsh analysis on the cube {-1,+1}^n.
//
// Bit convention, shared by every module: a point is an integer index whose
// bit j (least significant = coordinate 1) encodes tau_{j+1}; a 0 bit is +1
// and a 1 bit is -1. A subset S of coordinates is the bitmask with bit j set
// iff coordinate j+1 is in S, so chi_S(index) = (-1)^popcount(S & index).
//
// All expectations use the uniform probability measure: ||f||^2 is the mean
// of |f|^2, and coefficients are normalized so Parseval holds without extra
// factors.

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "noise_lab/rng.hpp"

namespace noise_lab {

using Complex = std::complex<double>;

// Largest n for which dense 2^n tables are built.
inline constexpr int kMaxDenseLevels = 30;
// Largest n for which a point still fits in a 64-bit index.
inline constexpr int kMaxPointLevels = 63;

// Sign of 0-based coordinate j of a point index.
constexpr int coordinate_sign(std::uint64_t index, int j) {
  return ((index >> j) & 1U) != 0 ? -1 : 1;
}

// Bit that encodes `sign` (+1 -> 0, -1 -> 1).
constexpr std::uint64_t sign_bit(int sign) { return sign < 0 ? 1U : 0U; }

class CubePoint {
 public:
  CubePoint(int n, std::uint64_t index);

  static CubePoint from_signs(std::span<const int> signs);

  int n() const { return n_; }
  std::uint64_t index() const { return index_; }
  // Sign of 0-based coordinate j (tau_{j+1}).
  int sign(int j) const { return coordinate_sign(index_, j); }
  std::vector<int> signs() const;

  friend bool operator==(const CubePoint&, const CubePoint&) = default;

 private:
  int n_;
  std::uint64_t index_;
};

// Complex-valued function on {-1,+1}^n stored as a dense table in index order.
class BooleanFunction {
 public:
  BooleanFunction(int n, std::vector<Complex> values);

  static BooleanFunction constant(int n, Complex c);
  static BooleanFunction character(int n, std::uint64_t subset);

  // Builds the table from fn(index) for every index in [0, 2^n).
  template <class Fn>
  static BooleanFunction tabulate(int n, Fn&& fn) {
    std::vector<Complex> values(table_size(n));
    for (std::uint64_t i = 0; i < values.size(); ++i) values[i] = fn(i);
    return BooleanFunction(n, std::move(values));
  }

  int n() const { return n_; }
  std::size_t size() const { return values_.size(); }
  std::span<const Complex> values() const { return values_; }
  const Complex& operator[](std::uint64_t index) const { return values_[index]; }
  Complex operator()(const CubePoint& p) const;

  BooleanFunction conj() const;

  // 2^n, after validating 1 <= n <= kMaxDenseLevels.
  static std::size_t table_size(int n);

 private:
  int n_;
  std::vector<Complex> values_;
};

// Coefficients f^(S) indexed by subset bitmask, plus the level weights
// w_m = sum_{|S|=m} |f^(S)|^2.
class SpectralDecomposition {
 public:
  SpectralDecomposition(int n, std::vector<Complex> coeffs);

  int n() const { return n_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  const Complex& coefficient(std::uint64_t subset) const { return coeffs_[subset]; }
  std::span<const double> level_weights() const { return level_weights_; }
  double level_weight(int m) const { return level_weights_.at(m); }
  double total_weight() const;

 private:
  int n_;
  std::vector<Complex> coeffs_;
  std::vector<double> level_weights_;
};

// Low- and high-frequency partial sums of the level weights.
struct SpectralTails {
  double low = 0.0;   // w_1 + ... + w_m
  double high = 0.0;  // w_m + ... + w_n
};

// Correlation of a rho-correlated pair; epsilon = (1 - rho) / 2 is the
// per-coordinate flip probability.
class NoiseParam {
 public:
  explicit NoiseParam(double rho);
  static NoiseParam from_epsilon(double epsilon);

  double rho() const { return rho_; }
  double epsilon() const { return (1.0 - rho_) / 2.0; }

 private:
  double rho_;
};

// In-place O(n 2^n) butterfly, normalized by 2^-n.
SpectralDecomposition wht_forward(const BooleanFunction& f);
BooleanFunction wht_inverse(const SpectralDecomposition& spec);

double norm_sq(const BooleanFunction& f);
Complex mean(const BooleanFunction& f);

// Requires 1 <= m <= n.
SpectralTails spectral_tails(const SpectralDecomposition& spec, int m);

// rho^N f: level m scaled by rho^m. rho = 0 projects onto the constants.
BooleanFunction noise_operator(const BooleanFunction& f, NoiseParam rho);

// (rho^N f, g) = sum_S rho^|S| f^(S) conj(g^(S)) = E conj(g(tau')) f(tau'').
Complex noise_correlation(const BooleanFunction& f, const BooleanFunction& g,
                          NoiseParam rho);

// ||f||^2 - ||rho^N f||^2, the mean conditional variance of f(tau'') given tau'.
double expected_conditional_variance(const BooleanFunction& f, NoiseParam rho);

// tau' uniform; tau''_k = tau'_k with probability (1+rho)/2, else flipped.
std::pair<CubePoint, CubePoint> sample_correlated_pair(int n, NoiseParam rho,
                                                       Rng& rng);

enum class Family { kSimpleWalk, kTwistedWalk, kDictator, kParity, kMajority };

Family parse_family(std::string_view name);
std::string_view family_name(Family family);

// simple-walk:  f_n = (tau_1 + ... + tau_n) / sqrt(n)
// twisted-walk: g_n = (tau_1 + tau_1 tau_2 + ... + tau_1...tau_n) / sqrt(n)
// dictator:     tau_1
// parity:       tau_1 ... tau_n
// majority:     sign(tau_1 + ... + tau_n), ties broken by tau_1
BooleanFunction builtin_family(Family family, int n);
BooleanFunction builtin_family(std::string_view name, int n);

}  // namespace noise_lab

#endif  // NOISE_LAB_BOOLEAN_CUBE_HPP_
