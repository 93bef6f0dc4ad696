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

#ifndef NOISE_LAB_COUPLING_HPP_
#define NOISE_LAB_COUPLING_HPP_

// Couplings of two uniform points of {-1,+1}^n that are built one coordinate
// at a time. Given the joint history h of the first m-1 coordinate pairs, the
// next pair (s, t) has law
//
//   P(s, t | h) = (1 + s t c_m(h)) / 4,
//
// so each of s and t is a fair sign given the joint past, and the whole law
// is described by the conditional correlations c_m(h) in [-1, 1].
//
// History encoding: after m-1 steps the two prefixes have indices p1, p2 (cube
// bit convention) and the history index is p1 | (p2 << (m-1)). An explicit
// kernel is one flat array ordered by (m, history index); step m starts at
// offset (4^{m-1} - 1) / 3.

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "noise_lab/boolean_cube.hpp"
#include "noise_lab/errors.hpp"
#include "noise_lab/rng.hpp"
#include "noise_lab/stats.hpp"
#include "noise_lab/tree_automorphism.hpp"

namespace noise_lab {

// Largest n for exact 4^n enumeration.
inline constexpr int kMaxExactLevels = 12;

std::size_t kernel_offset(int m);
std::size_t kernel_size(int n);
constexpr std::uint64_t history_index(std::uint64_t p1, std::uint64_t p2, int consumed) {
  return p1 | (p2 << consumed);
}

// Correlation strategy for a procedural custom coupling. A cursor sees the
// pairs drawn so far and names the correlation of the next step.
class KernelCursor {
 public:
  virtual ~KernelCursor() = default;
  virtual double correlation() = 0;
  virtual void advance(int s, int t) = 0;
};

class KernelStrategy {
 public:
  virtual ~KernelStrategy() = default;
  virtual std::unique_ptr<KernelCursor> start() const = 0;
  virtual std::string name() const = 0;
};

enum class CouplingKind { kProduct, kCorrelated, kTreeTwisted, kCustom };

std::string_view coupling_kind_name(CouplingKind kind);
CouplingKind parse_coupling_kind(std::string_view name);

class Coupling {
 public:
  class Cursor;

  static Coupling product(int n);
  static Coupling correlated(int n, double rho);
  // c_m(h) = a(tau'_{1..m-1}) a(tau''_{1..m-1}) rho; the law of (A^{-1} x,
  // A^{-1} y) for a rho-correlated pair (x, y).
  static Coupling tree_twisted(double rho, TreeAutomorphism labels);
  static Coupling tree_twisted(int n, double rho,
                               std::shared_ptr<const PrefixLabels> labels);
  static Coupling custom(int n, std::vector<double> kernel);
  static Coupling custom(int n, std::shared_ptr<const KernelStrategy> strategy);

  int n() const { return n_; }
  CouplingKind kind() const { return kind_; }
  double rho() const { return rho_; }

  // True when c_m(h) can be read for any history (all kinds except
  // procedural tree twists and procedural custom strategies).
  bool is_explicit() const;
  bool is_procedural_custom() const { return strategy_ != nullptr; }

  // c_m for the history (p1, p2) of the first m-1 steps. Explicit only.
  double correlation(int m, std::uint64_t p1, std::uint64_t p2) const;

  const std::optional<TreeAutomorphism>& automorphism() const { return dense_labels_; }
  std::span<const double> kernel() const { return kernel_; }
  std::string describe() const;

  Cursor cursor() const;

 private:
  Coupling(int n, CouplingKind kind, double rho) : n_(n), kind_(kind), rho_(rho) {}

  int n_;
  CouplingKind kind_;
  double rho_;
  std::optional<TreeAutomorphism> dense_labels_;
  std::shared_ptr<const PrefixLabels> labels_;
  std::vector<double> kernel_;
  std::shared_ptr<const KernelStrategy> strategy_;
};

// Step-by-step view of a coupling used for sampling.
class Coupling::Cursor {
 public:
  explicit Cursor(const Coupling& c);

  int step() const { return consumed_; }
  double correlation();
  void advance(int s, int t);
  // Draws the next pair (s, t) and advances.
  std::pair<int, int> draw(Rng& rng);

 private:
  const Coupling* c_;
  int consumed_ = 0;
  std::uint64_t p1_ = 0;
  std::uint64_t p2_ = 0;
  std::uint64_t node1_ = 0;
  std::uint64_t node2_ = 0;
  std::unique_ptr<KernelCursor> custom_;
};

// Joint law on {-1,+1}^n x {-1,+1}^n, probs[i1 * 2^n + i2].
class JointTable {
 public:
  JointTable(int n, std::vector<double> probs);

  int n() const { return n_; }
  std::span<const double> probs() const { return probs_; }
  double operator()(std::uint64_t i1, std::uint64_t i2) const {
    return probs_[(i1 << n_) | i2];
  }

 private:
  int n_;
  std::vector<double> probs_;
};

struct ImmersionVerdict {
  bool ok = true;
  // First violating step and history when !ok.
  int step = 0;
  std::uint64_t first_prefix = 0;
  std::uint64_t second_prefix = 0;
  double deviation = 0.0;
};

inline constexpr double kImmersionTolerance = 1e-10;

ImmersionVerdict validate_immersion(const JointTable& t,
                                    double tolerance = kImmersionTolerance);

JointTable to_table(const Coupling& c);
// Throws InvalidInput when the table violates the fair-marginal condition.
// Histories of probability zero get c = 0.
Coupling from_table(const JointTable& t);

// Max |c_m(h)| over steps and reachable histories.
double rho_max(const Coupling& c);

struct CouplingSpec {
  int n = 1;
  CouplingKind kind = CouplingKind::kProduct;
  double rho = 0.0;
  std::optional<TreeAutomorphism> labels;
  std::vector<double> kernel;
};

Coupling make_coupling(const CouplingSpec& spec);

// Calls visit(i1, i2, probability) for every outcome of positive probability.
// Explicit couplings with n <= kMaxExactLevels only.
template <class Visitor>
void for_each_outcome(const Coupling& c, Visitor&& visit);

// <f|mu|g> = E conj(f(tau')) g(tau'').
Complex bilinear_form(const BooleanFunction& f, const Coupling& mu,
                      const BooleanFunction& g);
Complex bilinear_form(const BooleanFunction& f, const JointTable& mu,
                      const BooleanFunction& g);

struct ComplexEstimate {
  MeanEstimate re;
  MeanEstimate im;
  Complex mean() const { return {re.mean, im.mean}; }
};

// Monte Carlo <f|mu|g> over `samples` draws; draws are split into fixed
// batches with their own streams, so the result is independent of `threads`.
ComplexEstimate bilinear_form_sampled(const BooleanFunction& f, const Coupling& mu,
                                      const BooleanFunction& g, std::int64_t samples,
                                      std::uint64_t seed, std::size_t threads = 1);

// ||f||^2 - Re <f|mu|f>.
double cosiness_gap(const BooleanFunction& f, const Coupling& mu);

std::pair<CubePoint, CubePoint> sample_pair(const Coupling& mu, Rng& rng);

// Signs of both points for couplings too deep for a 64-bit index.
void sample_signs(const Coupling& mu, Rng& rng, std::span<int> first,
                  std::span<int> second);

// ---------------------------------------------------------------------------

namespace detail {

void require_exact(const Coupling& c);

template <class Visitor>
void visit_outcomes(const Coupling& c, int consumed, std::uint64_t p1,
                    std::uint64_t p2, double prob, Visitor& visit) {
  if (consumed == c.n()) {
    visit(p1, p2, prob);
    return;
  }
  const double corr = c.correlation(consumed + 1, p1, p2);
  const double same = prob * (1.0 + corr) / 4.0;
  const double diff = prob * (1.0 - corr) / 4.0;
  const std::uint64_t bit = std::uint64_t{1} << consumed;
  if (same > 0.0) {
    visit_outcomes(c, consumed + 1, p1, p2, same, visit);
    visit_outcomes(c, consumed + 1, p1 | bit, p2 | bit, same, visit);
  }
  if (diff > 0.0) {
    visit_outcomes(c, consumed + 1, p1, p2 | bit, diff, visit);
    visit_outcomes(c, consumed + 1, p1 | bit, p2, diff, visit);
  }
}

}  // namespace detail

template <class Visitor>
void for_each_outcome(const Coupling& c, Visitor&& visit) {
  detail::require_exact(c);
  detail::visit_outcomes(c, 0, 0, 0, 1.0, visit);
}

}  // namespace noise_lab

#endif  // NOISE_LAB_COUPLING_HPP_
