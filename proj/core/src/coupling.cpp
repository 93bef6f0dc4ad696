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

#include "noise_lab/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "noise_lab/parallel.hpp"

namespace noise_lab {
namespace {

void require_rho(double rho) {
  if (!(rho >= -1.0 && rho <= 1.0)) {
    throw InvalidInput("coupling correlation must lie in [-1, 1]");
  }
}

void require_levels(int n) {
  if (n < 1) throw InvalidInput("coupling needs n >= 1");
}

void require_same_n(int a, int b) {
  if (a != b) {
    throw InvalidInput("dimension mismatch: n=" + std::to_string(a) +
                       " vs n=" + std::to_string(b));
  }
}

constexpr double kTableSumTolerance = 1e-12;

}  // namespace

std::size_t kernel_offset(int m) {
  return ((std::size_t{1} << (2 * (m - 1))) - 1) / 3;
}

std::size_t kernel_size(int n) {
  if (n < 1 || n > kMaxExactLevels) {
    throw ResourceError("explicit kernels need 1 <= n <= 12");
  }
  return kernel_offset(n + 1);
}

std::string_view coupling_kind_name(CouplingKind kind) {
  switch (kind) {
    case CouplingKind::kProduct: return "product";
    case CouplingKind::kCorrelated: return "correlated";
    case CouplingKind::kTreeTwisted: return "tree_twisted";
    case CouplingKind::kCustom: return "custom";
  }
  return "unknown";
}

CouplingKind parse_coupling_kind(std::string_view name) {
  if (name == "product") return CouplingKind::kProduct;
  if (name == "correlated") return CouplingKind::kCorrelated;
  if (name == "tree_twisted") return CouplingKind::kTreeTwisted;
  if (name == "custom") return CouplingKind::kCustom;
  throw InvalidInput("unknown coupling kind: " + std::string(name));
}

Coupling Coupling::product(int n) {
  require_levels(n);
  return Coupling(n, CouplingKind::kProduct, 0.0);
}

Coupling Coupling::correlated(int n, double rho) {
  require_levels(n);
  require_rho(rho);
  return Coupling(n, CouplingKind::kCorrelated, rho);
}

Coupling Coupling::tree_twisted(double rho, TreeAutomorphism labels) {
  require_rho(rho);
  Coupling c(labels.n(), CouplingKind::kTreeTwisted, rho);
  c.dense_labels_ = std::move(labels);
  return c;
}

Coupling Coupling::tree_twisted(int n, double rho,
                                std::shared_ptr<const PrefixLabels> labels) {
  require_levels(n);
  require_rho(rho);
  if (!labels) throw InvalidInput("tree twist needs a label source");
  Coupling c(n, CouplingKind::kTreeTwisted, rho);
  c.labels_ = std::move(labels);
  return c;
}

Coupling Coupling::custom(int n, std::vector<double> kernel) {
  if (kernel.size() != kernel_size(n)) {
    throw InvalidInput("custom kernel must have (4^n - 1) / 3 entries");
  }
  double bound = 0.0;
  for (double c : kernel) {
    if (!(c >= -1.0 && c <= 1.0)) {
      throw InvalidInput("kernel correlations must lie in [-1, 1]");
    }
    bound = std::max(bound, std::abs(c));
  }
  Coupling out(n, CouplingKind::kCustom, bound);
  out.kernel_ = std::move(kernel);
  return out;
}

Coupling Coupling::custom(int n, std::shared_ptr<const KernelStrategy> strategy) {
  require_levels(n);
  if (!strategy) throw InvalidInput("custom coupling needs a strategy");
  Coupling out(n, CouplingKind::kCustom, 0.0);
  out.strategy_ = std::move(strategy);
  return out;
}

bool Coupling::is_explicit() const {
  switch (kind_) {
    case CouplingKind::kProduct:
    case CouplingKind::kCorrelated:
      return true;
    case CouplingKind::kTreeTwisted:
      return dense_labels_.has_value();
    case CouplingKind::kCustom:
      return strategy_ == nullptr;
  }
  return false;
}

double Coupling::correlation(int m, std::uint64_t p1, std::uint64_t p2) const {
  switch (kind_) {
    case CouplingKind::kProduct:
      return 0.0;
    case CouplingKind::kCorrelated:
      return rho_;
    case CouplingKind::kTreeTwisted:
      if (!dense_labels_) break;
      return dense_labels_->label(m, p1) * dense_labels_->label(m, p2) * rho_;
    case CouplingKind::kCustom:
      if (strategy_) break;
      return kernel_[kernel_offset(m) + history_index(p1, p2, m - 1)];
  }
  throw UnsupportedRepresentation("correlation lookup needs an explicit coupling");
}

std::string Coupling::describe() const {
  std::ostringstream out;
  out << coupling_kind_name(kind_);
  switch (kind_) {
    case CouplingKind::kCorrelated:
    case CouplingKind::kTreeTwisted:
      out << "(" << rho_ << ")";
      break;
    case CouplingKind::kCustom:
      if (strategy_) out << ":" << strategy_->name();
      break;
    default:
      break;
  }
  return out.str();
}

Coupling::Cursor Coupling::cursor() const { return Cursor(*this); }

Coupling::Cursor::Cursor(const Coupling& c) : c_(&c) {
  if (c.labels_) {
    node1_ = c.labels_->root();
    node2_ = node1_;
  }
  if (c.strategy_) custom_ = c.strategy_->start();
}

double Coupling::Cursor::correlation() {
  if (consumed_ >= c_->n_) throw InvalidInput("coupling has no further steps");
  if (c_->labels_) {
    return c_->labels_->label(node1_) * c_->labels_->label(node2_) * c_->rho_;
  }
  if (custom_) return custom_->correlation();
  return c_->correlation(consumed_ + 1, p1_, p2_);
}

void Coupling::Cursor::advance(int s, int t) {
  if (c_->labels_) {
    node1_ = c_->labels_->child(node1_, s);
    node2_ = c_->labels_->child(node2_, t);
  } else if (custom_) {
    custom_->advance(s, t);
  } else if (consumed_ < 64) {
    p1_ |= sign_bit(s) << consumed_;
    p2_ |= sign_bit(t) << consumed_;
  }
  ++consumed_;
}

std::pair<int, int> Coupling::Cursor::draw(Rng& rng) {
  const double c = correlation();
  const int s = rng.sign();
  const int t = rng.bernoulli((1.0 + c) / 2.0) ? s : -s;
  advance(s, t);
  return {s, t};
}

JointTable::JointTable(int n, std::vector<double> probs) : n_(n), probs_(std::move(probs)) {
  if (n < 1 || n > kMaxExactLevels) throw ResourceError("joint tables need 1 <= n <= 12");
  if (probs_.size() != (std::size_t{1} << (2 * n))) {
    throw InvalidInput("joint table must have 4^n entries");
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw InvalidInput("joint table entries must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > kTableSumTolerance) {
    throw InvalidInput("joint table must sum to 1");
  }
}

namespace {

// Aggregates a level-m table (prefix pairs of length m, index q1 * 2^m + q2)
// to level m-1 and reports the step-m conditional moments per history.
struct StepMoments {
  double prob = 0.0;
  double first = 0.0;   // E(tau'_m 1_h)
  double second = 0.0;  // E(tau''_m 1_h)
  double cross = 0.0;   // E(tau'_m tau''_m 1_h)
};

template <class OnHistory>
std::vector<double> collapse_level(const std::vector<double>& level, int m,
                                   OnHistory&& on_history) {
  const std::uint64_t width = std::uint64_t{1} << (m - 1);
  const std::uint64_t bit = width;
  std::vector<double> out(width * width);
  for (std::uint64_t q1 = 0; q1 < width; ++q1) {
    for (std::uint64_t q2 = 0; q2 < width; ++q2) {
      StepMoments mo;
      for (int b1 = 0; b1 < 2; ++b1) {
        for (int b2 = 0; b2 < 2; ++b2) {
          const std::uint64_t i1 = q1 | (b1 ? bit : 0);
          const std::uint64_t i2 = q2 | (b2 ? bit : 0);
          const double p = level[(i1 << m) | i2];
          const int s = b1 ? -1 : 1;
          const int t = b2 ? -1 : 1;
          mo.prob += p;
          mo.first += s * p;
          mo.second += t * p;
          mo.cross += s * t * p;
        }
      }
      out[(q1 << (m - 1)) | q2] = mo.prob;
      on_history(m, q1, q2, mo);
    }
  }
  return out;
}

template <class OnHistory>
void scan_levels(const JointTable& t, OnHistory&& on_history) {
  std::vector<double> level(t.probs().begin(), t.probs().end());
  for (int m = t.n(); m >= 1; --m) level = collapse_level(level, m, on_history);
}

}  // namespace

ImmersionVerdict validate_immersion(const JointTable& t, double tolerance) {
  ImmersionVerdict verdict;
  scan_levels(t, [&](int m, std::uint64_t q1, std::uint64_t q2, const StepMoments& mo) {
    if (mo.prob <= 0.0) return;
    const double dev =
        std::max(std::abs(mo.first), std::abs(mo.second)) / mo.prob;
    if (dev <= tolerance) return;
    const bool earlier =
        verdict.ok || m < verdict.step ||
        (m == verdict.step &&
         history_index(q1, q2, m - 1) <
             history_index(verdict.first_prefix, verdict.second_prefix, m - 1));
    if (earlier) verdict = {false, m, q1, q2, dev};
  });
  return verdict;
}

JointTable to_table(const Coupling& c) {
  detail::require_exact(c);
  std::vector<double> probs(std::size_t{1} << (2 * c.n()), 0.0);
  for_each_outcome(c, [&](std::uint64_t i1, std::uint64_t i2, double p) {
    probs[(i1 << c.n()) | i2] += p;
  });
  return JointTable(c.n(), std::move(probs));
}

Coupling from_table(const JointTable& t) {
  const auto verdict = validate_immersion(t);
  if (!verdict.ok) {
    throw InvalidInput("joint table violates the fair-marginal condition at step " +
                       std::to_string(verdict.step));
  }
  std::vector<double> kernel(kernel_size(t.n()), 0.0);
  scan_levels(t, [&](int m, std::uint64_t q1, std::uint64_t q2, const StepMoments& mo) {
    if (mo.prob <= 0.0) return;
    kernel[kernel_offset(m) + history_index(q1, q2, m - 1)] =
        std::clamp(mo.cross / mo.prob, -1.0, 1.0);
  });
  return Coupling::custom(t.n(), std::move(kernel));
}

namespace {

void reachable_max(const Coupling& c, int consumed, std::uint64_t p1,
                   std::uint64_t p2, double& best) {
  if (consumed == c.n()) return;
  const double corr = c.correlation(consumed + 1, p1, p2);
  best = std::max(best, std::abs(corr));
  const std::uint64_t bit = std::uint64_t{1} << consumed;
  if (1.0 + corr > 0.0) {
    reachable_max(c, consumed + 1, p1, p2, best);
    reachable_max(c, consumed + 1, p1 | bit, p2 | bit, best);
  }
  if (1.0 - corr > 0.0) {
    reachable_max(c, consumed + 1, p1, p2 | bit, best);
    reachable_max(c, consumed + 1, p1 | bit, p2, best);
  }
}

}  // namespace

double rho_max(const Coupling& c) {
  switch (c.kind()) {
    case CouplingKind::kProduct:
      return 0.0;
    case CouplingKind::kCorrelated:
    case CouplingKind::kTreeTwisted:
      // |a a rho| = |rho| on every history.
      return std::abs(c.rho());
    case CouplingKind::kCustom:
      break;
  }
  if (!c.is_explicit()) {
    throw UnsupportedRepresentation("rho_max needs an explicit coupling");
  }
  double best = 0.0;
  reachable_max(c, 0, 0, 0, best);
  return best;
}

Coupling make_coupling(const CouplingSpec& spec) {
  switch (spec.kind) {
    case CouplingKind::kProduct:
      return Coupling::product(spec.n);
    case CouplingKind::kCorrelated:
      return Coupling::correlated(spec.n, spec.rho);
    case CouplingKind::kTreeTwisted:
      if (!spec.labels) throw InvalidInput("tree_twisted coupling needs labels");
      require_same_n(spec.n, spec.labels->n());
      return Coupling::tree_twisted(spec.rho, *spec.labels);
    case CouplingKind::kCustom:
      return Coupling::custom(spec.n, spec.kernel);
  }
  throw InvalidInput("unknown coupling kind");
}

namespace detail {

void require_exact(const Coupling& c) {
  if (!c.is_explicit()) {
    throw UnsupportedRepresentation("exact enumeration needs an explicit coupling");
  }
  if (c.n() > kMaxExactLevels) {
    throw ResourceError("exact enumeration is capped at n = 12");
  }
}

}  // namespace detail

Complex bilinear_form(const BooleanFunction& f, const Coupling& mu,
                      const BooleanFunction& g) {
  require_same_n(f.n(), mu.n());
  require_same_n(g.n(), mu.n());
  Complex total = 0.0;
  for_each_outcome(mu, [&](std::uint64_t i1, std::uint64_t i2, double p) {
    total += p * std::conj(f[i1]) * g[i2];
  });
  return total;
}

Complex bilinear_form(const BooleanFunction& f, const JointTable& mu,
                      const BooleanFunction& g) {
  require_same_n(f.n(), mu.n());
  require_same_n(g.n(), mu.n());
  Complex total = 0.0;
  const std::uint64_t size = std::uint64_t{1} << mu.n();
  for (std::uint64_t i1 = 0; i1 < size; ++i1) {
    const Complex fc = std::conj(f[i1]);
    for (std::uint64_t i2 = 0; i2 < size; ++i2) {
      const double p = mu(i1, i2);
      if (p != 0.0) total += p * fc * g[i2];
    }
  }
  return total;
}

ComplexEstimate bilinear_form_sampled(const BooleanFunction& f, const Coupling& mu,
                                      const BooleanFunction& g, std::int64_t samples,
                                      std::uint64_t seed, std::size_t threads) {
  require_same_n(f.n(), mu.n());
  require_same_n(g.n(), mu.n());
  if (samples < 1) throw InvalidInput("sample count must be positive");
  constexpr std::int64_t kBatch = 4096;
  const std::size_t batches = static_cast<std::size_t>((samples + kBatch - 1) / kBatch);
  std::vector<RunningStats> re(batches), im(batches);
  parallel_for(batches, threads, [&](std::size_t b) {
    Rng rng(seed, stream_id(0xb11ea7, b));
    const std::int64_t count =
        std::min<std::int64_t>(kBatch, samples - static_cast<std::int64_t>(b) * kBatch);
    for (std::int64_t k = 0; k < count; ++k) {
      const auto [x, y] = sample_pair(mu, rng);
      const Complex v = std::conj(f[x.index()]) * g[y.index()];
      re[b].add(v.real());
      im[b].add(v.imag());
    }
  });
  RunningStats re_all, im_all;
  for (std::size_t b = 0; b < batches; ++b) {
    re_all.merge(re[b]);
    im_all.merge(im[b]);
  }
  return {re_all.estimate(), im_all.estimate()};
}

double cosiness_gap(const BooleanFunction& f, const Coupling& mu) {
  return norm_sq(f) - bilinear_form(f, mu, f).real();
}

std::pair<CubePoint, CubePoint> sample_pair(const Coupling& mu, Rng& rng) {
  if (mu.n() > kMaxPointLevels) {
    throw InvalidInput("sample_pair needs n <= 63; use sample_signs");
  }
  auto cursor = mu.cursor();
  std::uint64_t i1 = 0;
  std::uint64_t i2 = 0;
  for (int m = 0; m < mu.n(); ++m) {
    const auto [s, t] = cursor.draw(rng);
    i1 |= sign_bit(s) << m;
    i2 |= sign_bit(t) << m;
  }
  return {CubePoint(mu.n(), i1), CubePoint(mu.n(), i2)};
}

void sample_signs(const Coupling& mu, Rng& rng, std::span<int> first,
                  std::span<int> second) {
  if (first.size() != static_cast<std::size_t>(mu.n()) ||
      second.size() != static_cast<std::size_t>(mu.n())) {
    throw InvalidInput("sign buffers must have length n");
  }
  auto cursor = mu.cursor();
  for (int m = 0; m < mu.n(); ++m) {
    const auto [s, t] = cursor.draw(rng);
    first[m] = s;
    second[m] = t;
  }
}

}  // namespace noise_lab
