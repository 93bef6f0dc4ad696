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

#include "noise_lab/hyper.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "noise_lab/errors.hpp"
#include "noise_lab/parallel.hpp"
#include "noise_lab/rng.hpp"

namespace noise_lab {
namespace {

constexpr double kTieTolerance = 1e-12;
constexpr int kRefineCandidates = 8;
constexpr int kGoldenIterations = 48;
constexpr int kRefineRounds = 3;

// Points in [lo, hi] spaced by step, with hi itself always present.
std::vector<double> grid_points(double lo, double hi, double step) {
  std::vector<double> pts;
  const auto count = static_cast<std::int64_t>(std::floor((hi - lo) / step + 1e-9));
  pts.reserve(static_cast<std::size_t>(count) + 2);
  for (std::int64_t i = 0; i <= count; ++i) pts.push_back(lo + static_cast<double>(i) * step);
  if (hi - pts.back() <= 1e-12) {
    pts.back() = hi;
  } else {
    pts.push_back(hi);
  }
  return pts;
}

bool lex_less(const FourPointInput& a, const FourPointInput& b) {
  return std::tie(a.r, a.x, a.y, a.rho) < std::tie(b.r, b.x, b.y, b.rho);
}

struct Incumbent {
  double true_max = -1.0;
  double tie_value = -1.0;
  FourPointInput point;
  std::int64_t evaluations = 0;
  double origin_deviation = 0.0;

  void offer(double value, const FourPointInput& p) {
    true_max = std::max(true_max, value);
    if (value > tie_value + kTieTolerance ||
        (value >= tie_value - kTieTolerance && lex_less(p, point))) {
      tie_value = value;
      point = p;
    }
  }

  void merge(const Incumbent& other) {
    if (other.evaluations == 0) return;
    evaluations += other.evaluations;
    origin_deviation = std::max(origin_deviation, other.origin_deviation);
    const double keep = true_max;
    offer(other.tie_value, other.point);
    true_max = std::max(keep, other.true_max);
  }
};

Incumbent scan_slice(double r, const std::vector<double>& xs) {
  Incumbent inc;
  const double bound = (1.0 - r) / r;
  std::vector<double> lo(xs.size()), hi(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    lo[i] = std::pow(1.0 - xs[i], r);
    hi[i] = std::pow(1.0 + xs[i], r);
  }
  const double rhos[2] = {-bound, bound};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double same = lo[i] * lo[j] + hi[i] * hi[j];
      const double cross = lo[i] * hi[j] + hi[i] * lo[j];
      for (double rho : rhos) {
        const double value = (1.0 + rho) * same + (1.0 - rho) * cross;
        inc.offer(value, {r, rho, xs[i], xs[j]});
        ++inc.evaluations;
        if (i == 0 && j == 0) {
          inc.origin_deviation = std::max(inc.origin_deviation, std::abs(value - 4.0));
        }
      }
    }
  }
  return inc;
}

template <class Fn>
double golden_max(Fn&& fn, double a, double b, double& arg, std::int64_t& evals) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  evals += 2;
  for (int it = 0; it < kGoldenIterations; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = fn(d);
    }
    ++evals;
  }
  if (fc >= fd) {
    arg = c;
    return fc;
  }
  arg = d;
  return fd;
}

void refine(Incumbent& inc, std::vector<Incumbent> slices, double step) {
  std::stable_sort(slices.begin(), slices.end(), [](const Incumbent& a, const Incumbent& b) {
    return a.tie_value > b.tie_value;
  });
  if (slices.size() > static_cast<std::size_t>(kRefineCandidates)) {
    slices.resize(kRefineCandidates);
  }
  for (const auto& cand : slices) {
    FourPointInput p = cand.point;
    for (int round = 0; round < kRefineRounds; ++round) {
      double arg = p.x;
      double value = golden_max(
          [&](double x) { return four_point_value({p.r, p.rho, x, p.y}); },
          std::max(0.0, p.x - step), std::min(1.0, p.x + step), arg, inc.evaluations);
      if (value > four_point_value(p)) p.x = arg;
      value = golden_max(
          [&](double y) { return four_point_value({p.r, p.rho, p.x, y}); },
          std::max(0.0, p.y - step), std::min(1.0, p.y + step), arg, inc.evaluations);
      if (value > four_point_value(p)) p.y = arg;
      inc.evaluations += 2;
    }
    const double keep_tie = inc.tie_value;
    const FourPointInput keep_point = inc.point;
    const double value = four_point_value(p);
    inc.true_max = std::max(inc.true_max, value);
    if (value > keep_tie + kTieTolerance) {
      inc.tie_value = value;
      inc.point = p;
    } else {
      inc.tie_value = keep_tie;
      inc.point = keep_point;
    }
  }
}

HyperReport finish(const Incumbent& inc, double step, double tolerance) {
  HyperReport report;
  report.max_value = inc.true_max;
  report.argmax = inc.point;
  report.grid_step = step;
  report.tolerance = tolerance;
  report.evaluations = inc.evaluations;
  report.origin_deviation = inc.origin_deviation;
  report.pass = inc.true_max <= 4.0 + tolerance;
  return report;
}

void require_step(double step) {
  if (!(step > 0.0 && step <= 1.0 / 64.0)) {
    throw InvalidInput("grid step must satisfy 0 < step <= 1/64");
  }
}

}  // namespace

void FourPointInput::validate() const {
  if (!(r >= 0.5 && r <= 1.0)) throw InvalidInput("r must lie in [1/2, 1]");
  const double bound = (1.0 - r) / r;
  if (!(std::abs(rho) <= bound + 1e-15)) {
    throw InvalidInput("|rho| must not exceed (1 - r) / r");
  }
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0)) {
    throw InvalidInput("x and y must lie in [0, 1]");
  }
}

double four_point_value(const FourPointInput& in) {
  in.validate();
  const double xm = std::pow(1.0 - in.x, in.r);
  const double xp = std::pow(1.0 + in.x, in.r);
  const double ym = std::pow(1.0 - in.y, in.r);
  const double yp = std::pow(1.0 + in.y, in.r);
  return (1.0 + in.rho) * xm * ym + (1.0 - in.rho) * xm * yp +
         (1.0 - in.rho) * xp * ym + (1.0 + in.rho) * xp * yp;
}

HyperReport verify_four_point(double grid_step, double tolerance, std::size_t threads) {
  require_step(grid_step);
  const auto rs = grid_points(0.5, 1.0, grid_step);
  const auto xs = grid_points(0.0, 1.0, grid_step);
  std::vector<Incumbent> slices(rs.size());
  parallel_for(rs.size(), threads, [&](std::size_t i) { slices[i] = scan_slice(rs[i], xs); });
  Incumbent total;
  for (const auto& s : slices) total.merge(s);
  refine(total, slices, grid_step);
  return finish(total, grid_step, tolerance);
}

HyperReport verify_four_point_slice(double r, double grid_step, double tolerance) {
  require_step(grid_step);
  FourPointInput{r, 0.0, 0.0, 0.0}.validate();
  const auto xs = grid_points(0.0, 1.0, grid_step);
  Incumbent inc = scan_slice(r, xs);
  refine(inc, {inc}, grid_step);
  return finish(inc, grid_step, tolerance);
}

double p_norm(const BooleanFunction& f, double p) {
  if (!(p >= 1.0)) throw InvalidInput("p-norm needs p >= 1");
  double total = 0.0;
  for (const auto& v : f.values()) total += std::pow(std::abs(v), p);
  return std::pow(total / static_cast<double>(f.size()), 1.0 / p);
}

Complex pair_expectation(const BooleanFunction& f, const Coupling& mu,
                         const BooleanFunction& g) {
  if (f.n() != mu.n() || g.n() != mu.n()) throw InvalidInput("dimension mismatch");
  Complex total = 0.0;
  for_each_outcome(mu, [&](std::uint64_t i1, std::uint64_t i2, double p) {
    total += p * f[i1] * g[i2];
  });
  return total;
}

double hypercontractivity_ratio(const BooleanFunction& f, const BooleanFunction& g,
                                const Coupling& mu, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidInput("rho must lie in [0, 1]");
  const double denom = p_norm(f, 1.0 + rho) * p_norm(g, 1.0 + rho);
  const double numer = std::abs(pair_expectation(f, mu, g));
  if (denom == 0.0) return 0.0;
  return numer / denom;
}

IndicatorCheck indicator_inequality_check(const std::vector<bool>& s1,
                                          const std::vector<bool>& s2,
                                          const Coupling& mu, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidInput("rho must lie in [0, 1]");
  const std::size_t size = std::size_t{1} << mu.n();
  if (s1.size() != size || s2.size() != size) {
    throw InvalidInput("set masks must have 2^n entries");
  }
  IndicatorCheck out;
  for_each_outcome(mu, [&](std::uint64_t i1, std::uint64_t i2, double p) {
    if (s1[i1] && s2[i2]) out.joint += p;
  });
  const double p1 = static_cast<double>(std::count(s1.begin(), s1.end(), true)) /
                    static_cast<double>(size);
  const double p2 = static_cast<double>(std::count(s2.begin(), s2.end(), true)) /
                    static_cast<double>(size);
  out.lhs = std::pow(out.joint, 1.0 + rho);
  out.rhs = p1 * p2;
  out.ok = out.lhs <= out.rhs + 1e-12;
  return out;
}

namespace {

// levels[m][q]: E(|f|^p | first m coordinates = q).
std::vector<std::vector<double>> conditional_levels(const BooleanFunction& f, double p) {
  const int n = f.n();
  std::vector<std::vector<double>> levels(n + 1);
  levels[n].resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) levels[n][i] = std::pow(std::abs(f[i]), p);
  for (int m = n; m >= 1; --m) {
    const std::size_t width = std::size_t{1} << (m - 1);
    levels[m - 1].resize(width);
    for (std::size_t q = 0; q < width; ++q) {
      levels[m - 1][q] = 0.5 * (levels[m][q] + levels[m][q | width]);
    }
  }
  return levels;
}

struct TraceContext {
  const Coupling& mu;
  const std::vector<std::vector<double>>& mf;
  const std::vector<std::vector<double>>& mg;
  double r;
  SupermartingaleTrace& trace;
};

void trace_histories(TraceContext& ctx, int consumed, std::uint64_t q1, std::uint64_t q2) {
  if (consumed == ctx.mu.n()) return;
  const int m = consumed + 1;
  const double c = ctx.mu.correlation(m, q1, q2);
  const std::uint64_t bit = std::uint64_t{1} << consumed;
  double lhs = 0.0;
  for (int s = 1; s >= -1; s -= 2) {
    for (int t = 1; t >= -1; t -= 2) {
      const double w = (1.0 + s * t * c) / 4.0;
      if (w <= 0.0) continue;
      const double a = ctx.mf[m][q1 | (s < 0 ? bit : 0)];
      const double b = ctx.mg[m][q2 | (t < 0 ? bit : 0)];
      lhs += w * std::pow(a * b, ctx.r);
    }
  }
  const double rhs = std::pow(ctx.mf[m - 1][q1] * ctx.mg[m - 1][q2], ctx.r);
  const double slack = rhs - lhs;
  auto& step = ctx.trace.steps[consumed];
  if (step.histories == 0 || slack < step.worst_slack) {
    step.worst_slack = slack;
    step.first_prefix = q1;
    step.second_prefix = q2;
  }
  ++step.histories;
  if (lhs > rhs + 1e-12 * std::max(1.0, rhs)) ctx.trace.ok = false;
  if (1.0 + c > 0.0) {
    trace_histories(ctx, m, q1, q2);
    trace_histories(ctx, m, q1 | bit, q2 | bit);
  }
  if (1.0 - c > 0.0) {
    trace_histories(ctx, m, q1 | bit, q2);
    trace_histories(ctx, m, q1, q2 | bit);
  }
}

}  // namespace

SupermartingaleTrace supermartingale_trace(const BooleanFunction& f,
                                           const BooleanFunction& g,
                                           const Coupling& mu, double rho) {
  if (f.n() != mu.n() || g.n() != mu.n()) throw InvalidInput("dimension mismatch");
  if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidInput("rho must lie in [0, 1]");
  if (mu.n() > kMaxTraceLevels) throw ResourceError("supermartingale trace is capped at n = 10");
  detail::require_exact(mu);
  SupermartingaleTrace trace;
  trace.r = 1.0 / (1.0 + rho);
  trace.steps.resize(mu.n());
  for (int m = 0; m < mu.n(); ++m) trace.steps[m].step = m + 1;
  const auto mf = conditional_levels(f, 1.0 + rho);
  const auto mg = conditional_levels(g, 1.0 + rho);
  TraceContext ctx{mu, mf, mg, trace.r, trace};
  trace_histories(ctx, 0, 0, 0);
  for_each_outcome(mu, [&](std::uint64_t i1, std::uint64_t i2, double p) {
    trace.final_lhs += p * std::abs(f[i1]) * std::abs(g[i2]);
  });
  trace.final_rhs = p_norm(f, 1.0 + rho) * p_norm(g, 1.0 + rho);
  return trace;
}

namespace {

struct KernelEvaluator {
  int n;
  const std::vector<double>& kernel;
  const std::vector<Complex>& f;
  const std::vector<Complex>& g;

  Complex run(int consumed, std::uint64_t p1, std::uint64_t p2, double prob) const {
    if (consumed == n) return prob * f[p1] * g[p2];
    const double c = kernel[kernel_offset(consumed + 1) + history_index(p1, p2, consumed)];
    const double same = prob * (1.0 + c) / 4.0;
    const double diff = prob * (1.0 - c) / 4.0;
    const std::uint64_t bit = std::uint64_t{1} << consumed;
    Complex total = 0.0;
    if (same > 0.0) {
      total += run(consumed + 1, p1, p2, same);
      total += run(consumed + 1, p1 | bit, p2 | bit, same);
    }
    if (diff > 0.0) {
      total += run(consumed + 1, p1 | bit, p2, diff);
      total += run(consumed + 1, p1, p2 | bit, diff);
    }
    return total;
  }
};

double norm_p(const std::vector<Complex>& v, double p) {
  double total = 0.0;
  for (const auto& z : v) total += std::pow(std::abs(z), p);
  return std::pow(total / static_cast<double>(v.size()), 1.0 / p);
}

Complex random_complex(Rng& rng) {
  // Mix of heavy and light magnitudes so sparse and peaked functions appear.
  const double scale = rng.bernoulli(0.3) ? 0.0 : std::exp(4.0 * (rng.uniform() - 0.5));
  return {scale * (2.0 * rng.uniform() - 1.0), scale * (2.0 * rng.uniform() - 1.0)};
}

}  // namespace

AdversarialResult adversarial_search(const AdversarialOptions& options) {
  const int n = options.n;
  const double rho = options.rho;
  if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidInput("rho must lie in [0, 1]");
  const std::size_t ksize = kernel_size(n);
  const std::size_t fsize = BooleanFunction::table_size(n);
  AdversarialResult result;
  for (int restart = 0; restart < options.restarts; ++restart) {
    Rng rng(options.seed, stream_id(0xad7e, static_cast<std::uint64_t>(restart)));
    std::vector<double> kernel(ksize);
    for (auto& c : kernel) c = rho * (2.0 * rng.uniform() - 1.0);
    std::vector<Complex> f(fsize), g(fsize);
    for (auto& z : f) z = random_complex(rng);
    for (auto& z : g) z = random_complex(rng);
    f[0] += 1.0;
    g[0] += 1.0;

    auto ratio = [&]() {
      ++result.evaluations;
      const double denom = norm_p(f, 1.0 + rho) * norm_p(g, 1.0 + rho);
      if (denom == 0.0) return 0.0;
      return std::abs(KernelEvaluator{n, kernel, f, g}.run(0, 0, 0, 1.0)) / denom;
    };

    double best = ratio();
    for (int sweep = 0; sweep < options.sweeps; ++sweep) {
      for (std::size_t k = 0; k < ksize; ++k) {
        const double keep = kernel[k];
        double best_c = keep;
        for (double c : {-rho, rho}) {
          kernel[k] = c;
          const double v = ratio();
          if (v > best) {
            best = v;
            best_c = c;
          }
        }
        kernel[k] = best_c;
      }
      for (auto* table : {&f, &g}) {
        for (std::size_t i = 0; i < fsize; ++i) {
          const Complex keep = (*table)[i];
          (*table)[i] = keep * Complex(1.0 + 0.5 * (2.0 * rng.uniform() - 1.0),
                                       0.5 * (2.0 * rng.uniform() - 1.0)) +
                        0.1 * random_complex(rng);
          const double v = ratio();
          if (v > best) {
            best = v;
          } else {
            (*table)[i] = keep;
          }
        }
      }
    }
    if (best > result.best_ratio) {
      result.best_ratio = best;
      result.best_restart = restart;
      result.best_kernel = kernel;
    }
  }
  return result;
}

}  // namespace noise_lab
