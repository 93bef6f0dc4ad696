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

#ifndef NOISE_LAB_STATS_HPP_
#define NOISE_LAB_STATS_HPP_

#include <cmath>
#include <cstdint>

namespace noise_lab {

// Two-sided 95% normal quantile used for every reported confidence interval.
inline constexpr double kZ95 = 1.96;

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t count = 0;

  double ci_half_width(double z = kZ95) const { return z * std_error; }
  double lower(double z = kZ95) const { return mean - ci_half_width(z); }
  double upper(double z = kZ95) const { return mean + ci_half_width(z); }
};

// Welford accumulator. merge() combines partial results (Chan et al.), so
// batches can be reduced in a fixed order regardless of which thread ran them.
class RunningStats {
 public:
  void add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  void merge(const RunningStats& other) {
    if (other.count_ == 0) return;
    if (count_ == 0) {
      *this = other;
      return;
    }
    const double total = static_cast<double>(count_ + other.count_);
    const double delta = other.mean_ - mean_;
    mean_ += delta * static_cast<double>(other.count_) / total;
    m2_ += other.m2_ + delta * delta * static_cast<double>(count_) *
                           static_cast<double>(other.count_) / total;
    count_ += other.count_;
  }

  std::int64_t count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const {
    return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
  }
  double std_error() const {
    return count_ > 1 ? std::sqrt(variance() / static_cast<double>(count_))
                      : 0.0;
  }
  MeanEstimate estimate() const { return {mean_, std_error(), count_}; }

 private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace noise_lab

#endif  // NOISE_LAB_STATS_HPP_
