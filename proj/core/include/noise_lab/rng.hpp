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

#ifndef NOISE_LAB_RNG_HPP_
#define NOISE_LAB_RNG_HPP_

#include <cstdint>
#include <random>

namespace noise_lab {

// Seeded 64-bit generator. Every Monte Carlo task owns one, derived from the
// run seed and a task-specific stream id, so results do not depend on the
// order in which tasks execute.
//
// The engine (mt19937_64) and the seeding algorithm (std::seed_seq) are fully
// specified by the standard, and uniform() is computed by hand rather than
// through a std:: distribution, so streams are bit-identical across platforms.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Fair random sign, +1 or -1.
  int sign() { return (engine_() >> 63) != 0 ? -1 : 1; }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive stream ids and hashed tree labels.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream id for task `index` of a named batch.
constexpr std::uint64_t stream_id(std::uint64_t batch, std::uint64_t index) {
  return mix64(mix64(batch) ^ index);
}

}  // namespace noise_lab

#endif  // NOISE_LAB_RNG_HPP_
