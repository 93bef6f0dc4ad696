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

#ifndef NOISE_LAB_TREE_AUTOMORPHISM_HPP_
#define NOISE_LAB_TREE_AUTOMORPHISM_HPP_

// Automorphisms of the n-level binary tree, viewed as prefix-respecting maps
//
//   A(tau_1, ..., tau_n) = (a() tau_1, a(tau_1) tau_2, ..., a(tau_1..tau_{n-1}) tau_n)
//
// with one sign a(sigma) per internal node sigma. Node sigma of depth m-1 (it
// labels coordinate m) lives at offset (2^{m-1} - 1) + index(sigma), where
// index(sigma) uses the cube's bit convention.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "noise_lab/boolean_cube.hpp"
#include "noise_lab/rng.hpp"

namespace noise_lab {

inline constexpr int kMaxAutomorphismLevels = 25;

class TreeAutomorphism {
 public:
  TreeAutomorphism(int n, std::vector<std::int8_t> labels);

  static TreeAutomorphism identity(int n);
  // (tau_1, ..., tau_n) -> (tau_1, tau_1 tau_2, ..., tau_1 ... tau_n).
  static TreeAutomorphism cumulative_product(int n);

  int n() const { return n_; }
  std::span<const std::int8_t> labels() const { return labels_; }

  // Label of the node reached after consuming the first m-1 coordinates,
  // encoded as `prefix` (m in [1, n], prefix < 2^{m-1}).
  int label(int m, std::uint64_t prefix) const {
    return labels_[node_offset(m, prefix)];
  }
  static std::size_t node_offset(int m, std::uint64_t prefix) {
    return ((std::size_t{1} << (m - 1)) - 1) + prefix;
  }

  // Image of the first `length` coordinates of `index` (prefix-respecting).
  std::uint64_t apply_prefix(std::uint64_t index, int length) const;
  std::uint64_t apply_index(std::uint64_t index) const {
    return apply_prefix(index, n_);
  }

  friend bool operator==(const TreeAutomorphism&, const TreeAutomorphism&) = default;

 private:
  int n_;
  std::vector<std::int8_t> labels_;
};

CubePoint apply(const TreeAutomorphism& a, const CubePoint& p);

// apply(compose(a, b), p) == apply(a, apply(b, p)).
TreeAutomorphism compose(const TreeAutomorphism& a, const TreeAutomorphism& b);
TreeAutomorphism invert(const TreeAutomorphism& a);

// f o A: the value at p is f(A(p)).
BooleanFunction pushforward(const TreeAutomorphism& a, const BooleanFunction& f);

// Labels i.i.d. fair signs, i.e. uniform over the 2^{2^n - 1} automorphisms.
TreeAutomorphism random_automorphism(int n, Rng& rng);

// Label source walked one coordinate at a time. Nodes are opaque 64-bit
// handles; this lets sampling paths use automorphisms of trees far deeper than
// any dense label table.
class PrefixLabels {
 public:
  virtual ~PrefixLabels() = default;
  virtual std::uint64_t root() const = 0;
  virtual int label(std::uint64_t node) const = 0;
  virtual std::uint64_t child(std::uint64_t node, int sign) const = 0;
};

// Adapter over a dense table.
class DenseLabels final : public PrefixLabels {
 public:
  explicit DenseLabels(TreeAutomorphism a) : a_(std::move(a)) {}

  const TreeAutomorphism& automorphism() const { return a_; }

  std::uint64_t root() const override { return 0; }
  int label(std::uint64_t node) const override;
  std::uint64_t child(std::uint64_t node, int sign) const override;

 private:
  TreeAutomorphism a_;
};

// Pseudo-random labels: a node is a SplitMix hash of its path from the root,
// and its label is one bit of a further hash. Behaves like a uniformly random
// automorphism of an unbounded tree (up to 64-bit hash collisions).
class HashedLabels final : public PrefixLabels {
 public:
  explicit HashedLabels(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t root() const override { return mix64(seed_); }
  int label(std::uint64_t node) const override {
    return (mix64(node ^ 0x6a09e667f3bcc909ULL) >> 63) != 0 ? -1 : 1;
  }
  std::uint64_t child(std::uint64_t node, int sign) const override {
    return mix64(node ^ (sign < 0 ? 0xbb67ae8584caa73bULL : 0x3c6ef372fe94f82bULL));
  }

 private:
  std::uint64_t seed_;
};

// Applies a label source to a sign sequence of any length.
std::vector<int> apply_signs(const PrefixLabels& labels, std::span<const int> signs);

}  // namespace noise_lab

#endif  // NOISE_LAB_TREE_AUTOMORPHISM_HPP_
