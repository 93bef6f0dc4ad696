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

#include "noise_lab/tree_automorphism.hpp"

#include <bit>
#include <string>

#include "noise_lab/errors.hpp"

namespace noise_lab {
namespace {

std::size_t label_count(int n) {
  if (n < 1 || n > kMaxAutomorphismLevels) {
    throw InvalidInput("dense automorphism needs 1 <= n <= 25, got n=" +
                       std::to_string(n));
  }
  return (std::size_t{1} << n) - 1;
}

void require_same_n(int a, int b) {
  if (a != b) {
    throw InvalidInput("dimension mismatch: n=" + std::to_string(a) +
                       " vs n=" + std::to_string(b));
  }
}

}  // namespace

TreeAutomorphism::TreeAutomorphism(int n, std::vector<std::int8_t> labels)
    : n_(n), labels_(std::move(labels)) {
  if (labels_.size() != label_count(n)) {
    throw InvalidInput("automorphism label array must have 2^n - 1 entries");
  }
  for (auto l : labels_) {
    if (l != 1 && l != -1) throw InvalidInput("automorphism labels must be +1 or -1");
  }
}

TreeAutomorphism TreeAutomorphism::identity(int n) {
  return TreeAutomorphism(n, std::vector<std::int8_t>(label_count(n), 1));
}

TreeAutomorphism TreeAutomorphism::cumulative_product(int n) {
  std::vector<std::int8_t> labels(label_count(n));
  for (int m = 1; m <= n; ++m) {
    for (std::uint64_t p = 0; p < (std::uint64_t{1} << (m - 1)); ++p) {
      labels[node_offset(m, p)] = (std::popcount(p) & 1) != 0 ? -1 : 1;
    }
  }
  return TreeAutomorphism(n, std::move(labels));
}

std::uint64_t TreeAutomorphism::apply_prefix(std::uint64_t index, int length) const {
  std::uint64_t out = 0;
  for (int m = 1; m <= length; ++m) {
    const std::uint64_t prefix = index & ((std::uint64_t{1} << (m - 1)) - 1);
    std::uint64_t bit = (index >> (m - 1)) & 1U;
    if (label(m, prefix) < 0) bit ^= 1U;
    out |= bit << (m - 1);
  }
  return out;
}

CubePoint apply(const TreeAutomorphism& a, const CubePoint& p) {
  require_same_n(a.n(), p.n());
  return CubePoint(p.n(), a.apply_index(p.index()));
}

TreeAutomorphism compose(const TreeAutomorphism& a, const TreeAutomorphism& b) {
  require_same_n(a.n(), b.n());
  // (A o B) at node sigma: b(sigma) * a(B(sigma)).
  std::vector<std::int8_t> labels(a.labels().size());
  for (int m = 1; m <= a.n(); ++m) {
    for (std::uint64_t p = 0; p < (std::uint64_t{1} << (m - 1)); ++p) {
      const std::uint64_t image = b.apply_prefix(p, m - 1);
      labels[TreeAutomorphism::node_offset(m, p)] =
          static_cast<std::int8_t>(b.label(m, p) * a.label(m, image));
    }
  }
  return TreeAutomorphism(a.n(), std::move(labels));
}

TreeAutomorphism invert(const TreeAutomorphism& a) {
  // Inverse label at node eta is a(A^{-1}(eta)); preimages are built one
  // level at a time.
  std::vector<std::int8_t> labels(a.labels().size());
  std::vector<std::uint64_t> preimage{0};
  for (int m = 1; m <= a.n(); ++m) {
    const std::uint64_t count = std::uint64_t{1} << (m - 1);
    std::vector<std::uint64_t> next(count << 1);
    for (std::uint64_t eta = 0; eta < count; ++eta) {
      const std::uint64_t x = preimage[eta];
      const int l = a.label(m, x);
      labels[TreeAutomorphism::node_offset(m, eta)] = static_cast<std::int8_t>(l);
      for (std::uint64_t bit = 0; bit < 2; ++bit) {
        const std::uint64_t xbit = l < 0 ? bit ^ 1U : bit;
        next[eta | (bit << (m - 1))] = x | (xbit << (m - 1));
      }
    }
    preimage = std::move(next);
  }
  return TreeAutomorphism(a.n(), std::move(labels));
}

BooleanFunction pushforward(const TreeAutomorphism& a, const BooleanFunction& f) {
  require_same_n(a.n(), f.n());
  return BooleanFunction::tabulate(
      f.n(), [&](std::uint64_t i) { return f[a.apply_index(i)]; });
}

TreeAutomorphism random_automorphism(int n, Rng& rng) {
  std::vector<std::int8_t> labels(label_count(n));
  for (auto& l : labels) l = static_cast<std::int8_t>(rng.sign());
  return TreeAutomorphism(n, std::move(labels));
}

int DenseLabels::label(std::uint64_t node) const {
  const int depth = static_cast<int>(node >> 32);
  if (depth >= a_.n()) throw InvalidInput("path is longer than the automorphism depth");
  return a_.label(depth + 1, node & 0xffffffffULL);
}

std::uint64_t DenseLabels::child(std::uint64_t node, int sign) const {
  const std::uint64_t depth = node >> 32;
  const std::uint64_t prefix = (node & 0xffffffffULL) | (sign_bit(sign) << depth);
  return ((depth + 1) << 32) | prefix;
}

std::vector<int> apply_signs(const PrefixLabels& labels, std::span<const int> signs) {
  std::vector<int> out(signs.size());
  std::uint64_t node = labels.root();
  for (std::size_t j = 0; j < signs.size(); ++j) {
    out[j] = labels.label(node) * signs[j];
    node = labels.child(node, signs[j]);
  }
  return out;
}

}  // namespace noise_lab
