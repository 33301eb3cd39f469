/*
 * Copyright 2026 The Hurra Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "hurra/detectors/isolation_forest.hpp"

#include <algorithm>
#include <cmath>

#include "hurra/random.hpp"

namespace hurra {
namespace {

struct Builder {
  const PointView& points;
  const std::vector<std::size_t>& features;
  std::size_t height_limit;
  Rng& rng;
  std::vector<std::size_t> idx;

  template <typename Tree>
  std::uint32_t grow(Tree& tree, std::size_t begin, std::size_t end, std::size_t depth) {
    const auto node_id = static_cast<std::uint32_t>(tree.size());
    tree.emplace_back();
    tree[node_id].size = static_cast<std::uint32_t>(end - begin);
    tree[node_id].adjust = isolation_normalizer(end - begin);
    if (depth >= height_limit || end - begin <= 1) return node_id;

    // Draw features in random order until one is not constant on the node.
    std::vector<std::size_t> candidates = features;
    for (std::size_t remaining = candidates.size(); remaining > 0; --remaining) {
      const std::size_t pick = rng.below(remaining);
      const std::size_t f = candidates[pick];
      std::swap(candidates[pick], candidates[remaining - 1]);
      double lo = points(idx[begin], f), hi = lo;
      for (std::size_t i = begin + 1; i < end; ++i) {
        lo = std::min(lo, points(idx[i], f));
        hi = std::max(hi, points(idx[i], f));
      }
      if (!(hi > lo)) continue;
      double split;
      do {
        split = rng.uniform(lo, hi);
      } while (split <= lo);
      auto mid = std::partition(idx.begin() + static_cast<std::ptrdiff_t>(begin),
                                idx.begin() + static_cast<std::ptrdiff_t>(end),
                                [&](std::size_t r) { return points(r, f) < split; });
      const auto m = static_cast<std::size_t>(mid - idx.begin());
      tree[node_id].feature = static_cast<int>(f);
      tree[node_id].split = split;
      const std::uint32_t l = grow(tree, begin, m, depth + 1);
      const std::uint32_t r = grow(tree, m, end, depth + 1);
      tree[node_id].left = l;
      tree[node_id].right = r;
      return node_id;
    }
    return node_id;
  }
};

}  // namespace

double isolation_normalizer(std::size_t n) {
  if (n <= 1) return 0.0;
  double harmonic = 0.0;
  for (std::size_t i = 1; i < n; ++i) harmonic += 1.0 / static_cast<double>(i);
  const double nm1 = static_cast<double>(n - 1);
  return 2.0 * harmonic - 2.0 * nm1 / static_cast<double>(n);
}

IsolationForest IsolationForest::fit(const PointView& points,
                                     const IsolationForestOptions& options) {
  const std::size_t T = points.rows(), F = points.cols();
  require(options.trees >= 1, ErrorCode::kInvalidArgument, "IF: trees must be >= 1");
  require(options.sample_frac > 0.0 && options.sample_frac <= 1.0 && options.feature_frac > 0.0 &&
              options.feature_frac <= 1.0,
          ErrorCode::kInvalidArgument, "IF: fractions must lie in (0, 1]");
  const std::size_t psi = fraction_of(options.sample_frac, T);
  require(psi >= 2, ErrorCode::kInvalidArgument,
          "IF: sample_frac resolves to " + std::to_string(psi) + " samples (< 2)");
  const std::size_t n_features = std::max<std::size_t>(1, fraction_of(options.feature_frac, F));
  const auto height_limit =
      static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(psi))));

  IsolationForest forest;
  forest.psi_ = psi;
  forest.trees_.resize(options.trees);
  for (std::size_t k = 0; k < options.trees; ++k) {
    Rng rng(derive_seed(options.seed, k));
    auto features = rng.sample_without_replacement(F, n_features);
    std::sort(features.begin(), features.end());
    Builder b{points, features, height_limit, rng, rng.sample_without_replacement(T, psi)};
    forest.trees_[k].reserve(2 * psi);
    b.grow(forest.trees_[k], 0, psi, 0);
  }
  return forest;
}

double IsolationForest::path_length(std::size_t tree, const double* x) const {
  const Tree& nodes = trees_[tree];
  std::uint32_t id = 0;
  std::size_t depth = 0;
  while (nodes[id].feature >= 0) {
    const Node& n = nodes[id];
    id = x[n.feature] < n.split ? n.left : n.right;
    ++depth;
  }
  return static_cast<double>(depth) + nodes[id].adjust;
}

double IsolationForest::average_path_length(const double* x) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < trees_.size(); ++k) sum += path_length(k, x);
  return sum / static_cast<double>(trees_.size());
}

double IsolationForest::score(const double* x) const {
  return std::exp2(-average_path_length(x) / isolation_normalizer(psi_));
}

std::vector<double> if_score(const PointView& points, const IsolationForestOptions& options) {
  const IsolationForest forest = IsolationForest::fit(points, options);
  std::vector<double> out(points.rows());
  for (std::size_t t = 0; t < points.rows(); ++t) out[t] = forest.score(points.row(t));
  return out;
}

}  // namespace hurra
