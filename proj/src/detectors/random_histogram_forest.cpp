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

#include "hurra/detectors/random_histogram_forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hurra/random.hpp"

namespace hurra {
namespace {

bool same_row(const PointView& p, std::size_t a, std::size_t b) {
  return std::equal(p.row(a), p.row(a) + p.cols(), p.row(b));
}

bool all_identical(const PointView& p, const std::vector<std::size_t>& idx, std::size_t begin,
                   std::size_t end) {
  for (std::size_t i = begin + 1; i < end; ++i) {
    if (!same_row(p, idx[begin], idx[i])) return false;
  }
  return true;
}

std::size_t distinct_rows(const PointView& p, std::vector<std::size_t> rows) {
  std::sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(p.row(a), p.row(a) + p.cols(), p.row(b),
                                        p.row(b) + p.cols());
  });
  auto last = std::unique(rows.begin(), rows.end(),
                          [&](std::size_t a, std::size_t b) { return same_row(p, a, b); });
  return static_cast<std::size_t>(last - rows.begin());
}

}  // namespace

double kurtosis(const PointView& points, const std::vector<std::size_t>& rows,
                std::size_t begin, std::size_t end, std::size_t feature) {
  const double n = static_cast<double>(end - begin);
  double mean = 0.0;
  for (std::size_t i = begin; i < end; ++i) mean += points(rows[i], feature);
  mean /= n;
  double m2 = 0.0, m4 = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    const double d = points(rows[i], feature) - mean;
    const double d2 = d * d;
    m2 += d2;
    m4 += d2 * d2;
  }
  m2 /= n;
  m4 /= n;
  if (!(m2 > 0.0)) return 0.0;
  return m4 / (m2 * m2);
}

RandomHistogramForest RandomHistogramForest::fit(const PointView& points,
                                                 const RandomHistogramForestOptions& options) {
  const std::size_t T = points.rows(), F = points.cols();
  require(T >= 2, ErrorCode::kInvalidArgument, "RHF: need at least two timeslots to split");
  require(options.trees >= 1 && options.max_height >= 1, ErrorCode::kInvalidArgument,
          "RHF: trees and max_height must be >= 1");

  RandomHistogramForest forest;
  forest.split_counts_.assign(F, 0);
  forest.trees_.resize(options.trees);
  const double total = static_cast<double>(T);
  std::vector<double> weights(F);

  for (std::size_t k = 0; k < options.trees; ++k) {
    Rng rng(derive_seed(options.seed, k));
    Tree& tree = forest.trees_[k];
    std::vector<std::size_t> idx(T);
    std::iota(idx.begin(), idx.end(), std::size_t{0});

    auto make_leaf = [&](std::uint32_t id, std::size_t begin, std::size_t end) {
      std::size_t size = end - begin;
      if (options.check_duplicates && size > 1) {
        size = distinct_rows(points, std::vector<std::size_t>(idx.begin() + static_cast<std::ptrdiff_t>(begin),
                                                             idx.begin() + static_cast<std::ptrdiff_t>(end)));
      }
      tree[id].leaf_score = size > 0 ? std::log(total / static_cast<double>(size)) : 0.0;
    };

    auto grow = [&](auto&& self, std::size_t begin, std::size_t end,
                    std::size_t depth) -> std::uint32_t {
      const auto id = static_cast<std::uint32_t>(tree.size());
      tree.emplace_back();
      if (depth >= options.max_height || end - begin <= 1 ||
          (options.check_duplicates && all_identical(points, idx, begin, end))) {
        make_leaf(id, begin, end);
        return id;
      }
      double weight_sum = 0.0;
      for (std::size_t f = 0; f < F; ++f) {
        const double kurt = kurtosis(points, idx, begin, end, f);
        weights[f] = kurt > 0.0 ? std::log1p(kurt) : 0.0;
        weight_sum += weights[f];
      }
      if (!(weight_sum > 0.0)) {
        make_leaf(id, begin, end);
        return id;
      }
      const double r = rng.uniform() * weight_sum;
      std::size_t f = F;
      double acc = 0.0;
      for (std::size_t c = 0; c < F; ++c) {
        if (weights[c] == 0.0) continue;
        f = c;
        acc += weights[c];
        if (acc > r) break;
      }
      double lo = points(idx[begin], f), hi = lo;
      for (std::size_t i = begin + 1; i < end; ++i) {
        lo = std::min(lo, points(idx[i], f));
        hi = std::max(hi, points(idx[i], f));
      }
      double split;
      do {
        split = rng.uniform(lo, hi);
      } while (split <= lo);
      auto mid = std::partition(idx.begin() + static_cast<std::ptrdiff_t>(begin),
                                idx.begin() + static_cast<std::ptrdiff_t>(end),
                                [&](std::size_t row) { return points(row, f) < split; });
      const auto m = static_cast<std::size_t>(mid - idx.begin());
      ++forest.split_counts_[f];
      tree[id].feature = static_cast<int>(f);
      tree[id].split = split;
      const std::uint32_t left = self(self, begin, m, depth + 1);
      const std::uint32_t right = self(self, m, end, depth + 1);
      tree[id].left = left;
      tree[id].right = right;
      return id;
    };
    grow(grow, 0, T, 0);
  }
  return forest;
}

double RandomHistogramForest::score(const double* x) const {
  double sum = 0.0;
  for (const Tree& nodes : trees_) {
    std::uint32_t id = 0;
    while (nodes[id].feature >= 0) {
      id = x[nodes[id].feature] < nodes[id].split ? nodes[id].left : nodes[id].right;
    }
    sum += nodes[id].leaf_score;
  }
  return sum;
}

std::vector<double> rhf_score(const PointView& points,
                              const RandomHistogramForestOptions& options) {
  const RandomHistogramForest forest = RandomHistogramForest::fit(points, options);
  std::vector<double> out(points.rows());
  for (std::size_t t = 0; t < points.rows(); ++t) out[t] = forest.score(points.row(t));
  return out;
}

}  // namespace hurra
