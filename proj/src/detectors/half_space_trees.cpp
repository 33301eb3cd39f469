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

#include "hurra/detectors/half_space_trees.hpp"

#include <algorithm>
#include <cmath>

#include "hurra/random.hpp"

namespace hurra {
namespace {

constexpr std::size_t kMaxSupportedDepth = 20;

// Complete binary tree stored heap-style: children of i are 2i+1 and 2i+2.
class HalfSpaceTree {
 public:
  HalfSpaceTree(std::size_t dims, std::size_t depth, Rng& rng) : depth_(depth) {
    const std::size_t n_nodes = (std::size_t{1} << (depth + 1)) - 1;
    dim_.assign(n_nodes, -1);
    split_.assign(n_nodes, 0.0);
    reference_.assign(n_nodes, 0);
    latest_.assign(n_nodes, 0);

    std::vector<double> lo(dims), hi(dims);
    for (std::size_t q = 0; q < dims; ++q) {
      const double s = rng.uniform();
      const double size = 2.0 * std::max(s, 1.0 - s);
      lo[q] = s - size;
      hi[q] = s + size;
    }
    build(0, 0, lo, hi, rng);
  }

  void update(const double* x) {
    std::size_t id = 0;
    for (std::size_t k = 0;; ++k) {
      ++latest_[id];
      if (k == depth_) break;
      id = child(id, x);
    }
  }

  double mass_score(const double* x, double size_limit) const {
    std::size_t id = 0;
    for (std::size_t k = 0;; ++k) {
      const double r = static_cast<double>(reference_[id]);
      if (k == depth_ || r <= size_limit) return r * std::ldexp(1.0, static_cast<int>(k));
      id = child(id, x);
    }
  }

  void roll_window() {
    reference_.swap(latest_);
    std::fill(latest_.begin(), latest_.end(), 0);
  }

 private:
  std::size_t child(std::size_t id, const double* x) const {
    return x[dim_[id]] < split_[id] ? 2 * id + 1 : 2 * id + 2;
  }

  void build(std::size_t id, std::size_t k, std::vector<double>& lo, std::vector<double>& hi,
             Rng& rng) {
    if (k == depth_) return;
    const std::size_t q = rng.below(lo.size());
    const double mid = 0.5 * (lo[q] + hi[q]);
    dim_[id] = static_cast<int>(q);
    split_[id] = mid;
    const double saved_hi = hi[q];
    hi[q] = mid;
    build(2 * id + 1, k + 1, lo, hi, rng);
    hi[q] = saved_hi;
    const double saved_lo = lo[q];
    lo[q] = mid;
    build(2 * id + 2, k + 1, lo, hi, rng);
    lo[q] = saved_lo;
  }

  std::size_t depth_;
  std::vector<int> dim_;
  std::vector<double> split_;
  std::vector<std::uint32_t> reference_;
  std::vector<std::uint32_t> latest_;
};

}  // namespace

std::vector<double> hst_score(const PointView& points, const HalfSpaceTreesOptions& options) {
  const std::size_t T = points.rows(), F = points.cols();
  require(options.trees >= 1, ErrorCode::kInvalidArgument, "HST: trees must be >= 1");
  require(options.max_depth >= 1 && options.max_depth <= kMaxSupportedDepth,
          ErrorCode::kInvalidArgument, "HST: depth must lie in [1, 20]");
  require(options.window_frac > 0.0 && options.window_frac <= 1.0, ErrorCode::kInvalidArgument,
          "HST: window fraction must lie in (0, 1]");
  const std::size_t window = fraction_of(options.window_frac, T);
  require(window >= 2, ErrorCode::kInvalidArgument,
          "HST: window resolves to " + std::to_string(window) + " samples (< 2)");
  require(window <= T, ErrorCode::kInvalidArgument, "HST: window exceeds the series length");

  // Scale to [0, 1] with the warmup window's per-feature range.
  std::vector<double> lo(F), span(F);
  for (std::size_t j = 0; j < F; ++j) {
    double mn = points(0, j), mx = mn;
    for (std::size_t t = 1; t < window; ++t) {
      mn = std::min(mn, points(t, j));
      mx = std::max(mx, points(t, j));
    }
    lo[j] = mn;
    span[j] = mx > mn ? mx - mn : 1.0;
  }
  std::vector<double> scaled(T * F);
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t j = 0; j < F; ++j) scaled[t * F + j] = (points(t, j) - lo[j]) / span[j];
  }
  auto row = [&](std::size_t t) { return scaled.data() + t * F; };

  std::vector<HalfSpaceTree> forest;
  forest.reserve(options.trees);
  for (std::size_t k = 0; k < options.trees; ++k) {
    Rng rng(derive_seed(options.seed, k));
    forest.emplace_back(F, options.max_depth, rng);
  }

  const double size_limit = kHstSizeLimitFraction * static_cast<double>(window);
  auto score = [&](std::size_t t) {
    double s = 0.0;
    for (const auto& tree : forest) s += tree.mass_score(row(t), size_limit);
    return -s;
  };

  std::vector<double> out(T);
  for (std::size_t t = 0; t < window; ++t) {
    for (auto& tree : forest) tree.update(row(t));
  }
  for (auto& tree : forest) tree.roll_window();
  for (std::size_t t = 0; t < window; ++t) out[t] = score(t);

  std::size_t in_window = 0;
  for (std::size_t t = window; t < T; ++t) {
    out[t] = score(t);
    for (auto& tree : forest) tree.update(row(t));
    if (++in_window == window) {
      for (auto& tree : forest) tree.roll_window();
      in_window = 0;
    }
  }
  return out;
}

}  // namespace hurra
