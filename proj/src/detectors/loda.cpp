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

#include "hurra/detectors/loda.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "hurra/random.hpp"

namespace hurra {
namespace {

struct SparseProjection {
  std::vector<std::size_t> features;
  std::vector<double> weights;

  double apply(const double* x) const {
    double z = 0.0;
    for (std::size_t i = 0; i < features.size(); ++i) z += weights[i] * x[features[i]];
    return z;
  }
};

// Sliding-window histogram with fixed bin width and unbounded bin range.
class WindowHistogram {
 public:
  WindowHistogram(double origin, double width, std::size_t window)
      : origin_(origin), width_(width), window_(window), ring_(window, 0) {}

  std::int64_t bin(double z) const {
    const double b = std::floor((z - origin_) / width_);
    return static_cast<std::int64_t>(std::clamp(b, -0x1p62, 0x1p62));
  }

  double probability(double z) const {
    auto it = counts_.find(bin(z));
    const double c = it == counts_.end() ? 0.0 : static_cast<double>(it->second);
    return std::max(c / static_cast<double>(window_), kLodaProbabilityFloor);
  }

  // Inserts z, evicting the oldest entry once the window is full.
  void push(double z) {
    const std::int64_t b = bin(z);
    if (filled_ == window_) {
      auto it = counts_.find(ring_[head_]);
      if (--it->second == 0) counts_.erase(it);
    } else {
      ++filled_;
    }
    ring_[head_] = b;
    head_ = (head_ + 1) % window_;
    ++counts_[b];
  }

 private:
  double origin_;
  double width_;
  std::size_t window_;
  std::vector<std::int64_t> ring_;
  std::size_t head_ = 0;
  std::size_t filled_ = 0;
  std::unordered_map<std::int64_t, std::uint32_t> counts_;
};

}  // namespace

LodaResult loda_score(const PointView& points, const LodaOptions& options) {
  const std::size_t T = points.rows(), F = points.cols();
  require(options.projections >= 1, ErrorCode::kInvalidArgument, "LODA: projections must be >= 1");
  require(options.window_frac > 0.0 && options.window_frac <= 1.0, ErrorCode::kInvalidArgument,
          "LODA: window fraction must lie in (0, 1]");
  const std::size_t window = fraction_of(options.window_frac, T);
  require(window >= 4, ErrorCode::kInvalidArgument,
          "LODA: window resolves to " + std::to_string(window) + " samples (< 4)");
  require(window <= T, ErrorCode::kInvalidArgument, "LODA: window exceeds the series length");

  LodaResult result;
  const std::size_t nonzero =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(std::sqrt(double(F)))), 1, F);
  if (nonzero == F) {
    result.notes.push_back("loda: dense projections (F=" + std::to_string(F) + ")");
  }

  const std::size_t k = options.projections;
  std::vector<SparseProjection> projections(k);
  for (std::size_t i = 0; i < k; ++i) {
    Rng rng(derive_seed(options.seed, i));
    projections[i].features = rng.sample_without_replacement(F, nonzero);
    std::sort(projections[i].features.begin(), projections[i].features.end());
    for (std::size_t n = 0; n < nonzero; ++n) projections[i].weights.push_back(rng.normal());
  }

  // Projected values, T x k.
  std::vector<double> z(T * k);
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t i = 0; i < k; ++i) z[t * k + i] = projections[i].apply(points.row(t));
  }

  const auto bins = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(window))));
  std::vector<WindowHistogram> hist;
  hist.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    double mn = z[i], mx = z[i];
    for (std::size_t t = 1; t < window; ++t) {
      mn = std::min(mn, z[t * k + i]);
      mx = std::max(mx, z[t * k + i]);
    }
    const double width = mx > mn ? (mx - mn) / static_cast<double>(bins) : 1.0;
    hist.emplace_back(mn, width, window);
  }

  auto score = [&](std::size_t t) {
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) s -= std::log(hist[i].probability(z[t * k + i]));
    return s / static_cast<double>(k);
  };

  result.scores.resize(T);
  for (std::size_t t = 0; t < window; ++t) {
    for (std::size_t i = 0; i < k; ++i) hist[i].push(z[t * k + i]);
  }
  for (std::size_t t = 0; t < window; ++t) result.scores[t] = score(t);
  for (std::size_t t = window; t < T; ++t) {
    result.scores[t] = score(t);
    for (std::size_t i = 0; i < k; ++i) hist[i].push(z[t * k + i]);
  }
  return result;
}

}  // namespace hurra
