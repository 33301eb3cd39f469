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

#include "hurra/detectors/dbscan.hpp"

#include <cmath>

namespace hurra {

DbscanModel::DbscanModel(const PointView& points) : n_(points.rows()), dist_(n_ * n_, 0.0) {
  const std::size_t F = points.cols();
  for (std::size_t i = 0; i < n_; ++i) {
    const double* a = points.row(i);
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double* b = points.row(j);
      double s = 0.0;
      for (std::size_t f = 0; f < F; ++f) {
        const double d = a[f] - b[f];
        s += d * d;
      }
      dist_[i * n_ + j] = dist_[j * n_ + i] = std::sqrt(s);
    }
  }
}

std::vector<std::uint8_t> DbscanModel::noise_flags(double eps, std::size_t min_samples) const {
  require(eps > 0.0 && std::isfinite(eps), ErrorCode::kInvalidArgument, "DBSCAN: eps must be > 0");
  require(min_samples >= 1, ErrorCode::kInvalidArgument, "DBSCAN: min_samples must be >= 1");
  std::vector<std::uint8_t> core(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    std::size_t count = 0;
    const double* row = dist_.data() + i * n_;
    for (std::size_t j = 0; j < n_ && count < min_samples; ++j) {
      if (row[j] <= eps) ++count;
    }
    core[i] = count >= min_samples;
  }
  std::vector<std::uint8_t> noise(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (core[i]) continue;
    const double* row = dist_.data() + i * n_;
    bool reached = false;
    for (std::size_t j = 0; j < n_ && !reached; ++j) reached = core[j] && row[j] <= eps;
    noise[i] = !reached;
  }
  return noise;
}

std::vector<double> dbscan_score(const PointView& points, const DbscanOptions& options) {
  const DbscanModel model(points);
  const auto flags = model.noise_flags(options.eps, options.min_samples);
  return std::vector<double>(flags.begin(), flags.end());
}

}  // namespace hurra
