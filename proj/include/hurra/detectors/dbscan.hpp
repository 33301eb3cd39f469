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

#pragma once

#include <cstdint>
#include <vector>

#include "hurra/detectors/points.hpp"

namespace hurra {

struct DbscanOptions {
  double eps = 13.0;
  std::size_t min_samples = 2;  // neighbourhood size including the point itself
  // Accepted for parity with tree-indexed implementations; the brute-force
  // search here gives identical labels for any value.
  std::size_t leaf_size = 30;
};

/// Pairwise Euclidean distances over the timeslot vectors, computed once so
/// several (eps, min_samples) settings can be labelled cheaply.
class DbscanModel {
 public:
  explicit DbscanModel(const PointView& points);

  std::size_t size() const { return n_; }
  double distance(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }

  // 1 for noise (neither core nor within eps of a core point), else 0.
  std::vector<std::uint8_t> noise_flags(double eps, std::size_t min_samples) const;

 private:
  std::size_t n_;
  std::vector<double> dist_;
};

// Noise flags as scores: 1 = noise, 0 = clustered.
std::vector<double> dbscan_score(const PointView& points, const DbscanOptions& options);

}  // namespace hurra
