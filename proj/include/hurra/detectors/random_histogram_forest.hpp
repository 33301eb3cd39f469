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

struct RandomHistogramForestOptions {
  std::size_t trees = 100;
  std::size_t max_height = 5;
  bool check_duplicates = true;
  std::uint64_t seed = 0;
};

// Pearson (non-excess) kurtosis m4 / m2^2 of the given rows of one feature;
// 0 when the values are constant.
double kurtosis(const PointView& points, const std::vector<std::size_t>& rows,
                std::size_t begin, std::size_t end, std::size_t feature);

/// Batch random histogram forest over all T points. At each node the split
/// feature is drawn with probability proportional to log(1 + kurtosis) on the
/// node's points and the split value is uniform over the feature's range.
/// A point's score sums log(T / |leaf|) over trees. With check_duplicates,
/// nodes whose rows are all identical stop splitting and leaf sizes count
/// distinct rows.
class RandomHistogramForest {
 public:
  // Throws kInvalidArgument for fewer than two rows.
  static RandomHistogramForest fit(const PointView& points,
                                   const RandomHistogramForestOptions& options);

  double score(const double* x) const;

  // How often each feature was chosen for a split, over all trees.
  const std::vector<std::size_t>& split_counts() const { return split_counts_; }

 private:
  struct Node {
    int feature = -1;
    double split = 0.0;
    std::uint32_t left = 0, right = 0;
    double leaf_score = 0.0;
  };
  using Tree = std::vector<Node>;

  std::vector<Tree> trees_;
  std::vector<std::size_t> split_counts_;
};

std::vector<double> rhf_score(const PointView& points,
                              const RandomHistogramForestOptions& options);

}  // namespace hurra
