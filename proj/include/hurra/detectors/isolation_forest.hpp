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

struct IsolationForestOptions {
  std::size_t trees = 200;
  double sample_frac = 0.75;   // psi = round(sample_frac * T)
  double feature_frac = 0.50;  // features per tree = max(1, round(feature_frac * F))
  std::uint64_t seed = 0;
};

// Average unsuccessful-search path length of a BST over n points:
// c(n) = 2 H(n-1) - 2 (n-1) / n, with c(0) = c(1) = 0.
double isolation_normalizer(std::size_t n);

/// Batch isolation forest. Each tree is grown on a psi-point subsample
/// (without replacement) restricted to a random feature subset, up to depth
/// ceil(log2 psi); a point's score is 2^(-E[h(x)] / c(psi)).
class IsolationForest {
 public:
  // Throws kInvalidArgument when psi < 2.
  static IsolationForest fit(const PointView& points, const IsolationForestOptions& options);

  // Mean over trees of depth-to-leaf plus c(leaf size).
  double average_path_length(const double* x) const;
  double score(const double* x) const;

  std::size_t sample_size() const { return psi_; }
  std::size_t tree_count() const { return trees_.size(); }
  // Path length of x in a single tree.
  double path_length(std::size_t tree, const double* x) const;

 private:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double split = 0.0;
    std::uint32_t left = 0, right = 0;
    std::uint32_t size = 0;
    double adjust = 0.0;  // c(size), used when the node is a leaf
  };
  using Tree = std::vector<Node>;

  std::vector<Tree> trees_;
  std::size_t psi_ = 0;
};

std::vector<double> if_score(const PointView& points, const IsolationForestOptions& options);

}  // namespace hurra
