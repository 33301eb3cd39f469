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

struct HalfSpaceTreesOptions {
  double window_frac = 0.30;  // psi: window = round(window_frac * T)
  std::size_t trees = 300;
  std::size_t max_depth = 10;  // h
  std::uint64_t seed = 0;
};

// Mass below which scoring stops descending, as a fraction of the window.
inline constexpr double kHstSizeLimitFraction = 0.1;

/// Streaming half-space trees. Features are scaled to [0, 1] using the first
/// window; each tree covers a randomly shifted workspace and halves it at
/// the midpoint of a random feature per node, down to max_depth.
///
/// Masses are kept over tumbling windows: the latest window accumulates while
/// the previous one acts as reference. A point descends until the node's
/// reference mass is at most 10% of the window (or max_depth) and collects
/// mass * 2^depth; the returned score is the negated sum over trees so that
/// larger means more anomalous. The first window warms the model and is then
/// scored with the warmed reference.
std::vector<double> hst_score(const PointView& points, const HalfSpaceTreesOptions& options);

}  // namespace hurra
