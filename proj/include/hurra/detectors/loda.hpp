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
#include <string>
#include <vector>

#include "hurra/detectors/points.hpp"

namespace hurra {

struct LodaOptions {
  double window_frac = 0.30;
  std::size_t projections = 100;
  std::uint64_t seed = 0;
};

// Floor applied to histogram probabilities before taking logs.
inline constexpr double kLodaProbabilityFloor = 1e-12;

struct LodaResult {
  std::vector<double> scores;
  std::vector<std::string> notes;
};

/// Streaming LODA over a sliding window of the last `window` points.
///
/// Each of the k projections has round(sqrt(F)) non-zero standard-normal
/// weights (all F when F = 1). Per projection, an equi-width histogram with
/// ceil(sqrt(window)) bins spans the warmup range; bins extend unboundedly
/// beyond it with the same width. score(x) = -(1/k) sum_i log p_i(w_i . x)
/// where p_i is the bin frequency in the current window, floored at 1e-12,
/// so the score never exceeds log(1e12). The first window is scored
/// retrospectively once it is loaded.
LodaResult loda_score(const PointView& points, const LodaOptions& options);

}  // namespace hurra
