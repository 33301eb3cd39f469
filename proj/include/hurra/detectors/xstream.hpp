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
#include <span>
#include <string>
#include <vector>

#include "hurra/detectors/points.hpp"

namespace hurra {

struct XStreamOptions {
  std::size_t projections = 200;  // k
  std::size_t chains = 100;       // c
  std::size_t depth = 10;         // d
  double init_frac = 0.30;
  std::uint64_t seed = 0;
};

// Sparse projection weight for (feature name, component): -sqrt(3), 0 or
// +sqrt(3) with probabilities 1/6, 2/3, 1/6, derived from a hash of the
// name so that a feature keeps its weights wherever it appears.
double streamhash_weight(const std::string& feature, std::size_t component, std::uint64_t seed);

/// Row-stream xStream with a single tumbling window.
///
/// Points are projected to k dimensions, then binned by c half-space chains
/// of depth d. Each chain level picks a projected dimension; the first use of
/// a dimension bins (y + shift) / delta, later uses halve the bin width. A
/// chain's value for a point is min over levels l of count_l * 2^(l+1) using
/// the reference window's bin counts; the score is minus the chain average.
///
/// The first round(init_frac * T) points fix the per-dimension deltas (half
/// the projected range), fill the reference counts and are then scored.
/// Later points are scored, then counted into the current window, which
/// replaces the reference every init-size points.
std::vector<double> xstream_score(const PointView& points,
                                  std::span<const std::string> feature_names,
                                  const XStreamOptions& options);

}  // namespace hurra
