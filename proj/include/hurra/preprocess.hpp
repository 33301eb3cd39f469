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

// Data sanitization: grid alignment, degenerate-feature removal,
// sample-and-hold imputation and per-KPI z-scoring.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hurra/model.hpp"

namespace hurra {

struct FeatureStats {
  std::string feature;
  double mean = 0.0;
  double stddev = 0.0;  // population
};

struct DroppedMissing {
  std::string feature;
  double missing_fraction = 0.0;
};

struct PreprocessReport {
  std::vector<std::string> dropped_constant;
  std::vector<DroppedMissing> dropped_missing;
  std::size_t imputed_cells = 0;
  std::vector<FeatureStats> stats;
};

// Missing fraction strictly above this drops the feature.
inline constexpr double kMaxMissingFraction = 0.5;

// Re-grids timestamps at the median inter-sample interval (whole minutes,
// at least 1); slots absent from the input become all-missing columns.
// Samples that fall off the grid are snapped to the nearest slot; when two
// samples share a slot the later one wins.
Dataset align_and_pad(const Dataset& raw);

// Drops constant features and features with more than half their samples
// missing. Throws kEmpty if nothing survives.
std::pair<Dataset, PreprocessReport> drop_degenerate_features(const Dataset& d);

// Each missing cell takes the last observed value; leading gaps take the
// first observed value. `imputed` (optional) receives the fill count.
Dataset impute_sample_and_hold(const Dataset& d, std::size_t* imputed = nullptr);

// z-score each feature with its population mean and standard deviation.
// Features already at mean 0 / std 1 (within 1e-9) are left untouched so the
// transform is exactly idempotent.
std::pair<Dataset, PreprocessReport> standardize(const Dataset& d);

// Maps labels sampled at `label_times` onto a regular `grid` (as produced by
// align_and_pad): each label row snaps to the nearest grid slot, labels
// sharing a slot are OR-ed, and slots with no label row are 0. Throws
// kInvalidArgument if a label timestamp falls outside the grid.
GroundTruth align_ground_truth(const GroundTruth& g, const std::vector<Minutes>& label_times,
                               const std::vector<Minutes>& grid);

// Full pipeline: align -> drop -> impute -> standardize.
std::pair<Dataset, PreprocessReport> preprocess(const Dataset& raw);

}  // namespace hurra
