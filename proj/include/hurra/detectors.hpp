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

// Anomaly-detection stage: detector specs with their default settings,
// hyperparameter grids, score binarization, the ground-truth oracle, the
// best-of ensemble and grid search.

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hurra/model.hpp"

namespace hurra {

enum class Algorithm { kIF, kRHF, kHST, kLODA, kXStream, kDBSCAN, kOracle };

// Lower-case names: if, rhf, hst, loda, xstream, dbscan, oracle.
std::string_view algorithm_name(Algorithm a);
// Throws kInvalidArgument for an unknown name.
Algorithm parse_algorithm(std::string_view name);
// Every algorithm except the oracle.
std::vector<Algorithm> detector_algorithms();

using ParamMap = std::map<std::string, double>;

/// Parameters per algorithm (fractions resolve against the dataset's T):
///   if:      trees, sample_frac, feature_frac
///   rhf:     trees, max_height, check_duplicates (0/1)
///   hst:     window_frac, trees, max_depth
///   loda:    window_frac, projections
///   xstream: projections, chains, depth, init_frac
///   dbscan:  eps, min_samples, min_samples_frac, leaf_size
///   oracle:  none
struct DetectorSpec {
  Algorithm algorithm = Algorithm::kIF;
  ParamMap params;
  std::uint64_t seed = 0;

  friend bool operator==(const DetectorSpec&, const DetectorSpec&) = default;
};

// Default (single-setting) parameters of an algorithm.
ParamMap default_params(Algorithm a);

// Fills unspecified parameters with defaults and validates names and ranges.
// Throws kInvalidArgument on an unknown key or out-of-range value.
DetectorSpec resolve_spec(const DetectorSpec& spec);

// Canonical text form, e.g. "if(feature_frac=0.5,sample_frac=0.75,trees=200)".
std::string describe(const DetectorSpec& spec);

struct HyperGrid {
  Algorithm algorithm = Algorithm::kIF;
  std::map<std::string, std::vector<double>> values;

  std::size_t size() const;
  // Cartesian product in row-major order over the keys sorted by name (the
  // last key varies fastest).
  std::vector<DetectorSpec> combinations(std::uint64_t seed) const;
};

// Search space used for the per-dataset best-case scenario.
HyperGrid default_grid(Algorithm a);

struct BinarizationPolicy {
  enum class Method { kTopQuantile, kThreshold };
  Method method = Method::kTopQuantile;
  double value = 0.95;  // quantile q or threshold tau

  static BinarizationPolicy top_quantile(double q) { return {Method::kTopQuantile, q}; }
  static BinarizationPolicy threshold(double tau) { return {Method::kThreshold, tau}; }
};

/// TOP_QUANTILE flags the ceil((1 - q) T) highest scores, plus any score tied
/// with the last one flagged; THRESHOLD flags scores strictly above tau.
/// Throws kInvalidArgument if q is outside (0, 1).
TimeslotLabels binarize(std::span<const double> scores, const BinarizationPolicy& policy);

// a = derive_timeslot_labels(gt).
TimeslotLabels oracle_detector(const GroundTruth& gt);
// The oracle labels as a 0/1 ScoreSeries.
ScoreSeries oracle_scores(const GroundTruth& gt);

/// Runs one detector on a preprocessed dataset. Output is a pure function of
/// (dataset, spec). The oracle needs `gt`; other detectors ignore it.
/// DBSCAN and the oracle also fill `binary`, since their scores are already
/// labels.
ScoreSeries run_detector(const Dataset& dhat, const DetectorSpec& spec,
                         const GroundTruth* gt = nullptr);

struct DetectorResult {
  DetectorSpec spec;
  ScoreSeries scores;
};

struct EnsembleChoice {
  std::size_t index = 0;
  double pr_auc = 0.0;
  std::vector<double> member_pr_auc;
};

// Picks the member with the highest Pr-Rec AUC against the oracle labels;
// the earliest wins ties. Throws kInvalidArgument on an empty list.
EnsembleChoice ideal_ensemble(std::span<const DetectorResult> results, const GroundTruth& gt);

struct GridSearchResult {
  DetectorSpec spec;
  ScoreSeries scores;
  double pr_auc = 0.0;
  std::size_t evaluated = 0;
  // "<spec>: <reason>" for every combination that failed its preconditions.
  std::vector<std::string> skipped;
};

/// Evaluates every grid combination (in parallel) and returns the best by
/// Pr-Rec AUC; the first combination in enumeration order wins ties.
/// Throws kDegenerate if every combination fails.
GridSearchResult grid_search(const Dataset& dhat, const HyperGrid& grid, const GroundTruth& gt,
                             std::uint64_t seed);

}  // namespace hurra
