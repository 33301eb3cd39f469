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

// End-to-end troubleshooting pipeline: detection, binarization, feature
// scoring, expert-knowledge re-ranking, and corpus-level benchmarking with
// leave-one-out expert knowledge.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hurra/detectors.hpp"
#include "hurra/evaluation.hpp"
#include "hurra/expert_knowledge.hpp"
#include "hurra/feature_scoring.hpp"
#include "hurra/json_io.hpp"
#include "hurra/model.hpp"

namespace hurra {

// The detector's own labels when it emits them (DBSCAN, oracle), otherwise
// binarize(scores, policy).
TimeslotLabels anomaly_vector(const ScoreSeries& scores, const BinarizationPolicy& policy);

// Features flagged in `gt` that also appear in `ranking`.
std::set<std::string> relevant_features(const FeatureRanking& ranking, const GroundTruth& gt);

struct CaseScores {
  std::string name;
  FeatureScores scores;  // raw feature scores of the case
  GroundTruth truth;
};

struct LooOutcome {
  std::string name;
  EKBase base;  // built from the other cases only
  FeatureRanking ranking;
  // Empty when no flagged feature survived into the ranking.
  std::optional<double> ndcg;
  std::optional<ReadingEffort> effort;
};

/// For each case, builds the base from every other case's (scores, truth),
/// re-weights the case's scores with it and ranks them.
/// Throws kInvalidArgument for fewer than two cases.
std::vector<LooOutcome> leave_one_out(std::span<const CaseScores> cases, const EKGains& gains);

struct BenchCase {
  std::string name;
  Dataset raw;
  GroundTruth truth;
  std::vector<Minutes> truth_times;
};

// Reads NAME.csv / NAME.gt.csv pairs from a directory, sorted by name.
std::vector<BenchCase> load_corpus(const std::string& dir);

struct BenchConfig {
  std::vector<Algorithm> algorithms = {Algorithm::kIF, Algorithm::kRHF, Algorithm::kHST,
                                       Algorithm::kLODA, Algorithm::kXStream};
  bool lower_bound = true;  // default parameters
  bool upper_bound = false;  // per-dataset grid search against the labels
  std::map<Algorithm, ParamMap> params;  // overrides of the defaults
  std::map<Algorithm, HyperGrid> grids;  // overrides of default_grid
  bool oracle = true;
  bool ensemble = true;
  BinarizationPolicy binarization;
  FsKind fs = FsKind::kFSa;
  EKGains gains;
  bool loo = true;
  std::uint64_t seed = 0;
  double alpha = 0.05;
};

Json to_json(const BenchConfig& config);
// Keys: algorithms, mode ("lb", "ub" or "both"), params, grids, oracle,
// ensemble, quantile, fs, gamma_plus, gamma_minus, loo, seed, alpha.
BenchConfig bench_config_from_json(const Json& j);

struct BenchReport {
  Json json;
  bool ok = true;  // false if any dataset or detector step failed
};

/// Runs the configured pipelines on every case (in parallel) and aggregates
/// medians, average Pr-Rec AUC ranks with the Nemenyi critical difference,
/// and the nDCG / reading-effort table. The report contains no timings, so
/// it is a pure function of (corpus, config).
BenchReport run_bench(std::span<const BenchCase> corpus, const BenchConfig& config);

// One CSV row per (dataset, detector).
std::string bench_csv(const Json& report);

// Detection metrics of a score series against labels.
Json eval_scores(const ScoreSeries& scores, const GroundTruth& gt,
                 const BinarizationPolicy& policy);
// Ranking metrics against labels.
Json eval_ranking(const FeatureRanking& ranking, const GroundTruth& gt);

}  // namespace hurra
