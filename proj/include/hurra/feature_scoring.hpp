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

// Feature scoring: turns the preprocessed matrix and the binarized anomaly
// vector into one score per KPI (higher = more suspicious).

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "hurra/model.hpp"

namespace hurra {

enum class FsKind { kFSa, kFSr, kRandom, kAlphabetical, kND, kNDLog };

// CLI names: fsa, fsr, random, alpha, nd, ndlog.
std::string_view fs_name(FsKind kind);
FsKind parse_fs(std::string_view name);

struct FSPolicy {
  FsKind kind = FsKind::kFSa;
  std::optional<std::uint64_t> seed;  // set iff kind == kRandom

  static FSPolicy of(FsKind kind, std::uint64_t seed = 0) {
    return kind == FsKind::kRandom ? FSPolicy{kind, seed} : FSPolicy{kind, std::nullopt};
  }
};

// Cap applied to s_jt before the log transform.
inline constexpr double kNdLogCap = 1.0 - 1e-12;

// |mean over anomalous slots - mean over normal slots| per feature.
// Every FS function below that takes `a` throws kDegenerate when `a` is all
// zeros or all ones, and kInvalidArgument when lengths disagree or the
// dataset has missing cells.
FeatureScores fs_average(const Dataset& dhat, const TimeslotLabels& a);

// Features are ranked by regime mean within each regime (rank 1 = largest,
// ties by name); s_j = |r+_j - r-_j|.
FeatureScores fs_rank(const Dataset& dhat, const TimeslotLabels& a);

// A seeded permutation of 1..F.
FeatureScores fs_random(std::span<const std::string> features, std::uint64_t seed);

// F for the lexicographically first name, down to 1 for the last.
FeatureScores fs_alphabetical(std::span<const std::string> features);

// Standard normal distribution function.
double normal_cdf(double z);

// 2 |1/2 - Phi((x - mu) / sigma)|; for sigma = 0, 0 when x == mu else 1.
double nd_sample_score(double x, double mu, double sigma);

// Mean of nd_sample_score over anomalous slots, with (mu, sigma) fitted on
// the normal slots (population sigma). Needs >= 2 normal slots.
FeatureScores fs_normal(const Dataset& dhat, const TimeslotLabels& a);

// Mean over anomalous slots of -log(1 - min(s_jt, 1 - 1e-12)).
FeatureScores fs_lognormal(const Dataset& dhat, const TimeslotLabels& a);

FeatureScores score_features(const Dataset& dhat, const TimeslotLabels& a, const FSPolicy& policy);

}  // namespace hurra
