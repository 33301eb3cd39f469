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

// Detection metrics (precision/recall, Pr-Rec AUC, ROC AUC), ranking metrics
// (nDCG, reading effort) and rank-based comparison of algorithms across
// datasets (average ranks, Nemenyi critical difference).

#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hurra/model.hpp"

namespace hurra {

struct ConfusionCounts {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
};

ConfusionCounts confusion(const TimeslotLabels& predicted, const TimeslotLabels& truth);

// Throw kDegenerate when the denominator is zero.
double precision(const ConfusionCounts& c);
double recall(const ConfusionCounts& c);
std::pair<double, double> precision_recall(const ConfusionCounts& c);

/// Area under the precision-recall curve as average precision: thresholds
/// sweep the distinct scores from highest to lowest, tied scores enter as one
/// block, and AUC = sum_i (R_i - R_{i-1}) * P_i with R_0 = 0. A constant
/// scorer therefore scores exactly the positive prevalence.
/// Throws kDegenerate if the labels are all positive or all negative.
double pr_auc(std::span<const double> scores, const TimeslotLabels& truth);

/// Trapezoidal area under the (FPR, TPR) curve; ties move diagonally.
double roc_auc(std::span<const double> scores, const TimeslotLabels& truth);

/// DCG / iDCG with binary relevance. The ideal ranking places the t flagged
/// features first. Throws kDegenerate if `relevant` is empty and
/// kInvalidArgument if a relevant feature is absent from the ranking.
double ndcg(const FeatureRanking& ranking, const std::set<std::string>& relevant);

struct ReadingEffort {
  std::size_t m = 0;  // position of the last relevant feature
  std::size_t t = 0;  // relevant feature count
  std::size_t e = 0;  // irrelevant features read along the way, m - t
};

ReadingEffort reading_effort(const FeatureRanking& ranking, const std::set<std::string>& relevant);

// Matrix of a metric (higher is better), one row per algorithm and one
// column per dataset.
using MetricMatrix = std::vector<std::vector<double>>;

// Per dataset, algorithms get rank 1 (best) .. k, ties share their average
// rank. Returns the mean rank of each algorithm.
std::vector<double> average_ranks(const MetricMatrix& metric);

// Per-dataset rank matrix behind average_ranks (same shape as the input).
MetricMatrix dataset_ranks(const MetricMatrix& metric);

// Studentized-range based constant for the Nemenyi test, k in [2, 20],
// alpha in {0.05, 0.10}.
double nemenyi_q(std::size_t k, double alpha);

// CD = q_alpha * sqrt(k (k + 1) / (6 N)).
double nemenyi_cd(std::size_t k, std::size_t n_datasets, double alpha);

// Pairs (i < j) of algorithms whose mean ranks differ by less than cd.
std::vector<std::pair<std::size_t, std::size_t>> nemenyi_linked_pairs(
    std::span<const double> mean_ranks, double cd);

double median(std::vector<double> values);

}  // namespace hurra
