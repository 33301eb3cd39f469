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

#include "hurra/evaluation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "hurra/error.hpp"

namespace hurra {
namespace {

// Studentized range quantile / sqrt(2) for k = 2..20 at infinite degrees of
// freedom.
constexpr std::array<double, 19> kQ05 = {1.960, 2.344, 2.569, 2.728, 2.850, 2.948, 3.031,
                                         3.102, 3.164, 3.219, 3.268, 3.313, 3.354, 3.391,
                                         3.426, 3.458, 3.489, 3.517, 3.544};
constexpr std::array<double, 19> kQ10 = {1.645, 2.052, 2.291, 2.460, 2.589, 2.693, 2.780,
                                         2.855, 2.920, 2.978, 3.030, 3.077, 3.120, 3.159,
                                         3.196, 3.230, 3.261, 3.291, 3.319};

void check_scores_vs_labels(std::span<const double> scores, const TimeslotLabels& truth) {
  require(scores.size() == truth.size(), ErrorCode::kInvalidArgument,
          "scores and labels differ in length");
  const std::size_t pos = truth.count();
  require(pos > 0 && pos < truth.size(), ErrorCode::kDegenerate,
          "AUC undefined: labels are all " + std::string(pos == 0 ? "negative" : "positive"));
  for (double s : scores) {
    require(std::isfinite(s), ErrorCode::kInvalidArgument, "non-finite score");
  }
}

// Indices ordered by descending score.
std::vector<std::size_t> order_desc(std::span<const double> scores) {
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return idx;
}

void check_relevant(const FeatureRanking& ranking, const std::set<std::string>& relevant) {
  require(!relevant.empty(), ErrorCode::kDegenerate, "no ground-truth anomalous features");
  for (const auto& f : relevant) {
    require(ranking.position(f).has_value(), ErrorCode::kInvalidArgument,
            "ground-truth feature '" + f + "' is not in the ranking");
  }
}

}  // namespace

ConfusionCounts confusion(const TimeslotLabels& predicted, const TimeslotLabels& truth) {
  require(predicted.size() == truth.size(), ErrorCode::kInvalidArgument,
          "predicted and true labels differ in length");
  ConfusionCounts c;
  for (std::size_t t = 0; t < truth.size(); ++t) {
    if (predicted[t] && truth[t]) ++c.tp;
    else if (predicted[t]) ++c.fp;
    else if (truth[t]) ++c.fn;
    else ++c.tn;
  }
  return c;
}

double precision(const ConfusionCounts& c) {
  require(c.tp + c.fp > 0, ErrorCode::kDegenerate, "precision undefined: no alarms raised");
  return static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
}

double recall(const ConfusionCounts& c) {
  require(c.tp + c.fn > 0, ErrorCode::kDegenerate, "recall undefined: no true anomalies");
  return static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
}

std::pair<double, double> precision_recall(const ConfusionCounts& c) {
  return {precision(c), recall(c)};
}

double pr_auc(std::span<const double> scores, const TimeslotLabels& truth) {
  check_scores_vs_labels(scores, truth);
  const auto idx = order_desc(scores);
  const double positives = static_cast<double>(truth.count());
  std::size_t tp = 0, seen = 0;
  double prev_recall = 0.0, auc = 0.0;
  for (std::size_t i = 0; i < idx.size();) {
    const double block_score = scores[idx[i]];
    while (i < idx.size() && scores[idx[i]] == block_score) {
      tp += truth[idx[i]];
      ++seen;
      ++i;
    }
    const double r = static_cast<double>(tp) / positives;
    const double p = static_cast<double>(tp) / static_cast<double>(seen);
    auc += (r - prev_recall) * p;
    prev_recall = r;
  }
  return auc;
}

double roc_auc(std::span<const double> scores, const TimeslotLabels& truth) {
  check_scores_vs_labels(scores, truth);
  const auto idx = order_desc(scores);
  const double positives = static_cast<double>(truth.count());
  const double negatives = static_cast<double>(truth.size()) - positives;
  std::size_t tp = 0, fp = 0;
  double prev_tpr = 0.0, prev_fpr = 0.0, auc = 0.0;
  for (std::size_t i = 0; i < idx.size();) {
    const double block_score = scores[idx[i]];
    while (i < idx.size() && scores[idx[i]] == block_score) {
      if (truth[idx[i]]) ++tp;
      else ++fp;
      ++i;
    }
    const double tpr = static_cast<double>(tp) / positives;
    const double fpr = static_cast<double>(fp) / negatives;
    auc += (fpr - prev_fpr) * 0.5 * (tpr + prev_tpr);
    prev_tpr = tpr;
    prev_fpr = fpr;
  }
  return auc;
}

double ndcg(const FeatureRanking& ranking, const std::set<std::string>& relevant) {
  check_relevant(ranking, relevant);
  double dcg = 0.0;
  const auto& entries = ranking.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (relevant.count(entries[i].name)) dcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
  }
  double idcg = 0.0;
  for (std::size_t i = 0; i < relevant.size(); ++i) {
    idcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
  }
  return dcg / idcg;
}

ReadingEffort reading_effort(const FeatureRanking& ranking, const std::set<std::string>& relevant) {
  check_relevant(ranking, relevant);
  ReadingEffort r;
  r.t = relevant.size();
  for (const auto& f : relevant) r.m = std::max(r.m, *ranking.position(f));
  r.e = r.m - r.t;
  return r;
}

MetricMatrix dataset_ranks(const MetricMatrix& metric) {
  require(!metric.empty(), ErrorCode::kInvalidArgument, "empty metric matrix");
  const std::size_t k = metric.size();
  const std::size_t n = metric.front().size();
  for (const auto& row : metric) {
    require(row.size() == n, ErrorCode::kInvalidArgument,
            "metric matrix has missing entries (ragged rows)");
    for (double v : row) {
      require(std::isfinite(v), ErrorCode::kInvalidArgument,
              "metric matrix has missing (non-finite) entries");
    }
  }
  MetricMatrix ranks(k, std::vector<double>(n, 0.0));
  std::vector<std::size_t> order(k);
  for (std::size_t d = 0; d < n; ++d) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return metric[a][d] > metric[b][d]; });
    for (std::size_t i = 0; i < k;) {
      std::size_t j = i;
      while (j < k && metric[order[j]][d] == metric[order[i]][d]) ++j;
      // Positions i..j-1 (0-based) share ranks i+1..j.
      const double shared = 0.5 * static_cast<double>(i + 1 + j);
      for (std::size_t p = i; p < j; ++p) ranks[order[p]][d] = shared;
      i = j;
    }
  }
  return ranks;
}

std::vector<double> average_ranks(const MetricMatrix& metric) {
  const MetricMatrix ranks = dataset_ranks(metric);
  std::vector<double> out;
  out.reserve(ranks.size());
  for (const auto& row : ranks) {
    out.push_back(std::accumulate(row.begin(), row.end(), 0.0) / static_cast<double>(row.size()));
  }
  return out;
}

double nemenyi_q(std::size_t k, double alpha) {
  require(k >= 2 && k <= 20, ErrorCode::kInvalidArgument,
          "Nemenyi table covers 2..20 algorithms, got " + std::to_string(k));
  if (std::abs(alpha - 0.05) < 1e-12) return kQ05[k - 2];
  if (std::abs(alpha - 0.10) < 1e-12) return kQ10[k - 2];
  fail(ErrorCode::kInvalidArgument, "Nemenyi alpha must be 0.05 or 0.10");
}

double nemenyi_cd(std::size_t k, std::size_t n_datasets, double alpha) {
  require(n_datasets >= 1, ErrorCode::kInvalidArgument, "Nemenyi needs at least one dataset");
  const double kk = static_cast<double>(k);
  return nemenyi_q(k, alpha) * std::sqrt(kk * (kk + 1.0) / (6.0 * static_cast<double>(n_datasets)));
}

std::vector<std::pair<std::size_t, std::size_t>> nemenyi_linked_pairs(
    std::span<const double> mean_ranks, double cd) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < mean_ranks.size(); ++i) {
    for (std::size_t j = i + 1; j < mean_ranks.size(); ++j) {
      if (std::abs(mean_ranks[i] - mean_ranks[j]) < cd) out.emplace_back(i, j);
    }
  }
  return out;
}

double median(std::vector<double> values) {
  require(!values.empty(), ErrorCode::kInvalidArgument, "median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace hurra
