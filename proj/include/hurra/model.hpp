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

// Shared data model: the KPI matrix, expert labels, anomaly scores and
// feature rankings, plus the label derivations every stage relies on.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace hurra {

// Minutes since the epoch. KPIs are sampled on a one-minute grid.
using Minutes = std::int64_t;

// A KPI sample; std::nullopt marks a missing sample.
using Cell = std::optional<double>;

using FeatureScores = std::map<std::string, double>;

/// Multivariate KPI time series: F features (rows) by T timeslots (columns).
/// Immutable once constructed; the constructor enforces unique feature names,
/// strictly increasing timestamps and consistent dimensions.
class Dataset {
 public:
  Dataset(std::string name, std::vector<std::string> feature_names,
          std::vector<Minutes> timestamps, std::vector<Cell> values);

  // Convenience for fully observed data, row-major F x T.
  static Dataset dense(std::string name, std::vector<std::string> feature_names,
                       std::vector<Minutes> timestamps, const std::vector<double>& values);

  const std::string& name() const { return name_; }
  std::size_t num_features() const { return feature_names_.size(); }
  std::size_t num_timeslots() const { return timestamps_.size(); }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const std::vector<Minutes>& timestamps() const { return timestamps_; }

  const Cell& at(std::size_t feature, std::size_t t) const {
    return values_[feature * timestamps_.size() + t];
  }
  std::span<const Cell> row(std::size_t feature) const {
    return {values_.data() + feature * timestamps_.size(), timestamps_.size()};
  }
  const std::vector<Cell>& cells() const { return values_; }

  bool has_missing() const;
  std::optional<std::size_t> feature_index(const std::string& name) const;

  // Row-major F x T values. Throws if any cell is missing.
  std::vector<double> feature_matrix() const;
  // Row-major T x F values (one row per timeslot), the layout detectors use.
  // Throws if any cell is missing.
  std::vector<double> point_matrix() const;

  Dataset renamed(std::string name) const;

 private:
  std::string name_;
  std::vector<std::string> feature_names_;
  std::vector<Minutes> timestamps_;
  std::vector<Cell> values_;
};

/// Expert label matrix g, F x T, entries in {0,1}.
class GroundTruth {
 public:
  GroundTruth(std::vector<std::string> feature_names, std::size_t num_timeslots,
              std::vector<std::uint8_t> labels);

  std::size_t num_features() const { return feature_names_.size(); }
  std::size_t num_timeslots() const { return num_timeslots_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  std::uint8_t at(std::size_t feature, std::size_t t) const {
    return labels_[feature * num_timeslots_ + t];
  }
  const std::vector<std::uint8_t>& labels() const { return labels_; }

 private:
  std::vector<std::string> feature_names_;
  std::size_t num_timeslots_;
  std::vector<std::uint8_t> labels_;
};

/// Binary per-timeslot vector a.
class TimeslotLabels {
 public:
  TimeslotLabels() = default;
  explicit TimeslotLabels(std::vector<std::uint8_t> a);

  std::size_t size() const { return a_.size(); }
  std::uint8_t operator[](std::size_t t) const { return a_[t]; }
  const std::vector<std::uint8_t>& values() const { return a_; }
  std::size_t count() const;

  friend bool operator==(const TimeslotLabels&, const TimeslotLabels&) = default;

 private:
  std::vector<std::uint8_t> a_;
};

/// Detector output: one score per timeslot, larger means more anomalous.
struct ScoreSeries {
  std::vector<double> scores;
  std::optional<std::vector<std::uint8_t>> binary;
  std::string detector_id;
  std::uint64_t seed = 0;
  // Free-form notes (e.g. how warmup slots were scored).
  std::vector<std::string> notes;

  std::size_t size() const { return scores.size(); }
  // Throws on a non-finite score or a binary vector of the wrong length.
  void validate() const;
};

struct RankedFeature {
  std::string name;
  double score = 0.0;

  friend bool operator==(const RankedFeature&, const RankedFeature&) = default;
};

/// Features ordered by descending score, ties by ascending name.
class FeatureRanking {
 public:
  FeatureRanking() = default;
  // Entries must already be in ranking order; validated.
  explicit FeatureRanking(std::vector<RankedFeature> entries);

  const std::vector<RankedFeature>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  // 1-based position of a feature, if present.
  std::optional<std::size_t> position(const std::string& name) const;
  FeatureScores as_scores() const;

  friend bool operator==(const FeatureRanking&, const FeatureRanking&) = default;

 private:
  std::vector<RankedFeature> entries_;
};

// a_t = 1 iff some feature is flagged at t.
TimeslotLabels derive_timeslot_labels(const GroundTruth& gt);

// Features flagged at least once.
std::set<std::string> derive_feature_labels(const GroundTruth& gt);

// Throws kInvalidArgument naming the feature if a score is not finite.
FeatureRanking rank_features(const FeatureScores& scores);

}  // namespace hurra
