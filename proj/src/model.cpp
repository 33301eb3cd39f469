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

#include "hurra/model.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "hurra/error.hpp"

namespace hurra {

Dataset::Dataset(std::string name, std::vector<std::string> feature_names,
                 std::vector<Minutes> timestamps, std::vector<Cell> values)
    : name_(std::move(name)),
      feature_names_(std::move(feature_names)),
      timestamps_(std::move(timestamps)),
      values_(std::move(values)) {
  require(!feature_names_.empty(), ErrorCode::kEmpty, "dataset has no features");
  require(!timestamps_.empty(), ErrorCode::kEmpty, "dataset has no timeslots");
  require(values_.size() == feature_names_.size() * timestamps_.size(),
          ErrorCode::kInvalidArgument, "value matrix does not match F x T");
  std::unordered_set<std::string> seen;
  for (const auto& f : feature_names_) {
    require(seen.insert(f).second, ErrorCode::kFormat, "duplicate feature name '" + f + "'");
  }
  for (std::size_t t = 1; t < timestamps_.size(); ++t) {
    require(timestamps_[t] > timestamps_[t - 1], ErrorCode::kFormat,
            "timestamps not strictly increasing at index " + std::to_string(t));
  }
  for (const auto& c : values_) {
    require(!c || std::isfinite(*c), ErrorCode::kFormat, "non-finite value in dataset");
  }
}

Dataset Dataset::dense(std::string name, std::vector<std::string> feature_names,
                       std::vector<Minutes> timestamps, const std::vector<double>& values) {
  std::vector<Cell> cells(values.begin(), values.end());
  return Dataset(std::move(name), std::move(feature_names), std::move(timestamps),
                 std::move(cells));
}

bool Dataset::has_missing() const {
  return std::any_of(values_.begin(), values_.end(), [](const Cell& c) { return !c; });
}

std::optional<std::size_t> Dataset::feature_index(const std::string& name) const {
  auto it = std::find(feature_names_.begin(), feature_names_.end(), name);
  if (it == feature_names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - feature_names_.begin());
}

std::vector<double> Dataset::feature_matrix() const {
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    require(values_[i].has_value(), ErrorCode::kInvalidArgument,
            "dataset '" + name_ + "' has missing values; preprocess it first");
    out[i] = *values_[i];
  }
  return out;
}

std::vector<double> Dataset::point_matrix() const {
  const std::size_t F = num_features(), T = num_timeslots();
  std::vector<double> out(F * T);
  for (std::size_t j = 0; j < F; ++j) {
    for (std::size_t t = 0; t < T; ++t) {
      const Cell& c = at(j, t);
      require(c.has_value(), ErrorCode::kInvalidArgument,
              "dataset '" + name_ + "' has missing values; preprocess it first");
      out[t * F + j] = *c;
    }
  }
  return out;
}

Dataset Dataset::renamed(std::string name) const {
  Dataset d = *this;
  d.name_ = std::move(name);
  return d;
}

GroundTruth::GroundTruth(std::vector<std::string> feature_names, std::size_t num_timeslots,
                         std::vector<std::uint8_t> labels)
    : feature_names_(std::move(feature_names)),
      num_timeslots_(num_timeslots),
      labels_(std::move(labels)) {
  require(labels_.size() == feature_names_.size() * num_timeslots_,
          ErrorCode::kInvalidArgument, "label matrix does not match F x T");
  for (auto v : labels_) {
    require(v <= 1, ErrorCode::kFormat, "ground-truth labels must be 0 or 1");
  }
}

TimeslotLabels::TimeslotLabels(std::vector<std::uint8_t> a) : a_(std::move(a)) {
  for (auto v : a_) {
    require(v <= 1, ErrorCode::kInvalidArgument, "timeslot labels must be 0 or 1");
  }
}

std::size_t TimeslotLabels::count() const {
  return static_cast<std::size_t>(std::count(a_.begin(), a_.end(), std::uint8_t{1}));
}

void ScoreSeries::validate() const {
  for (std::size_t t = 0; t < scores.size(); ++t) {
    require(std::isfinite(scores[t]), ErrorCode::kInternal,
            detector_id + " produced a non-finite score at timeslot " + std::to_string(t));
  }
  if (binary) {
    require(binary->size() == scores.size(), ErrorCode::kInternal,
            "binary vector length differs from score length");
  }
}

namespace {

bool ranks_before(const RankedFeature& a, const RankedFeature& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.name < b.name;
}

}  // namespace

FeatureRanking::FeatureRanking(std::vector<RankedFeature> entries) : entries_(std::move(entries)) {
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    require(std::isfinite(entries_[i].score), ErrorCode::kInvalidArgument,
            "non-finite score for feature '" + entries_[i].name + "'");
    require(seen.insert(entries_[i].name).second, ErrorCode::kInvalidArgument,
            "feature '" + entries_[i].name + "' ranked twice");
    if (i > 0) {
      require(ranks_before(entries_[i - 1], entries_[i]), ErrorCode::kInvalidArgument,
              "ranking entries out of order at position " + std::to_string(i + 1));
    }
  }
}

std::optional<std::size_t> FeatureRanking::position(const std::string& name) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].name == name) return i + 1;
  }
  return std::nullopt;
}

FeatureScores FeatureRanking::as_scores() const {
  FeatureScores out;
  for (const auto& e : entries_) out[e.name] = e.score;
  return out;
}

TimeslotLabels derive_timeslot_labels(const GroundTruth& gt) {
  std::vector<std::uint8_t> a(gt.num_timeslots(), 0);
  for (std::size_t j = 0; j < gt.num_features(); ++j) {
    for (std::size_t t = 0; t < gt.num_timeslots(); ++t) {
      if (gt.at(j, t)) a[t] = 1;
    }
  }
  return TimeslotLabels(std::move(a));
}

std::set<std::string> derive_feature_labels(const GroundTruth& gt) {
  std::set<std::string> out;
  for (std::size_t j = 0; j < gt.num_features(); ++j) {
    for (std::size_t t = 0; t < gt.num_timeslots(); ++t) {
      if (gt.at(j, t)) {
        out.insert(gt.feature_names()[j]);
        break;
      }
    }
  }
  return out;
}

FeatureRanking rank_features(const FeatureScores& scores) {
  std::vector<RankedFeature> entries;
  entries.reserve(scores.size());
  for (const auto& [name, s] : scores) {
    require(std::isfinite(s), ErrorCode::kInvalidArgument,
            "non-finite score for feature '" + name + "'");
    entries.push_back({name, s});
  }
  std::sort(entries.begin(), entries.end(), ranks_before);
  return FeatureRanking(std::move(entries));
}

}  // namespace hurra
