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

// CSV formats.
//
//   dataset:      timestamp,<kpi1>,<kpi2>,...   one row per timeslot,
//                 empty cell = missing
//   ground truth: same shape, 0/1 cells
//   scores:       timestamp,score[,binary]
//   ranking:      rank,feature,score
//
// Comma delimited, '.' decimal separator, no quoting. Numbers are written in
// shortest round-trip form so that read(write(x)) == x bit for bit.

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "hurra/model.hpp"

namespace hurra::csv {

std::string format_double(double v);

Dataset read_dataset(std::istream& in, std::string name);
Dataset read_dataset_file(const std::string& path);
void write_dataset(std::ostream& out, const Dataset& d);
void write_dataset_file(const std::string& path, const Dataset& d);

// `timestamps`, when given, receives the timestamp column.
GroundTruth read_ground_truth(std::istream& in, std::vector<Minutes>* timestamps = nullptr);
GroundTruth read_ground_truth_file(const std::string& path,
                                   std::vector<Minutes>* timestamps = nullptr);
void write_ground_truth(std::ostream& out, const GroundTruth& g,
                        const std::vector<Minutes>& timestamps);
void write_ground_truth_file(const std::string& path, const GroundTruth& g,
                             const std::vector<Minutes>& timestamps);

// ScoreSeries carries no timestamps; `timestamps`, when given, receives them.
ScoreSeries read_scores(std::istream& in, std::vector<Minutes>* timestamps = nullptr);
ScoreSeries read_scores_file(const std::string& path, std::vector<Minutes>* timestamps = nullptr);
void write_scores(std::ostream& out, const ScoreSeries& s, const std::vector<Minutes>& timestamps);
void write_scores_file(const std::string& path, const ScoreSeries& s,
                       const std::vector<Minutes>& timestamps);

FeatureRanking read_ranking(std::istream& in);
FeatureRanking read_ranking_file(const std::string& path);
void write_ranking(std::ostream& out, const FeatureRanking& r);
void write_ranking_file(const std::string& path, const FeatureRanking& r);

// Writes to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::string& path, std::string_view contents);
std::string read_file(const std::string& path);

}  // namespace hurra::csv
