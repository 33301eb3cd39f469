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

#include "hurra/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "hurra/error.hpp"

namespace hurra {
namespace {

constexpr double kFixedPointTolerance = 1e-12;

Minutes median_interval(const std::vector<Minutes>& ts) {
  std::vector<Minutes> diffs;
  diffs.reserve(ts.size() - 1);
  for (std::size_t i = 1; i < ts.size(); ++i) diffs.push_back(ts[i] - ts[i - 1]);
  std::sort(diffs.begin(), diffs.end());
  const std::size_t n = diffs.size();
  double median = (n % 2 == 1) ? static_cast<double>(diffs[n / 2])
                               : 0.5 * static_cast<double>(diffs[n / 2 - 1] + diffs[n / 2]);
  return std::max<Minutes>(1, std::llround(median));
}

std::pair<double, double> mean_and_stddev(std::span<const Cell> row) {
  double sum = 0.0;
  for (const auto& c : row) sum += *c;
  const double mean = sum / static_cast<double>(row.size());
  double ss = 0.0;
  for (const auto& c : row) ss += (*c - mean) * (*c - mean);
  return {mean, std::sqrt(ss / static_cast<double>(row.size()))};
}

}  // namespace

Dataset align_and_pad(const Dataset& raw) {
  const auto& ts = raw.timestamps();
  require(ts.size() >= 2, ErrorCode::kInvalidArgument,
          "need at least 2 timestamps to infer the sampling interval");
  const Minutes step = median_interval(ts);
  const Minutes first = ts.front();
  auto slot_of = [&](Minutes t) {
    return static_cast<std::size_t>(
        std::llround(static_cast<double>(t - first) / static_cast<double>(step)));
  };
  const std::size_t T = slot_of(ts.back()) + 1;
  const std::size_t F = raw.num_features();

  std::vector<Minutes> grid(T);
  for (std::size_t t = 0; t < T; ++t) grid[t] = first + static_cast<Minutes>(t) * step;

  std::vector<Cell> values(F * T);
  for (std::size_t src = 0; src < ts.size(); ++src) {
    const std::size_t dst = slot_of(ts[src]);
    for (std::size_t j = 0; j < F; ++j) {
      const Cell& c = raw.at(j, src);
      if (c) values[j * T + dst] = c;
    }
  }
  return Dataset(raw.name(), raw.feature_names(), std::move(grid), std::move(values));
}

GroundTruth align_ground_truth(const GroundTruth& g, const std::vector<Minutes>& label_times,
                               const std::vector<Minutes>& grid) {
  require(label_times.size() == g.num_timeslots(), ErrorCode::kInvalidArgument,
          "ground truth and its timestamps differ in length");
  if (label_times == grid) return g;
  require(!grid.empty(), ErrorCode::kInvalidArgument, "empty time grid");
  const Minutes step = grid.size() >= 2 ? grid[1] - grid[0] : 1;
  const std::size_t T = grid.size(), F = g.num_features();
  std::vector<std::uint8_t> labels(F * T, 0);
  for (std::size_t src = 0; src < label_times.size(); ++src) {
    const double pos = static_cast<double>(label_times[src] - grid.front()) / static_cast<double>(step);
    const long long slot = std::llround(pos);
    require(slot >= 0 && static_cast<std::size_t>(slot) < T, ErrorCode::kInvalidArgument,
            "ground-truth timestamp " + std::to_string(label_times[src]) +
                " lies outside the dataset's time range");
    for (std::size_t j = 0; j < F; ++j) {
      if (g.at(j, src)) labels[j * T + static_cast<std::size_t>(slot)] = 1;
    }
  }
  return GroundTruth(g.feature_names(), T, std::move(labels));
}

std::pair<Dataset, PreprocessReport> drop_degenerate_features(const Dataset& d) {
  PreprocessReport report;
  const std::size_t T = d.num_timeslots();
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < d.num_features(); ++j) {
    auto row = d.row(j);
    std::size_t missing = 0;
    std::optional<double> first;
    bool constant = true;
    for (const auto& c : row) {
      if (!c) {
        ++missing;
        continue;
      }
      if (!first) {
        first = *c;
      } else if (*c != *first) {
        constant = false;
      }
    }
    const double frac = static_cast<double>(missing) / static_cast<double>(T);
    if (frac > kMaxMissingFraction) {
      report.dropped_missing.push_back({d.feature_names()[j], frac});
    } else if (constant) {
      report.dropped_constant.push_back(d.feature_names()[j]);
    } else {
      keep.push_back(j);
    }
  }
  require(!keep.empty(), ErrorCode::kEmpty,
          "dataset '" + d.name() + "': every feature was dropped (constant or >50% missing)");

  std::vector<std::string> names;
  std::vector<Cell> values;
  values.reserve(keep.size() * T);
  for (auto j : keep) {
    names.push_back(d.feature_names()[j]);
    auto row = d.row(j);
    values.insert(values.end(), row.begin(), row.end());
  }
  return {Dataset(d.name(), std::move(names), d.timestamps(), std::move(values)),
          std::move(report)};
}

Dataset impute_sample_and_hold(const Dataset& d, std::size_t* imputed) {
  const std::size_t F = d.num_features(), T = d.num_timeslots();
  std::vector<Cell> values = d.cells();
  std::size_t filled = 0;
  for (std::size_t j = 0; j < F; ++j) {
    Cell* row = values.data() + j * T;
    auto first = std::find_if(row, row + T, [](const Cell& c) { return c.has_value(); });
    require(first != row + T, ErrorCode::kInvalidArgument,
            "feature '" + d.feature_names()[j] + "' has no observed value to hold");
    Cell held = *first;
    for (std::size_t t = 0; t < T; ++t) {
      if (row[t]) {
        held = row[t];
      } else {
        row[t] = held;
        ++filled;
      }
    }
  }
  if (imputed) *imputed = filled;
  return Dataset(d.name(), d.feature_names(), d.timestamps(), std::move(values));
}

std::pair<Dataset, PreprocessReport> standardize(const Dataset& d) {
  require(!d.has_missing(), ErrorCode::kInvalidArgument,
          "standardize: dataset still has missing values");
  const std::size_t F = d.num_features(), T = d.num_timeslots();
  PreprocessReport report;
  std::vector<Cell> values = d.cells();
  for (std::size_t j = 0; j < F; ++j) {
    auto [mean, sd] = mean_and_stddev(d.row(j));
    require(sd > 0.0, ErrorCode::kInvalidArgument,
            "standardize: feature '" + d.feature_names()[j] +
                "' has zero variance (constant features must be dropped first)");
    report.stats.push_back({d.feature_names()[j], mean, sd});
    if (std::abs(mean) <= kFixedPointTolerance && std::abs(sd - 1.0) <= kFixedPointTolerance) {
      continue;
    }
    for (std::size_t t = 0; t < T; ++t) {
      Cell& c = values[j * T + t];
      c = (*c - mean) / sd;
    }
  }
  return {Dataset(d.name(), d.feature_names(), d.timestamps(), std::move(values)),
          std::move(report)};
}

std::pair<Dataset, PreprocessReport> preprocess(const Dataset& raw) {
  Dataset aligned = align_and_pad(raw);
  auto [kept, report] = drop_degenerate_features(aligned);
  std::size_t imputed = 0;
  Dataset filled = impute_sample_and_hold(kept, &imputed);
  auto [normalized, std_report] = standardize(filled);
  report.imputed_cells = imputed;
  report.stats = std::move(std_report.stats);
  return {std::move(normalized), std::move(report)};
}

}  // namespace hurra
