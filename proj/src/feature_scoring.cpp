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

#include "hurra/feature_scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "hurra/error.hpp"
#include "hurra/random.hpp"

namespace hurra {
namespace {

void check_inputs(const Dataset& dhat, const TimeslotLabels& a) {
  require(a.size() == dhat.num_timeslots(), ErrorCode::kInvalidArgument,
          "anomaly vector has " + std::to_string(a.size()) + " slots, dataset has " +
              std::to_string(dhat.num_timeslots()));
  require(!dhat.has_missing(), ErrorCode::kInvalidArgument,
          "feature scoring needs a dataset without missing cells (run preprocess first)");
  const std::size_t n = a.count();
  require(n > 0, ErrorCode::kDegenerate,
          "no timeslot is flagged anomalous; lower the binarization quantile or check the detector");
  require(n < a.size(), ErrorCode::kDegenerate,
          "every timeslot is flagged anomalous; raise the binarization quantile");
}

struct RegimeMeans {
  double anomalous = 0.0;
  double normal = 0.0;
};

RegimeMeans regime_means(std::span<const Cell> row, const TimeslotLabels& a) {
  double sa = 0.0, sn = 0.0;
  std::size_t na = 0, nn = 0;
  for (std::size_t t = 0; t < row.size(); ++t) {
    if (a[t]) {
      sa += *row[t];
      ++na;
    } else {
      sn += *row[t];
      ++nn;
    }
  }
  return {sa / static_cast<double>(na), sn / static_cast<double>(nn)};
}

// rank[j] for features ordered by value descending, ties by name.
std::vector<std::size_t> ranks_by(const std::vector<double>& value,
                                  const std::vector<std::string>& names) {
  std::vector<std::size_t> order(value.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (value[i] != value[j]) return value[i] > value[j];
    return names[i] < names[j];
  });
  std::vector<std::size_t> rank(value.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r + 1;
  return rank;
}

struct NormalFit {
  double mu = 0.0;
  double sigma = 0.0;
};

NormalFit fit_normal(std::span<const Cell> row, const TimeslotLabels& a) {
  double s = 0.0;
  std::size_t n = 0;
  for (std::size_t t = 0; t < row.size(); ++t) {
    if (!a[t]) {
      s += *row[t];
      ++n;
    }
  }
  const double mu = s / static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t t = 0; t < row.size(); ++t) {
    if (!a[t]) ss += (*row[t] - mu) * (*row[t] - mu);
  }
  return {mu, std::sqrt(ss / static_cast<double>(n))};
}

// 1 - s_jt, computed without cancellation.
double nd_tail(double x, double mu, double sigma) {
  if (sigma == 0.0) return x == mu ? 1.0 : 0.0;
  return std::erfc(std::abs(x - mu) / (sigma * std::numbers::sqrt2));
}

template <typename PerSample>
FeatureScores nd_family(const Dataset& dhat, const TimeslotLabels& a, PerSample per_sample) {
  check_inputs(dhat, a);
  require(a.size() - a.count() >= 2, ErrorCode::kDegenerate,
          "normal-distribution scoring needs at least two normal timeslots");
  FeatureScores out;
  const double n_anom = static_cast<double>(a.count());
  for (std::size_t j = 0; j < dhat.num_features(); ++j) {
    const auto row = dhat.row(j);
    const NormalFit fit = fit_normal(row, a);
    double sum = 0.0;
    for (std::size_t t = 0; t < row.size(); ++t) {
      if (a[t]) sum += per_sample(*row[t], fit);
    }
    out[dhat.feature_names()[j]] = sum / n_anom;
  }
  return out;
}

}  // namespace

std::string_view fs_name(FsKind kind) {
  switch (kind) {
    case FsKind::kFSa: return "fsa";
    case FsKind::kFSr: return "fsr";
    case FsKind::kRandom: return "random";
    case FsKind::kAlphabetical: return "alpha";
    case FsKind::kND: return "nd";
    case FsKind::kNDLog: return "ndlog";
  }
  return "?";
}

FsKind parse_fs(std::string_view name) {
  for (FsKind k : {FsKind::kFSa, FsKind::kFSr, FsKind::kRandom, FsKind::kAlphabetical,
                   FsKind::kND, FsKind::kNDLog}) {
    if (fs_name(k) == name) return k;
  }
  fail(ErrorCode::kInvalidArgument, "unknown feature-scoring policy '" + std::string(name) +
                                        "' (expected fsa, fsr, random, alpha, nd or ndlog)");
}

FeatureScores fs_average(const Dataset& dhat, const TimeslotLabels& a) {
  check_inputs(dhat, a);
  FeatureScores out;
  for (std::size_t j = 0; j < dhat.num_features(); ++j) {
    const RegimeMeans m = regime_means(dhat.row(j), a);
    out[dhat.feature_names()[j]] = std::abs(m.anomalous - m.normal);
  }
  return out;
}

FeatureScores fs_rank(const Dataset& dhat, const TimeslotLabels& a) {
  check_inputs(dhat, a);
  const std::size_t F = dhat.num_features();
  std::vector<double> anomalous(F), normal(F);
  for (std::size_t j = 0; j < F; ++j) {
    const RegimeMeans m = regime_means(dhat.row(j), a);
    anomalous[j] = m.anomalous;
    normal[j] = m.normal;
  }
  const auto r_plus = ranks_by(anomalous, dhat.feature_names());
  const auto r_minus = ranks_by(normal, dhat.feature_names());
  FeatureScores out;
  for (std::size_t j = 0; j < F; ++j) {
    const auto d = static_cast<double>(r_plus[j]) - static_cast<double>(r_minus[j]);
    out[dhat.feature_names()[j]] = std::abs(d);
  }
  return out;
}

FeatureScores fs_random(std::span<const std::string> features, std::uint64_t seed) {
  require(!features.empty(), ErrorCode::kInvalidArgument, "no features to score");
  std::vector<std::string> names(features.begin(), features.end());
  std::sort(names.begin(), names.end());
  std::vector<double> perm(names.size());
  std::iota(perm.begin(), perm.end(), 1.0);
  Rng rng(seed);
  rng.shuffle(perm);
  FeatureScores out;
  for (std::size_t i = 0; i < names.size(); ++i) out[names[i]] = perm[i];
  require(out.size() == names.size(), ErrorCode::kInvalidArgument, "duplicate feature names");
  return out;
}

FeatureScores fs_alphabetical(std::span<const std::string> features) {
  require(!features.empty(), ErrorCode::kInvalidArgument, "no features to score");
  std::vector<std::string> names(features.begin(), features.end());
  std::sort(names.begin(), names.end());
  FeatureScores out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    out[names[i]] = static_cast<double>(names.size() - i);
  }
  require(out.size() == names.size(), ErrorCode::kInvalidArgument, "duplicate feature names");
  return out;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double nd_sample_score(double x, double mu, double sigma) {
  if (sigma == 0.0) return x == mu ? 0.0 : 1.0;
  return std::erf(std::abs(x - mu) / (sigma * std::numbers::sqrt2));
}

FeatureScores fs_normal(const Dataset& dhat, const TimeslotLabels& a) {
  return nd_family(dhat, a, [](double x, const NormalFit& f) {
    return nd_sample_score(x, f.mu, f.sigma);
  });
}

FeatureScores fs_lognormal(const Dataset& dhat, const TimeslotLabels& a) {
  return nd_family(dhat, a, [](double x, const NormalFit& f) {
    return -std::log(std::max(nd_tail(x, f.mu, f.sigma), 1.0 - kNdLogCap));
  });
}

FeatureScores score_features(const Dataset& dhat, const TimeslotLabels& a,
                             const FSPolicy& policy) {
  switch (policy.kind) {
    case FsKind::kFSa: return fs_average(dhat, a);
    case FsKind::kFSr: return fs_rank(dhat, a);
    case FsKind::kRandom:
      require(policy.seed.has_value(), ErrorCode::kInvalidArgument, "random scoring needs a seed");
      return fs_random(dhat.feature_names(), *policy.seed);
    case FsKind::kAlphabetical: return fs_alphabetical(dhat.feature_names());
    case FsKind::kND: return fs_normal(dhat, a);
    case FsKind::kNDLog: return fs_lognormal(dhat, a);
  }
  fail(ErrorCode::kInternal, "unhandled feature-scoring policy");
}

}  // namespace hurra
