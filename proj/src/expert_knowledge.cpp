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

#include "hurra/expert_knowledge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hurra/error.hpp"

namespace hurra {

EKBase::EKBase(std::map<std::string, EKCounters> features) : features_(std::move(features)) {
  for (const auto& [name, c] : features_) {
    require(c.n_plus <= c.n && c.n_minus <= c.n, ErrorCode::kInvalidArgument,
            "expert-knowledge counters for '" + name + "' exceed n");
  }
}

double EKBase::k_plus(const std::string& feature) const {
  auto it = features_.find(feature);
  if (it == features_.end() || it->second.n == 0) return 0.0;
  return static_cast<double>(it->second.n_plus) / static_cast<double>(it->second.n);
}

double EKBase::k_minus(const std::string& feature) const {
  auto it = features_.find(feature);
  if (it == features_.end() || it->second.n == 0) return 0.0;
  return static_cast<double>(it->second.n_minus) / static_cast<double>(it->second.n);
}

FeatureScores ek_apply(const FeatureScores& s, const EKBase& base, const EKGains& gains) {
  require(std::isfinite(gains.gamma_plus) && gains.gamma_plus >= 0.0 &&
              std::isfinite(gains.gamma_minus) && gains.gamma_minus >= 0.0,
          ErrorCode::kInvalidArgument, "expert-knowledge gains must be finite and >= 0");
  FeatureScores out;
  for (const auto& [name, score] : s) {
    require(std::isfinite(score), ErrorCode::kInvalidArgument,
            "feature '" + name + "' has a non-finite score");
    const double m = 1.0 + gains.gamma_plus * base.k_plus(name) - gains.gamma_minus * base.k_minus(name);
    out[name] = m < 0.0 ? 0.0 : score * m;
  }
  return out;
}

EKBase ek_update(const EKBase& base, const FeatureScores& s, const GroundTruth& gt) {
  const std::set<std::string> flagged = derive_feature_labels(gt);
  double floor = std::numeric_limits<double>::infinity();
  bool any_flagged = false;
  for (const auto& [name, score] : s) {
    if (flagged.count(name)) {
      floor = std::min(floor, score);
      any_flagged = true;
    }
  }
  auto counters = base.features();
  for (const auto& [name, score] : s) {
    EKCounters& c = counters[name];
    ++c.n;
    if (flagged.count(name)) {
      ++c.n_plus;
    } else if (any_flagged && score > floor) {
      ++c.n_minus;
    }
  }
  return EKBase(std::move(counters));
}

EKBase ek_merge(std::span<const EKBase> bases) {
  std::map<std::string, EKCounters> sum;
  for (const EKBase& b : bases) {
    for (const auto& [name, c] : b.features()) {
      EKCounters& t = sum[name];
      t.n += c.n;
      t.n_plus += c.n_plus;
      t.n_minus += c.n_minus;
    }
  }
  return EKBase(std::move(sum));
}

}  // namespace hurra
