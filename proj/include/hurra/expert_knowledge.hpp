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

// Expert knowledge: per-KPI counters of how often a KPI was a culprit (n+)
// or a high-scoring bystander (n-), used to re-weight feature scores.

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "hurra/model.hpp"

namespace hurra {

struct EKCounters {
  std::uint64_t n = 0;
  std::uint64_t n_plus = 0;
  std::uint64_t n_minus = 0;

  friend bool operator==(const EKCounters&, const EKCounters&) = default;
};

class EKBase {
 public:
  EKBase() = default;
  // Throws kInvalidArgument if n_plus or n_minus exceed n.
  explicit EKBase(std::map<std::string, EKCounters> features);

  const std::map<std::string, EKCounters>& features() const { return features_; }
  bool empty() const { return features_.empty(); }

  // n+/n and n-/n; 0 for an unknown feature.
  double k_plus(const std::string& feature) const;
  double k_minus(const std::string& feature) const;

  friend bool operator==(const EKBase&, const EKBase&) = default;

 private:
  std::map<std::string, EKCounters> features_;
};

struct EKGains {
  double gamma_plus = 2.0;
  double gamma_minus = 0.0;
};

// s_j * (1 + g+ K+_j - g- K-_j), clamped at 0 when the multiplier is
// negative. Throws kInvalidArgument on negative or non-finite gains.
FeatureScores ek_apply(const FeatureScores& s, const EKBase& base, const EKGains& gains);

/// Records one case. Every feature in `s` gets n += 1; those flagged in `gt`
/// also get n+ += 1, and the others get n- += 1 when their score exceeds the
/// lowest score among flagged features present in `s`.
EKBase ek_update(const EKBase& base, const FeatureScores& s, const GroundTruth& gt);

// Counter-wise sum.
EKBase ek_merge(std::span<const EKBase> bases);

}  // namespace hurra
