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

// Seeded generator of labelled multivariate KPI series.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hurra/model.hpp"

namespace hurra {

enum class AnomalyKind { kSpike, kLevelShift, kVarianceBurst };
enum class BaseKind { kAR1, kSeasonal, kMixed };

// spike, level_shift, variance_burst / ar1, seasonal, mixed.
std::string_view anomaly_kind_name(AnomalyKind k);
AnomalyKind parse_anomaly_kind(std::string_view name);
std::string_view base_kind_name(BaseKind k);
BaseKind parse_base_kind(std::string_view name);

struct SynthSpec {
  std::string name = "synth";
  std::size_t features = 20;
  std::size_t timeslots = 2000;
  std::size_t n_culprits = 1;
  double prevalence = 0.05;
  AnomalyKind anomaly = AnomalyKind::kLevelShift;
  BaseKind base = BaseKind::kAR1;
  double missing_frac = 0.0;
  std::uint64_t seed = 0;
  // When non-empty, feature names are drawn from this pool.
  std::vector<std::string> name_pool;
};

// Perturbation sizes in units of the feature's own standard deviation.
inline constexpr double kSpikeSigmas = 8.0;
inline constexpr double kLevelShiftSigmas = 5.0;
inline constexpr double kVarianceBurstFactor = 4.0;
// Share of the anomaly window that receives spikes.
inline constexpr double kSpikeDensity = 0.3;
inline constexpr double kAr1Phi = 0.8;
inline constexpr Minutes kSeasonPeriod = 1440;

struct SynthCase {
  Dataset data;
  GroundTruth truth;
  std::vector<std::string> culprits;  // sorted
  std::size_t window_start = 0;
  std::size_t window_length = 0;
};

// Throws kInvalidArgument on an invalid spec.
void validate(const SynthSpec& spec);

/// Each feature is offset + scale * (AR(1) + optional daily sinusoid + unit
/// noise). One contiguous window of round(prevalence * T) slots is placed
/// uniformly at random and the culprits are perturbed inside it: spikes on
/// round(0.3 * window) shared slots, a level shift over the whole window, or
/// a variance burst of the noise term. g marks exactly the perturbed cells.
/// Cells are masked missing independently with probability missing_frac;
/// a masked cell keeps its g label.
SynthCase generate(const SynthSpec& spec);

/// n independent cases; case i uses seed + i and is named <name>_<iii>.
/// Needs a name pool: its first entry is the chronic feature, present in
/// every case and a culprit with probability p_recurring (drawn per case from
/// `seed`). The remaining names are drawn from the rest of the pool.
std::vector<SynthCase> generate_corpus(std::size_t n, const SynthSpec& spec, double p_recurring,
                                       std::uint64_t seed);

// <prefix>_000, <prefix>_001, ...
std::vector<std::string> default_name_pool(std::size_t n, std::string_view prefix = "kpi");

}  // namespace hurra
