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

#include "hurra/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <set>

#include "hurra/error.hpp"
#include "hurra/random.hpp"

namespace hurra {
namespace {

constexpr std::uint64_t kMissingStream = 0x6d697373;

struct Chronic {
  std::string name;
  bool culprit = false;
};

std::string indexed(std::string_view prefix, std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "_%03zu", i);
  return std::string(prefix) + buf;
}

std::vector<std::string> pick(const std::vector<std::string>& from, std::size_t k, Rng& rng) {
  std::vector<std::string> out;
  for (std::size_t i : rng.sample_without_replacement(from.size(), k)) out.push_back(from[i]);
  return out;
}

SynthCase generate_impl(const SynthSpec& spec, const std::optional<Chronic>& chronic) {
  validate(spec);
  const std::size_t F = spec.features, T = spec.timeslots;
  Rng rng(spec.seed);

  std::vector<std::string> names;
  std::vector<std::string> culprits;
  if (spec.name_pool.empty()) {
    names = default_name_pool(F);
    culprits = pick(names, spec.n_culprits, rng);
  } else if (!chronic) {
    names = pick(spec.name_pool, F, rng);
    culprits = pick(names, spec.n_culprits, rng);
  } else {
    std::vector<std::string> rest;
    for (const auto& n : spec.name_pool) {
      if (n != chronic->name) rest.push_back(n);
    }
    std::vector<std::string> others = pick(rest, F - 1, rng);
    if (chronic->culprit) {
      culprits = pick(others, spec.n_culprits - 1, rng);
      culprits.push_back(chronic->name);
    } else {
      require(spec.n_culprits <= F - 1, ErrorCode::kInvalidArgument,
              "n_culprits must leave room for a non-culprit chronic feature");
      culprits = pick(others, spec.n_culprits, rng);
    }
    names = std::move(others);
    names.push_back(chronic->name);
  }
  std::sort(names.begin(), names.end());
  std::sort(culprits.begin(), culprits.end());
  const std::set<std::string> culprit_set(culprits.begin(), culprits.end());

  const std::size_t L = static_cast<std::size_t>(std::llround(spec.prevalence * static_cast<double>(T)));
  require(L >= 1, ErrorCode::kInvalidArgument, "anomaly window resolves to zero timeslots");
  const std::size_t start = rng.below(T - L + 1);
  std::vector<std::uint8_t> in_burst(T, 0);
  if (spec.anomaly == AnomalyKind::kSpike) {
    const std::size_t n_spikes =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(kSpikeDensity * static_cast<double>(L))));
    for (std::size_t i : rng.sample_without_replacement(L, n_spikes)) in_burst[start + i] = 1;
  } else {
    for (std::size_t t = start; t < start + L; ++t) in_burst[t] = 1;
  }

  std::vector<double> values(F * T);
  std::vector<std::uint8_t> labels(F * T, 0);
  std::vector<double> ar(T), season(T, 0.0), noise(T);
  for (std::size_t j = 0; j < F; ++j) {
    Rng frng(derive_seed(spec.seed, j + 1));
    const double offset = frng.uniform(0.0, 100.0);
    const double scale = frng.uniform(0.5, 5.0);
    const double amplitude = frng.uniform(1.0, 3.0);
    const double phase = frng.uniform(0.0, 2.0 * std::numbers::pi);
    const bool seasonal = spec.base == BaseKind::kSeasonal ||
                          (spec.base == BaseKind::kMixed && frng.bernoulli(0.5));

    ar[0] = frng.normal() / std::sqrt(1.0 - kAr1Phi * kAr1Phi);
    for (std::size_t t = 1; t < T; ++t) ar[t] = kAr1Phi * ar[t - 1] + frng.normal();
    for (std::size_t t = 0; t < T; ++t) noise[t] = frng.normal();
    for (std::size_t t = 0; t < T; ++t) {
      season[t] = seasonal ? amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(t) /
                                                       static_cast<double>(kSeasonPeriod) + phase)
                           : 0.0;
    }

    std::vector<double> base(T);
    double mean = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      base[t] = ar[t] + season[t] + noise[t];
      mean += base[t];
    }
    mean /= static_cast<double>(T);
    double var = 0.0;
    for (double v : base) var += (v - mean) * (v - mean);
    const double sigma = std::sqrt(var / static_cast<double>(T));

    if (culprit_set.count(names[j])) {
      for (std::size_t t = 0; t < T; ++t) {
        if (!in_burst[t]) continue;
        switch (spec.anomaly) {
          case AnomalyKind::kSpike: base[t] += kSpikeSigmas * sigma; break;
          case AnomalyKind::kLevelShift: base[t] += kLevelShiftSigmas * sigma; break;
          case AnomalyKind::kVarianceBurst: base[t] += (kVarianceBurstFactor - 1.0) * noise[t]; break;
        }
        labels[j * T + t] = 1;
      }
    }
    for (std::size_t t = 0; t < T; ++t) values[j * T + t] = offset + scale * base[t];
  }

  std::vector<Cell> cells(values.begin(), values.end());
  if (spec.missing_frac > 0.0) {
    Rng mrng(derive_seed(spec.seed, kMissingStream));
    for (auto& c : cells) {
      if (mrng.bernoulli(spec.missing_frac)) c.reset();
    }
  }
  std::vector<Minutes> timestamps(T);
  for (std::size_t t = 0; t < T; ++t) timestamps[t] = static_cast<Minutes>(t);

  return SynthCase{Dataset(spec.name, names, std::move(timestamps), std::move(cells)),
                   GroundTruth(names, T, std::move(labels)), std::move(culprits), start, L};
}

}  // namespace

std::string_view anomaly_kind_name(AnomalyKind k) {
  switch (k) {
    case AnomalyKind::kSpike: return "spike";
    case AnomalyKind::kLevelShift: return "level_shift";
    case AnomalyKind::kVarianceBurst: return "variance_burst";
  }
  return "?";
}

AnomalyKind parse_anomaly_kind(std::string_view name) {
  for (AnomalyKind k : {AnomalyKind::kSpike, AnomalyKind::kLevelShift, AnomalyKind::kVarianceBurst}) {
    if (anomaly_kind_name(k) == name) return k;
  }
  fail(ErrorCode::kInvalidArgument, "unknown anomaly kind '" + std::string(name) +
                                        "' (expected spike, level_shift or variance_burst)");
}

std::string_view base_kind_name(BaseKind k) {
  switch (k) {
    case BaseKind::kAR1: return "ar1";
    case BaseKind::kSeasonal: return "seasonal";
    case BaseKind::kMixed: return "mixed";
  }
  return "?";
}

BaseKind parse_base_kind(std::string_view name) {
  for (BaseKind k : {BaseKind::kAR1, BaseKind::kSeasonal, BaseKind::kMixed}) {
    if (base_kind_name(k) == name) return k;
  }
  fail(ErrorCode::kInvalidArgument,
       "unknown base kind '" + std::string(name) + "' (expected ar1, seasonal or mixed)");
}

void validate(const SynthSpec& spec) {
  require(spec.features >= 1, ErrorCode::kInvalidArgument, "synth: features must be >= 1");
  require(spec.timeslots >= 2, ErrorCode::kInvalidArgument, "synth: timeslots must be >= 2");
  require(spec.n_culprits >= 1 && spec.n_culprits <= spec.features, ErrorCode::kInvalidArgument,
          "synth: n_culprits must lie in [1, features]");
  require(spec.prevalence > 0.0 && spec.prevalence < 0.5, ErrorCode::kInvalidArgument,
          "synth: prevalence must lie in (0, 0.5)");
  require(spec.missing_frac >= 0.0 && spec.missing_frac < 0.4, ErrorCode::kInvalidArgument,
          "synth: missing_frac must lie in [0, 0.4)");
  if (!spec.name_pool.empty()) {
    const std::set<std::string> unique(spec.name_pool.begin(), spec.name_pool.end());
    require(unique.size() == spec.name_pool.size(), ErrorCode::kInvalidArgument,
            "synth: name_pool has duplicates");
    require(spec.name_pool.size() >= spec.features, ErrorCode::kInvalidArgument,
            "synth: name_pool holds " + std::to_string(spec.name_pool.size()) +
                " names, fewer than the " + std::to_string(spec.features) + " features");
  }
}

SynthCase generate(const SynthSpec& spec) { return generate_impl(spec, std::nullopt); }

std::vector<SynthCase> generate_corpus(std::size_t n, const SynthSpec& spec, double p_recurring,
                                       std::uint64_t seed) {
  require(n >= 2, ErrorCode::kInvalidArgument, "synth corpus needs at least two datasets");
  require(!spec.name_pool.empty(), ErrorCode::kInvalidArgument,
          "synth corpus needs a name pool so names recur across datasets");
  require(p_recurring >= 0.0 && p_recurring <= 1.0, ErrorCode::kInvalidArgument,
          "p_recurring must lie in [0, 1]");
  validate(spec);
  Rng decide(seed);
  std::vector<SynthCase> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    SynthSpec member = spec;
    member.seed = seed + i;
    member.name = indexed(spec.name, i);
    const Chronic chronic{spec.name_pool.front(), decide.bernoulli(p_recurring)};
    out.push_back(generate_impl(member, chronic));
  }
  return out;
}

std::vector<std::string> default_name_pool(std::size_t n, std::string_view prefix) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(indexed(prefix, i));
  return out;
}

}  // namespace hurra
