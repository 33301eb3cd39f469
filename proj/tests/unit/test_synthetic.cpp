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

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "hurra/error.hpp"
#include "hurra/synthetic.hpp"

using namespace hurra;

TEST_CASE("kind names") {
  for (auto k : {AnomalyKind::kSpike, AnomalyKind::kLevelShift, AnomalyKind::kVarianceBurst}) {
    CHECK(parse_anomaly_kind(anomaly_kind_name(k)) == k);
  }
  for (auto k : {BaseKind::kAR1, BaseKind::kSeasonal, BaseKind::kMixed}) {
    CHECK(parse_base_kind(base_kind_name(k)) == k);
  }
  CHECK_THROWS_AS(parse_anomaly_kind("drift"), Error);
}

TEST_CASE("spec validation") {
  SynthSpec s;
  CHECK_NOTHROW(validate(s));
  s.n_culprits = 0;
  CHECK_THROWS_AS(validate(s), Error);
  s = SynthSpec{};
  s.n_culprits = 21;
  CHECK_THROWS_AS(validate(s), Error);
  s = SynthSpec{};
  s.prevalence = 0.5;
  CHECK_THROWS_AS(validate(s), Error);
  s = SynthSpec{};
  s.missing_frac = 0.4;
  CHECK_THROWS_AS(validate(s), Error);
  s = SynthSpec{};
  s.timeslots = 10;
  s.prevalence = 0.01;
  CHECK_THROWS_AS(generate(s), Error);
  s = SynthSpec{};
  s.name_pool = default_name_pool(5);
  CHECK_THROWS_AS(validate(s), Error);
}

TEST_CASE("generation is deterministic") {
  SynthSpec s;
  s.seed = 3;
  s.missing_frac = 0.1;
  const SynthCase a = generate(s), b = generate(s);
  CHECK(a.data.cells() == b.data.cells());
  CHECK(a.truth.labels() == b.truth.labels());
  s.seed = 4;
  CHECK(generate(s).data.cells() != a.data.cells());
}

TEST_CASE("label counts match the spec") {
  for (auto kind : {AnomalyKind::kLevelShift, AnomalyKind::kVarianceBurst, AnomalyKind::kSpike}) {
    for (std::size_t culprits : {1u, 5u, 20u}) {
      SynthSpec s;
      s.anomaly = kind;
      s.n_culprits = culprits;
      s.seed = culprits * 7;
      const SynthCase c = generate(s);
      const auto a = derive_timeslot_labels(c.truth);
      const std::size_t expected = kind == AnomalyKind::kSpike
                                       ? static_cast<std::size_t>(std::llround(kSpikeDensity * 100))
                                       : 100;
      CHECK(a.count() == expected);
      CHECK(c.window_length == 100);
      const auto anomalous = derive_feature_labels(c.truth);
      CHECK(anomalous.size() == culprits);
      CHECK(std::vector<std::string>(anomalous.begin(), anomalous.end()) == c.culprits);
      // Nothing outside the window is labelled.
      for (std::size_t j = 0; j < c.truth.num_features(); ++j) {
        for (std::size_t t = 0; t < c.truth.num_timeslots(); ++t) {
          if (t < c.window_start || t >= c.window_start + c.window_length) {
            CHECK(c.truth.at(j, t) == 0);
          }
        }
      }
    }
  }
}

TEST_CASE("level shifts separate culprits by regime mean") {
  int separated = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SynthSpec s;
    s.n_culprits = 4;
    s.seed = seed;
    s.base = BaseKind::kMixed;
    const SynthCase c = generate(s);
    const auto a = derive_timeslot_labels(c.truth);
    double worst_culprit = 1e300, best_other = 0;
    for (std::size_t j = 0; j < s.features; ++j) {
      double in = 0, out = 0, sd = 0, mean = 0;
      for (std::size_t t = 0; t < s.timeslots; ++t) mean += *c.data.at(j, t);
      mean /= double(s.timeslots);
      for (std::size_t t = 0; t < s.timeslots; ++t) {
        const double v = *c.data.at(j, t);
        sd += (v - mean) * (v - mean);
        (a[t] ? in : out) += v;
      }
      sd = std::sqrt(sd / double(s.timeslots));
      const double shift = std::fabs(in / 100.0 - out / double(s.timeslots - 100)) / sd;
      const bool culprit = std::binary_search(c.culprits.begin(), c.culprits.end(),
                                              c.data.feature_names()[j]);
      if (culprit) {
        worst_culprit = std::min(worst_culprit, shift);
      } else {
        best_other = std::max(best_other, shift);
      }
    }
    separated += worst_culprit > best_other;
  }
  CHECK(separated == 20);
}

TEST_CASE("missing cells") {
  SynthSpec s;
  s.missing_frac = 0.2;
  s.seed = 9;
  const SynthCase c = generate(s);
  std::size_t missing = 0;
  for (const auto& cell : c.data.cells()) missing += !cell.has_value();
  const double n = double(s.features * s.timeslots);
  CHECK(std::fabs(double(missing) / n - 0.2) < 4 * std::sqrt(0.2 * 0.8 / n));
}

TEST_CASE("name pool and corpus") {
  SynthSpec s;
  s.features = 5;
  s.timeslots = 200;
  s.name_pool = default_name_pool(12);
  CHECK(s.name_pool[0] == "kpi_000");
  CHECK_THROWS_AS(generate_corpus(1, s, 0.5, 0), Error);
  SynthSpec no_pool = s;
  no_pool.name_pool.clear();
  CHECK_THROWS_AS(generate_corpus(3, no_pool, 0.5, 0), Error);
  CHECK_THROWS_AS(generate_corpus(3, s, 1.5, 0), Error);

  const auto always = generate_corpus(10, s, 1.0, 5);
  for (std::size_t i = 0; i < always.size(); ++i) {
    const auto& c = always[i];
    CHECK(c.data.name() == "synth_00" + std::to_string(i));
    CHECK(c.data.feature_index("kpi_000").has_value());
    CHECK(std::binary_search(c.culprits.begin(), c.culprits.end(), "kpi_000"));
    for (const auto& n : c.data.feature_names()) {
      CHECK(std::find(s.name_pool.begin(), s.name_pool.end(), n) != s.name_pool.end());
    }
  }
  for (const auto& c : generate_corpus(10, s, 0.0, 5)) {
    CHECK_FALSE(std::binary_search(c.culprits.begin(), c.culprits.end(), "kpi_000"));
  }
  std::size_t hits = 0;
  for (const auto& c : generate_corpus(40, s, 0.5, 17)) {
    hits += std::binary_search(c.culprits.begin(), c.culprits.end(), "kpi_000");
  }
  CHECK(std::fabs(double(hits) - 20.0) <= 3 * std::sqrt(40 * 0.25));
  // Members are reproducible on their own: member i uses seed + i.
  const auto corpus = generate_corpus(3, s, 0.5, 100);
  const auto again = generate_corpus(3, s, 0.5, 100);
  for (std::size_t i = 0; i < 3; ++i) CHECK(corpus[i].data.cells() == again[i].data.cells());
}
