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

#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "hurra/error.hpp"
#include "hurra/feature_scoring.hpp"
#include "oracles.hpp"

using namespace hurra;

namespace {

std::vector<double> values_of(const FeatureScores& s, const std::vector<std::string>& names) {
  std::vector<double> out;
  for (const auto& n : names) out.push_back(s.at(n));
  return out;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

// z with nd_sample_score(z, 0, 1) == target, by bisection.
double z_for(double target) {
  double lo = 0, hi = 40;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (nd_sample_score(mid, 0, 1) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("policy names") {
  for (FsKind k : {FsKind::kFSa, FsKind::kFSr, FsKind::kRandom, FsKind::kAlphabetical, FsKind::kND,
                   FsKind::kNDLog}) {
    CHECK(parse_fs(fs_name(k)) == k);
  }
  CHECK_THROWS_AS(parse_fs("lasso"), Error);
  CHECK(FSPolicy::of(FsKind::kRandom, 3).seed == 3u);
  CHECK_FALSE(FSPolicy::of(FsKind::kFSa, 3).seed.has_value());
}

TEST_CASE("fs_average") {
  const Dataset d = testing::dataset({{0, 0, 2, 4}, {1, 1, 1, 1}});
  const TimeslotLabels a({0, 0, 1, 1});
  const auto s = fs_average(d, a);
  CHECK(s.at("f00") == 3.0);
  CHECK(s.at("f01") == 0.0);
  CHECK(code_of([&] { fs_average(d, TimeslotLabels({0, 0, 0, 0})); }) == ErrorCode::kDegenerate);
  CHECK(code_of([&] { fs_average(d, TimeslotLabels({1, 1, 1, 1})); }) == ErrorCode::kDegenerate);
  CHECK(code_of([&] { fs_average(d, TimeslotLabels({1, 0})); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("fs_average and fs_rank match brute force") {
  Rng rng(51);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t F = 1 + rng.below(12), T = 2 + rng.below(99);
    auto rows = testing::random_rows(rng, F, T);
    if (rep % 4 == 0) {
      for (auto& r : rows) {
        for (double& v : r) v = std::round(v);  // ties between regime means
      }
    }
    const auto y = testing::random_labels(rng, T);
    const Dataset d = testing::dataset(rows);
    const TimeslotLabels a(y);
    const auto names = d.feature_names();

    const auto fa = values_of(fs_average(d, a), names);
    const auto fa_oracle = oracle::fsa(rows, testing::as_int(y));
    for (std::size_t j = 0; j < F; ++j) CHECK(std::fabs(fa[j] - fa_oracle[j]) < 1e-9);

    const auto fr = values_of(fs_rank(d, a), names);
    const auto fr_oracle = oracle::fsr(rows, names, testing::as_int(y));
    for (std::size_t j = 0; j < F; ++j) {
      CHECK(fr[j] == fr_oracle[j]);
      CHECK(fr[j] == std::floor(fr[j]));
      CHECK(fr[j] >= 0);
      CHECK(fr[j] <= double(F - 1));
    }

    // Sign symmetry of FSa.
    auto neg = rows;
    for (auto& r : neg) {
      for (double& v : r) v = -v;
    }
    const auto fneg = values_of(fs_average(testing::dataset(neg), a), names);
    for (std::size_t j = 0; j < F; ++j) CHECK(fneg[j] == doctest::Approx(fa[j]).epsilon(1e-12));
  }
}

TEST_CASE("fs scores do not depend on feature order") {
  Rng rng(52);
  const auto rows = testing::random_rows(rng, 6, 40);
  const TimeslotLabels a(testing::random_labels(rng, 40));
  const Dataset d = testing::dataset(rows);
  std::vector<std::size_t> perm = {3, 0, 5, 1, 4, 2};
  std::vector<std::string> names;
  std::vector<double> flat;
  for (std::size_t j : perm) {
    names.push_back(d.feature_names()[j]);
    flat.insert(flat.end(), rows[j].begin(), rows[j].end());
  }
  const Dataset shuffled = Dataset::dense("d", names, testing::minutes(40), flat);
  CHECK(fs_average(d, a) == fs_average(shuffled, a));
  CHECK(fs_rank(d, a) == fs_rank(shuffled, a));
  CHECK(fs_normal(d, a) == fs_normal(shuffled, a));
}

TEST_CASE("fs_rank examples") {
  // f00 has the larger mean in the normal regime, f01 in the anomalous one.
  const Dataset d = testing::dataset({{5, 5, 0, 0}, {1, 1, 3, 3}});
  const TimeslotLabels a({0, 0, 1, 1});
  const auto s = fs_rank(d, a);
  CHECK(s.at("f00") == 1.0);
  CHECK(s.at("f01") == 1.0);
  const Dataset same = testing::dataset({{1, 2, 3, 4}, {1, 2, 3, 4}, {1, 2, 3, 4}});
  for (const auto& [k, v] : fs_rank(same, a)) CHECK(v == 0.0);
}

TEST_CASE("fs_average puts the dominant shift first") {
  Rng rng(53);
  for (int rep = 0; rep < 50; ++rep) {
    auto rows = testing::random_rows(rng, 6, 60);
    const auto y = testing::random_labels(rng, 60);
    const std::size_t culprit = rng.below(6);
    for (std::size_t t = 0; t < 60; ++t) {
      if (y[t]) rows[culprit][t] += 50.0;
    }
    const Dataset d = testing::dataset(rows);
    const auto r = rank_features(fs_average(d, TimeslotLabels(y)));
    CHECK(r.entries()[0].name == d.feature_names()[culprit]);
  }
}

TEST_CASE("fs_random") {
  const std::vector<std::string> names = {"c", "a", "d", "b"};
  CHECK(fs_random(names, 4) == fs_random(names, 4));
  const std::vector<std::string> single = {"x"};
  CHECK(fs_random(single, 9) == FeatureScores{{"x", 1.0}});
  // Scores are a permutation of 1..F.
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::vector<double> v;
    for (const auto& [k, s] : fs_random(names, seed)) v.push_back(s);
    std::sort(v.begin(), v.end());
    CHECK(v == std::vector<double>{1, 2, 3, 4});
  }
  // The top feature is uniform over seeds (3-sigma binomial bounds).
  std::map<std::string, int> top;
  const int n = 10000;
  for (int seed = 0; seed < n; ++seed) {
    for (const auto& [k, s] : fs_random(names, static_cast<std::uint64_t>(seed))) {
      if (s == 4.0) ++top[k];
    }
  }
  const double mean = n / 4.0, sd = std::sqrt(n * 0.25 * 0.75);
  for (const auto& [k, c] : top) CHECK(std::fabs(c - mean) <= 3 * sd);
}

TEST_CASE("fs_alphabetical") {
  const std::vector<std::string> ba = {"b", "a"};
  CHECK(fs_alphabetical(ba) == FeatureScores{{"a", 2.0}, {"b", 1.0}});
  Rng rng(54);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<std::string> names;
    for (int i = 0; i < 10; ++i) names.push_back("n" + std::to_string(rng.below(100000)) + "_" + std::to_string(i));
    auto sorted = names;
    std::sort(sorted.begin(), sorted.end());
    const auto r = rank_features(fs_alphabetical(names));
    for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(r.entries()[i].name == sorted[i]);
  }
}

TEST_CASE("normal scoring") {
  CHECK(nd_sample_score(3.0, 3.0, 2.0) == 0.0);
  CHECK(nd_sample_score(1.96 * 2.0 + 3.0, 3.0, 2.0) == doctest::Approx(0.950).epsilon(1e-3));
  CHECK(nd_sample_score(5.0, 5.0, 0.0) == 0.0);
  CHECK(nd_sample_score(5.1, 5.0, 0.0) == 1.0);
  Rng rng(55);
  for (int i = 0; i < 200; ++i) {
    const double z = rng.uniform(-6, 6);
    CHECK(std::fabs(normal_cdf(z) - oracle::phi_integrated(z)) < 1e-6);
    const double mu = rng.uniform(-3, 3), sigma = rng.uniform(0.1, 4);
    const double x = mu + z * sigma;
    CHECK(std::fabs(nd_sample_score(x, mu, sigma) - 2 * std::fabs(0.5 - oracle::phi_integrated(z))) <
          1e-6);
  }
}

TEST_CASE("fs_normal and fs_lognormal against the definitions") {
  Rng rng(56);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t F = 1 + rng.below(5), T = 4 + rng.below(40);
    const auto rows = testing::random_rows(rng, F, T);
    auto y = testing::random_labels(rng, T);
    std::size_t normal = 0;
    for (auto v : y) normal += !v;
    if (normal < 2) continue;
    const Dataset d = testing::dataset(rows);
    const auto nd = fs_normal(d, TimeslotLabels(y));
    const auto ndlog = fs_lognormal(d, TimeslotLabels(y));
    for (std::size_t j = 0; j < F; ++j) {
      double mu = 0, var = 0, na = 0;
      for (std::size_t t = 0; t < T; ++t) {
        if (!y[t]) mu += rows[j][t];
      }
      mu /= double(normal);
      for (std::size_t t = 0; t < T; ++t) {
        if (!y[t]) var += (rows[j][t] - mu) * (rows[j][t] - mu);
      }
      const double sigma = std::sqrt(var / double(normal));
      double sum = 0, sum_log = 0;
      for (std::size_t t = 0; t < T; ++t) {
        if (!y[t]) continue;
        const double z = (rows[j][t] - mu) / sigma;
        sum += 2 * std::fabs(0.5 - oracle::phi_integrated(z));
        // 1 - s = 2 P(Z > |z|), floored where s is capped.
        sum_log += -std::log(std::max(2 * oracle::upper_tail_integrated(std::fabs(z)), 1e-12));
        ++na;
      }
      const auto& name = d.feature_names()[j];
      CHECK(std::fabs(nd.at(name) - sum / na) < 1e-6);
      CHECK(std::fabs(ndlog.at(name) - sum_log / na) < 1e-6 * std::max(1.0, sum_log / na));
    }
  }
}

TEST_CASE("fs_lognormal examples") {
  // Normal slots {-1, 1} fit mu = 0, sigma = 1.
  const double z = z_for(1 - std::exp(-2.0));
  const Dataset one = testing::dataset({{-1, 1, -1, 1, z}});
  const TimeslotLabels a({0, 0, 0, 0, 1});
  CHECK(fs_lognormal(one, a).at("f00") == doctest::Approx(2.0).epsilon(1e-9));
  const Dataset zero = testing::dataset({{-1, 1, -1, 1, 0}});
  CHECK(fs_lognormal(zero, a).at("f00") == 0.0);

  // ND prefers the steady mild deviation, NDlog the single extreme one.
  const double extreme = z_for(0.999999), mild = z_for(0.6);
  const Dataset two = testing::dataset({{-1, 1, -1, 1, extreme, 0}, {-1, 1, -1, 1, mild, mild}});
  const TimeslotLabels a2({0, 0, 0, 0, 1, 1});
  const auto nd = fs_normal(two, a2);
  const auto ndlog = fs_lognormal(two, a2);
  CHECK(nd.at("f01") > nd.at("f00"));
  CHECK(ndlog.at("f00") > ndlog.at("f01"));

  // Saturation is capped, not infinite.
  const Dataset far = testing::dataset({{-1, 1, -1, 1, 1e6}});
  CHECK(fs_lognormal(far, a).at("f00") == doctest::Approx(-std::log(1e-12)).epsilon(1e-6));

  const Dataset few = testing::dataset({{1, 2, 3}});
  CHECK(code_of([&] { fs_normal(few, TimeslotLabels({0, 1, 1})); }) == ErrorCode::kDegenerate);
}

TEST_CASE("score_features dispatches and covers every feature") {
  Rng rng(57);
  const Dataset d = testing::dataset(testing::random_rows(rng, 5, 30));
  const TimeslotLabels a(testing::random_labels(rng, 30));
  CHECK(score_features(d, a, FSPolicy::of(FsKind::kFSa)) == fs_average(d, a));
  CHECK(score_features(d, a, FSPolicy::of(FsKind::kFSr)) == fs_rank(d, a));
  CHECK(score_features(d, a, FSPolicy::of(FsKind::kND)) == fs_normal(d, a));
  CHECK(score_features(d, a, FSPolicy::of(FsKind::kNDLog)) == fs_lognormal(d, a));
  CHECK(score_features(d, a, FSPolicy::of(FsKind::kRandom, 4)) == fs_random(d.feature_names(), 4));
  CHECK(score_features(d, a, FSPolicy::of(FsKind::kAlphabetical)) ==
        fs_alphabetical(d.feature_names()));
  for (FsKind k : {FsKind::kFSa, FsKind::kFSr, FsKind::kRandom, FsKind::kAlphabetical, FsKind::kND,
                   FsKind::kNDLog}) {
    const auto s = score_features(d, a, FSPolicy::of(k, 1));
    CHECK(s.size() == 5);
    for (const auto& n : d.feature_names()) CHECK(s.count(n) == 1);
  }
}
