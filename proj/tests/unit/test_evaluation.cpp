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
#include "hurra/evaluation.hpp"
#include "oracles.hpp"

using namespace hurra;

namespace {

FeatureRanking ranking_of(const std::vector<std::string>& order) {
  std::vector<RankedFeature> e;
  for (std::size_t i = 0; i < order.size(); ++i) {
    e.push_back({order[i], static_cast<double>(order.size() - i)});
  }
  return FeatureRanking(e);
}

}  // namespace

TEST_CASE("precision and recall") {
  CHECK(precision_recall({5, 0, 0, 0}) == std::pair{1.0, 1.0});
  CHECK(precision_recall({1, 1, 3, 0}) == std::pair{0.5, 0.25});
  CHECK_THROWS_AS(precision({0, 0, 2, 3}), Error);
  CHECK_THROWS_AS(recall({0, 2, 0, 3}), Error);
  const auto c = confusion(TimeslotLabels({1, 1, 0, 0}), TimeslotLabels({1, 0, 1, 0}));
  CHECK(c.tp == 1);
  CHECK(c.fp == 1);
  CHECK(c.fn == 1);
  CHECK(c.tn == 1);
}

TEST_CASE("pr_auc examples") {
  CHECK(pr_auc(std::vector<double>{0.9, 0.8, 0.1}, TimeslotLabels({1, 1, 0})) == 1.0);
  for (double p : {0.05, 0.25}) {
    const std::size_t T = 100, P = static_cast<std::size_t>(p * T);
    std::vector<std::uint8_t> y(T, 0);
    for (std::size_t i = 0; i < P; ++i) y[i * (T / P)] = 1;
    CHECK(pr_auc(std::vector<double>(T, 3.0), TimeslotLabels(y)) == p);
  }
  CHECK_THROWS_AS(pr_auc(std::vector<double>{1, 2}, TimeslotLabels({1, 1})), Error);
  CHECK_THROWS_AS(pr_auc(std::vector<double>{1, 2}, TimeslotLabels({0, 0})), Error);
}

TEST_CASE("pr_auc and roc_auc match brute-force oracles") {
  Rng rng(21);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t T = 2 + rng.below(63);
    const auto y = testing::random_labels(rng, T, rng.uniform(0.05, 0.6));
    std::vector<double> s(T);
    // Coarse values force ties.
    for (double& v : s) v = std::floor(rng.uniform(0, rep % 2 ? 4 : 1000));
    const TimeslotLabels truth(y);
    CHECK(std::fabs(pr_auc(s, truth) - oracle::pr_auc(s, testing::as_int(y))) < 1e-9);
    CHECK(std::fabs(roc_auc(s, truth) - oracle::roc_auc(s, testing::as_int(y))) < 1e-9);
    // Rank statistics: invariant under a strictly increasing transform.
    std::vector<double> warped(T);
    for (std::size_t i = 0; i < T; ++i) warped[i] = std::exp(s[i] / 100.0) * 7 - 3;
    CHECK(pr_auc(warped, truth) == doctest::Approx(pr_auc(s, truth)).epsilon(1e-12));
    CHECK(roc_auc(warped, truth) == doctest::Approx(roc_auc(s, truth)).epsilon(1e-12));
  }
}

TEST_CASE("roc_auc examples") {
  CHECK(roc_auc(std::vector<double>{3, 2, 1}, TimeslotLabels({1, 0, 0})) == 1.0);
  CHECK(roc_auc(std::vector<double>{1, 1, 1, 1}, TimeslotLabels({1, 0, 0, 1})) == 0.5);
}

TEST_CASE("ndcg examples") {
  CHECK(ndcg(ranking_of({"a", "b", "c"}), {"a", "b"}) == 1.0);
  CHECK(ndcg(ranking_of({"a", "c", "b"}), {"a", "b"}) ==
        doctest::Approx(1.5 / (1.0 + 1.0 / std::log2(3.0))).epsilon(1e-12));
  CHECK(ndcg(ranking_of({"a", "c", "b"}), {"a", "b"}) == doctest::Approx(0.9197).epsilon(1e-4));
  CHECK_THROWS_AS(ndcg(ranking_of({"a"}), {}), Error);
  CHECK_THROWS_AS(ndcg(ranking_of({"a"}), {"z"}), Error);
}

TEST_CASE("ndcg and reading effort match direct sums") {
  Rng rng(31);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t F = 1 + rng.below(30);
    auto order = testing::names(F, "k");
    rng.shuffle(order);
    std::set<std::string> relevant;
    for (const auto& n : order) {
      if (rng.bernoulli(0.3)) relevant.insert(n);
    }
    if (relevant.empty()) relevant.insert(order[rng.below(F)]);
    const auto r = ranking_of(order);
    const double got = ndcg(r, relevant);
    CHECK(std::fabs(got - oracle::ndcg(order, relevant)) < 1e-12);
    const auto e = reading_effort(r, relevant);
    CHECK(e.m == oracle::last_relevant_position(order, relevant));
    CHECK(e.t == relevant.size());
    CHECK(e.e == e.m - e.t);
    CHECK(e.m >= e.t);
    CHECK((got == 1.0) == (e.e == 0));
  }
}

TEST_CASE("reading effort: six culprits behind two false positives") {
  // t = 6 relevant KPIs, with e = 2 irrelevant ones interleaved.
  const std::vector<std::string> order = {"r1", "x1", "r2", "r3", "x2", "r4", "r5", "r6", "x3"};
  const std::set<std::string> relevant = {"r1", "r2", "r3", "r4", "r5", "r6"};
  const auto e = reading_effort(ranking_of(order), relevant);
  CHECK(e.t == 6);
  CHECK(e.e == 2);
  CHECK(e.m == 8);
  const auto top = reading_effort(ranking_of({"r1", "r2", "x"}), {"r1", "r2"});
  CHECK(top.m == 2);
  CHECK(top.e == 0);
}

TEST_CASE("average ranks") {
  CHECK(average_ranks({{5, 5, 5}, {1, 2, 3}}) == std::vector<double>{1.0, 2.0});
  CHECK(average_ranks({{1, 2}, {1, 2}}) == std::vector<double>{1.5, 1.5});
  Rng rng(41);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t k = 2 + rng.below(5), n = 1 + rng.below(10);
    MetricMatrix m(k, std::vector<double>(n));
    for (auto& row : m) {
      for (double& v : row) v = std::floor(rng.uniform(0, 4));
    }
    const auto got = average_ranks(m);
    const auto want = oracle::average_ranks(m);
    for (std::size_t i = 0; i < k; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
    const auto per = dataset_ranks(m);
    for (std::size_t d = 0; d < n; ++d) {
      double sum = 0;
      for (std::size_t i = 0; i < k; ++i) sum += per[i][d];
      CHECK(sum == doctest::Approx(double(k * (k + 1)) / 2.0));
    }
  }
}

TEST_CASE("nemenyi critical difference") {
  CHECK(nemenyi_q(10, 0.05) == 3.164);
  CHECK(std::fabs(nemenyi_cd(10, 64, 0.05) - 1.69) <= 0.01);
  for (std::size_t n : {1, 4, 64}) {
    CHECK(nemenyi_cd(2, n, 0.05) == doctest::Approx(nemenyi_q(2, 0.05) / std::sqrt(double(n))));
  }
  for (std::size_t n = 1; n < 100; ++n) CHECK(nemenyi_cd(5, n + 1, 0.1) < nemenyi_cd(5, n, 0.1));
  for (std::size_t k = 3; k <= 20; ++k) CHECK(nemenyi_q(k, 0.05) > nemenyi_q(k - 1, 0.05));
  CHECK_THROWS_AS(nemenyi_cd(1, 5, 0.05), Error);
  CHECK_THROWS_AS(nemenyi_cd(21, 5, 0.05), Error);
  CHECK_THROWS_AS(nemenyi_cd(5, 5, 0.01), Error);
  CHECK_THROWS_AS(nemenyi_cd(5, 0, 0.05), Error);
  const std::vector<double> ranks = {1.0, 1.5, 3.0};
  const auto linked = nemenyi_linked_pairs(ranks, 1.0);
  REQUIRE(linked.size() == 1);
  CHECK(linked[0] == std::pair<std::size_t, std::size_t>{0, 1});
}

TEST_CASE("median") {
  CHECK(median({3, 1, 2}) == 2.0);
  CHECK(median({4, 1, 2, 3}) == 2.5);
}
