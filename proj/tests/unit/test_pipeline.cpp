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

#include <filesystem>

#include "doctest.h"
#include "helpers.hpp"
#include "hurra/csv.hpp"
#include "hurra/error.hpp"
#include "hurra/pipeline.hpp"
#include "hurra/synthetic.hpp"

using namespace hurra;

namespace {

std::vector<BenchCase> small_corpus(std::size_t n, std::uint64_t seed) {
  SynthSpec s;
  s.features = 6;
  s.timeslots = 300;
  s.n_culprits = 2;
  s.prevalence = 0.1;
  s.name_pool = default_name_pool(12);
  std::vector<BenchCase> out;
  for (auto& c : generate_corpus(n, s, 0.8, seed)) {
    out.push_back({c.data.name(), c.data, c.truth, c.data.timestamps()});
  }
  return out;
}

BenchConfig small_config() {
  BenchConfig c;
  c.algorithms = {Algorithm::kIF, Algorithm::kHST};
  c.params[Algorithm::kIF] = {{"trees", 30}};
  c.params[Algorithm::kHST] = {{"trees", 30}};
  return c;
}

}  // namespace

TEST_CASE("anomaly_vector uses emitted labels") {
  ScoreSeries s{{0.1, 0.9, 0.5, 0.2}, {}, "if", 0, {}};
  CHECK(anomaly_vector(s, BinarizationPolicy::top_quantile(0.75)).count() == 1);
  CHECK(anomaly_vector(s, BinarizationPolicy::threshold(0.3)).count() == 2);
  s.binary = {0, 0, 1, 1};
  CHECK(anomaly_vector(s, BinarizationPolicy::top_quantile(0.75)).values() ==
        std::vector<std::uint8_t>{0, 0, 1, 1});
}

TEST_CASE("relevant_features intersects labels with the ranking") {
  const GroundTruth gt({"a", "b", "c"}, 1, {1, 0, 1});
  const FeatureRanking r = rank_features({{"a", 1.0}, {"b", 2.0}});
  CHECK(relevant_features(r, gt) == std::set<std::string>{"a"});
}

TEST_CASE("leave_one_out excludes the held-out case") {
  const GroundTruth flag_a({"a", "b"}, 1, {1, 0});
  const GroundTruth flag_b({"a", "b"}, 1, {0, 1});
  std::vector<CaseScores> cases = {{"one", {{"a", 1.0}, {"b", 1.2}}, flag_a},
                                   {"two", {{"a", 1.0}, {"b", 1.2}}, flag_b}};
  CHECK_THROWS_AS(leave_one_out(std::span(cases).first(1), {}), Error);
  const auto out = leave_one_out(cases, {2.0, 0.0});
  REQUIRE(out.size() == 2);
  // Case one sees only case two's base (b was the culprit there).
  CHECK(out[0].base == ek_update(EKBase(), cases[1].scores, flag_b));
  CHECK(out[0].ranking.entries().front().name == "b");
  CHECK(out[0].ndcg.has_value());
  CHECK(*out[0].ndcg < 1.0);
  CHECK(out[1].base == ek_update(EKBase(), cases[0].scores, flag_a));
  // Case two sees case one's base, which favours a over the true culprit b.
  CHECK(out[1].ranking.entries().front().name == "a");
  CHECK(*out[1].ndcg < 1.0);
}

TEST_CASE("bench config JSON round trip") {
  BenchConfig c = small_config();
  c.upper_bound = true;
  c.grids[Algorithm::kHST] = {Algorithm::kHST, {{"max_depth", {5, 10}}}};
  c.binarization = BinarizationPolicy::threshold(0.7);
  c.fs = FsKind::kFSr;
  c.gains = {1.5, 0.5};
  c.seed = 11;
  const Json j = to_json(c);
  CHECK(to_json(bench_config_from_json(j)) == j);
  CHECK(j.at("mode") == "both");
  CHECK_THROWS_AS(bench_config_from_json(Json{{"bogus", 1}}), Error);
  CHECK_THROWS_AS(bench_config_from_json(Json{{"quantile", 0.9}, {"threshold", 0.5}}), Error);
}

TEST_CASE("run_bench on a small corpus") {
  const auto corpus = small_corpus(4, 5);
  const BenchConfig config = small_config();
  const BenchReport a = run_bench(corpus, config);
  CHECK(a.ok);
  const Json& j = a.json;
  CHECK(j.at("detectors") == Json({"if", "hst", "ensemble", "oracle"}));
  CHECK(j.at("datasets").size() == 4);
  CHECK(j.at("summary").at("median_pr_auc").at("oracle") == 1.0);
  CHECK(j.at("summary").at("average_ranks").at("datasets") == 4);
  for (const auto& d : j.at("datasets")) {
    double best = 0, ensemble = -1;
    for (const auto& r : d.at("results")) {
      CHECK(r.at("error").is_null());
      const double auc = r.at("pr_auc").get<double>();
      if (r.at("detector") == "ensemble") {
        ensemble = auc;
      } else if (r.at("detector") != "oracle") {
        best = std::max(best, auc);
      }
      CHECK(r.contains("ndcg_ek"));
    }
    CHECK(ensemble == best);
  }
  CHECK(dump_json(run_bench(corpus, config).json) == dump_json(j));
  CHECK_FALSE(bench_csv(j).empty());

  BenchConfig loo = config;
  CHECK_THROWS_AS(run_bench(std::span(corpus).first(1), loo), Error);
  loo.loo = false;
  CHECK(run_bench(std::span(corpus).first(1), loo).ok);
}

TEST_CASE("run_bench records failures without aborting") {
  auto corpus = small_corpus(3, 9);
  BenchConfig config = small_config();
  config.algorithms = {Algorithm::kDBSCAN, Algorithm::kIF};
  config.params.clear();
  config.params[Algorithm::kDBSCAN] = {{"eps", 1e9}};
  const BenchReport r = run_bench(corpus, config);
  // eps covers everything: DBSCAN flags nothing, so feature scoring fails.
  CHECK_FALSE(r.ok);
  CHECK(r.json.at("failures").size() >= 3);
  for (const auto& d : r.json.at("datasets")) {
    for (const auto& row : d.at("results")) {
      if (row.at("detector") == "if") CHECK(row.at("error").is_null());
    }
  }
}

TEST_CASE("load_corpus") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "hurra_load_corpus_test";
  fs::remove_all(dir);
  CHECK_THROWS_AS(load_corpus(dir.string()), Error);
  fs::create_directories(dir);
  CHECK_THROWS_AS(load_corpus(dir.string()), Error);
  const auto corpus = small_corpus(2, 1);
  for (const auto& c : corpus) {
    csv::write_dataset_file((dir / (c.name + ".csv")).string(), c.raw);
    csv::write_ground_truth_file((dir / (c.name + ".gt.csv")).string(), c.truth, c.truth_times);
  }
  const auto loaded = load_corpus(dir.string());
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].name < loaded[1].name);
  CHECK(loaded[0].raw.cells() == corpus[0].raw.cells());
  CHECK(loaded[1].truth.labels() == corpus[1].truth.labels());
  fs::remove(dir / (corpus[0].name + ".csv"));
  CHECK_THROWS_AS(load_corpus(dir.string()), Error);
  fs::remove_all(dir);
}

TEST_CASE("eval_scores and eval_ranking") {
  const GroundTruth gt({"a", "b"}, 4, {0, 1, 1, 0, 0, 0, 0, 0});
  const ScoreSeries s{{0.1, 0.9, 0.8, 0.2}, {}, "if", 0, {}};
  const Json e = eval_scores(s, gt, BinarizationPolicy::top_quantile(0.5));
  CHECK(e.at("pr_auc") == 1.0);
  CHECK(e.at("flagged") == 2);
  CHECK(e.at("confusion").at("tp") == 2);
  CHECK(e.at("precision") == 1.0);
  const GroundTruth none({"a"}, 4, {0, 0, 0, 0});
  CHECK_THROWS_AS(eval_scores(s, none, {}), Error);
  const Json r = eval_ranking(rank_features({{"a", 2.0}, {"b", 1.0}}), gt);
  CHECK(r.at("ndcg") == 1.0);
  CHECK(r.at("reading_effort").at("m") == 1);
}

TEST_CASE("json_io round trips") {
  const DetectorSpec spec = resolve_spec({Algorithm::kLODA, {{"projections", 7}}, 3});
  CHECK(detector_spec_from_json(to_json(spec)) == spec);
  const EKBase base({{"a", {3, 1, 2}}, {"b", {1, 0, 0}}});
  CHECK(ek_base_from_json(to_json(base)) == base);
  CHECK_THROWS_AS(ek_base_from_json(Json{{"features", {{"a", {{"n", 1}, {"n_plus", 2}, {"n_minus", 0}}}}}}),
                  Error);
  SynthSpec synth;
  synth.seed = 8;
  synth.anomaly = AnomalyKind::kSpike;
  CHECK(to_json(synth_spec_from_json(to_json(synth))) == to_json(synth));
  const HyperGrid g = default_grid(Algorithm::kHST);
  CHECK(grid_from_json(to_json(g), Algorithm::kHST).values == g.values);
  CHECK_THROWS_AS(parse_json("{", "test"), Error);
  CHECK(dump_json(Json{{"b", 1}, {"a", 2}}) == "{\n  \"a\": 2,\n  \"b\": 1\n}\n");
}
