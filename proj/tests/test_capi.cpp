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

// Exercises the public C API through the shared library only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hurra/hurra.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Takes ownership of a library string.
std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  hurra_string_free(s);
  return out;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("hurra_capi_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct Synth {
  hurra_dataset* data = nullptr;
  hurra_ground_truth* gt = nullptr;
  ~Synth() {
    hurra_dataset_free(data);
    hurra_ground_truth_free(gt);
  }
};

}  // namespace

TEST_CASE("version and errors") {
  CHECK(std::string(hurra_version()).size() > 0);
  hurra_dataset* d = nullptr;
  CHECK(hurra_dataset_read_csv("/nonexistent/x.csv", &d) == HURRA_ERR_IO);
  CHECK(d == nullptr);
  CHECK(std::string(hurra_last_error()).size() > 0);
  CHECK(hurra_dataset_read_csv(nullptr, &d) == HURRA_ERR_INVALID_ARGUMENT);
  // Freeing NULL is a no-op.
  hurra_dataset_free(nullptr);
  hurra_string_free(nullptr);
}

TEST_CASE("dataset create, accessors and CSV round trip") {
  const char* names[] = {"a", "b"};
  const int64_t times[] = {0, 1, 2};
  const double values[] = {1.0, NAN, 3.0, 4.0, 5.0, 6.0};
  hurra_dataset* d = nullptr;
  REQUIRE(hurra_dataset_create("demo", names, 2, times, 3, values, &d) == HURRA_OK);
  CHECK(std::string(hurra_dataset_name(d)) == "demo");
  CHECK(hurra_dataset_num_features(d) == 2);
  CHECK(hurra_dataset_num_timeslots(d) == 3);
  CHECK(std::string(hurra_dataset_feature_name(d, 1)) == "b");
  CHECK(hurra_dataset_feature_name(d, 2) == nullptr);
  double out[6];
  REQUIRE(hurra_dataset_values(d, out) == HURRA_OK);
  CHECK(std::isnan(out[1]));
  CHECK(out[5] == 6.0);

  const fs::path dir = scratch("dataset");
  const std::string path = (dir / "demo.csv").string();
  REQUIRE(hurra_dataset_write_csv(d, path.c_str()) == HURRA_OK);
  hurra_dataset* back = nullptr;
  REQUIRE(hurra_dataset_read_csv(path.c_str(), &back) == HURRA_OK);
  double again[6];
  hurra_dataset_values(back, again);
  for (int i = 0; i < 6; ++i) {
    CHECK((std::isnan(out[i]) ? std::isnan(again[i]) : out[i] == again[i]));
  }

  const int64_t unsorted[] = {0, 2, 1};
  hurra_dataset* bad = nullptr;
  CHECK(hurra_dataset_create("x", names, 2, unsorted, 3, values, &bad) == HURRA_ERR_FORMAT);
  CHECK(hurra_dataset_create("x", names, 2, times, 0, values, &bad) == HURRA_ERR_EMPTY);

  std::ofstream(dir / "broken.csv") << "timestamp,a\n0,1\n1,abc\n";
  CHECK(hurra_dataset_read_csv((dir / "broken.csv").c_str(), &bad) == HURRA_ERR_FORMAT);
  CHECK(std::string(hurra_last_error()).find("line 3") != std::string::npos);

  hurra_dataset_free(d);
  hurra_dataset_free(back);
  fs::remove_all(dir);
}

TEST_CASE("synth, preprocess, detect, rank, evaluate") {
  Synth c;
  char* spec = nullptr;
  REQUIRE(hurra_synth(R"({"features": 8, "timeslots": 400, "n_culprits": 3, "seed": 4})", &c.data,
                      &c.gt, &spec) == HURRA_OK);
  CHECK(json::parse(take(spec)).at("features") == 8);

  hurra_dataset* dhat = nullptr;
  char* report = nullptr;
  REQUIRE(hurra_preprocess(c.data, &dhat, &report) == HURRA_OK);
  CHECK(json::parse(take(report)).is_object());
  hurra_dataset* twice = nullptr;
  REQUIRE(hurra_preprocess(dhat, &twice, nullptr) == HURRA_OK);
  std::vector<double> v1(8 * 400), v2(8 * 400);
  hurra_dataset_values(dhat, v1.data());
  hurra_dataset_values(twice, v2.data());
  CHECK(v1 == v2);
  hurra_dataset_free(twice);

  char* resolved = nullptr;
  REQUIRE(hurra_detector_resolve(R"({"algo": "if"})", &resolved) == HURRA_OK);
  const json r = json::parse(take(resolved));
  CHECK(r.at("params").at("trees") == 200);
  CHECK(hurra_detector_resolve(R"({"algo": "nope"})", &resolved) == HURRA_ERR_INVALID_ARGUMENT);

  hurra_scores* oracle = nullptr;
  CHECK(hurra_detect(dhat, R"({"algo": "oracle"})", nullptr, &oracle) != HURRA_OK);
  REQUIRE(hurra_detect(dhat, R"({"algo": "oracle"})", c.gt, &oracle) == HURRA_OK);
  double auc = 0;
  char* eval = nullptr;
  REQUIRE(hurra_eval_scores(oracle, c.gt, 0.95, &eval) == HURRA_OK);
  CHECK(json::parse(take(eval)).at("pr_auc") == 1.0);

  hurra_scores* s = nullptr;
  REQUIRE(hurra_detect(dhat, R"({"algo": "if", "params": {"trees": 50}, "seed": 2})", nullptr, &s) ==
          HURRA_OK);
  const std::size_t T = hurra_scores_length(s);
  CHECK(T == 400);
  std::vector<double> scores(T);
  std::vector<uint8_t> labels(T), flagged(T);
  hurra_scores_values(s, scores.data());
  hurra_ground_truth_timeslot_labels(c.gt, labels.data());
  REQUIRE(hurra_pr_auc(scores.data(), labels.data(), T, &auc) == HURRA_OK);
  CHECK(auc > 0.0);
  REQUIRE(hurra_scores_binarize(s, 0.95, flagged.data()) == HURRA_OK);
  std::size_t n = 0;
  for (auto f : flagged) n += f;
  CHECK(n == 20);
  char* info = nullptr;
  REQUIRE(hurra_scores_info(s, &info) == HURRA_OK);
  CHECK(json::parse(take(info)).at("detector") == "if(feature_frac=0.5,sample_frac=0.75,trees=50)");

  // Ranking with and without expert knowledge.
  hurra_ranking* raw = nullptr;
  REQUIRE(hurra_rank(dhat, oracle, R"({"gamma_plus": 0})", nullptr, &raw) == HURRA_OK);
  CHECK(hurra_ranking_size(raw) == hurra_dataset_num_features(dhat));
  hurra_ranking* bad = nullptr;
  CHECK(hurra_rank(dhat, oracle, R"({"quantile": 0.9, "threshold": 0.5})", nullptr, &bad) ==
        HURRA_ERR_INVALID_ARGUMENT);
  CHECK(hurra_rank(dhat, oracle, R"({"bogus": 1})", nullptr, &bad) == HURRA_ERR_FORMAT);
  char* ranking_eval = nullptr;
  REQUIRE(hurra_eval_ranking(raw, c.gt, &ranking_eval) == HURRA_OK);
  const json re = json::parse(take(ranking_eval));
  CHECK(re.at("ndcg").get<double>() > 0.0);

  hurra_ek_base* empty = nullptr;
  REQUIRE(hurra_ek_base_new(&empty) == HURRA_OK);
  hurra_ranking* with_empty = nullptr;
  REQUIRE(hurra_rank(dhat, oracle, nullptr, empty, &with_empty) == HURRA_OK);
  for (std::size_t i = 0; i < hurra_ranking_size(raw); ++i) {
    const char *a = nullptr, *b = nullptr;
    double sa = 0, sb = 0;
    hurra_ranking_entry(raw, i, &a, &sa);
    hurra_ranking_entry(with_empty, i, &b, &sb);
    CHECK(std::string(a) == b);
    CHECK(sa == sb);
  }
  const char* name = nullptr;
  double score = 0;
  CHECK(hurra_ranking_entry(raw, 1000, &name, &score) == HURRA_ERR_INVALID_ARGUMENT);

  hurra_ek_base* learned = nullptr;
  REQUIRE(hurra_ek_update(nullptr, raw, c.gt, &learned) == HURRA_OK);
  char* base_json = nullptr;
  REQUIRE(hurra_ek_base_json(learned, &base_json) == HURRA_OK);
  const json bj = json::parse(take(base_json));
  for (const auto& [k, v] : bj.at("features").items()) CHECK(v.at("n") == 1);

  hurra_ek_base_free(empty);
  hurra_ek_base_free(learned);
  hurra_ranking_free(raw);
  hurra_ranking_free(with_empty);
  hurra_scores_free(s);
  hurra_scores_free(oracle);
  hurra_dataset_free(dhat);
}

TEST_CASE("grid detection") {
  Synth c;
  REQUIRE(hurra_synth(R"({"features": 6, "timeslots": 300, "n_culprits": 2, "seed": 8})", &c.data,
                      &c.gt, nullptr) == HURRA_OK);
  hurra_dataset* dhat = nullptr;
  REQUIRE(hurra_preprocess(c.data, &dhat, nullptr) == HURRA_OK);
  hurra_scores* s = nullptr;
  char* result = nullptr;
  CHECK(hurra_detect_grid(dhat, "loda", nullptr, nullptr, 0, &s, &result) != HURRA_OK);
  REQUIRE(hurra_detect_grid(dhat, "loda", nullptr, c.gt, 0, &s, &result) == HURRA_OK);
  const json r = json::parse(take(result));
  CHECK(r.at("evaluated").get<int>() + r.at("skipped").size() == 4);
  CHECK(r.at("spec").at("algo") == "loda");
  hurra_scores_free(s);
  REQUIRE(hurra_detect_grid(dhat, "if", R"({"trees": [10, 20]})", c.gt, 1, &s, &result) == HURRA_OK);
  CHECK(json::parse(take(result)).at("evaluated") == 2);
  hurra_scores_free(s);
  hurra_dataset_free(dhat);
}

TEST_CASE("ground truth alignment") {
  const fs::path dir = scratch("gt");
  std::ofstream(dir / "g.gt.csv") << "timestamp,a,b\n0,0,0\n1,1,0\n2,0,1\n3,0,0\n";
  hurra_ground_truth* g = nullptr;
  REQUIRE(hurra_ground_truth_read_csv((dir / "g.gt.csv").c_str(), &g) == HURRA_OK);
  CHECK(hurra_ground_truth_num_timeslots(g) == 4);
  const int64_t grid[] = {0, 2};
  hurra_ground_truth* snapped = nullptr;
  // Slot 3 lies beyond the grid's last slot (2) + half a step: rejected.
  CHECK(hurra_ground_truth_align(g, grid, 2, &snapped) == HURRA_ERR_INVALID_ARGUMENT);
  const int64_t grid3[] = {0, 2, 4};
  REQUIRE(hurra_ground_truth_align(g, grid3, 3, &snapped) == HURRA_OK);
  uint8_t labels[3];
  hurra_ground_truth_timeslot_labels(snapped, labels);
  // Times 1 and 2 both land on slot 1 (halves round up).
  CHECK(std::vector<int>(labels, labels + 3) == std::vector<int>{0, 1, 0});
  hurra_ground_truth_free(snapped);
  hurra_ground_truth_free(g);
  fs::remove_all(dir);
}

TEST_CASE("expert knowledge bases") {
  const fs::path dir = scratch("ek");
  hurra_ek_base* missing = nullptr;
  REQUIRE(hurra_ek_base_read_json((dir / "none.json").c_str(), &missing) == HURRA_OK);
  char* j = nullptr;
  hurra_ek_base_json(missing, &j);
  CHECK(json::parse(take(j)).at("features").empty());

  hurra_ek_base *a = nullptr, *b = nullptr;
  REQUIRE(hurra_ek_base_from_json(R"({"features": {"x": {"n": 2, "n_plus": 1, "n_minus": 0}}})",
                                  &a) == HURRA_OK);
  REQUIRE(hurra_ek_base_from_json(R"({"features": {"x": {"n": 2, "n_plus": 2, "n_minus": 0},
                                                  "y": {"n": 1, "n_plus": 0, "n_minus": 1}}})",
                                  &b) == HURRA_OK);
  hurra_ek_base* bad = nullptr;
  CHECK(hurra_ek_base_from_json(R"({"features": {"x": {"n": 1, "n_plus": 2, "n_minus": 0}}})",
                                &bad) != HURRA_OK);
  CHECK(hurra_ek_base_from_json("{", &bad) == HURRA_ERR_FORMAT);

  const hurra_ek_base* ab[] = {a, b};
  const hurra_ek_base* ba[] = {b, a};
  hurra_ek_base *m1 = nullptr, *m2 = nullptr;
  REQUIRE(hurra_ek_merge(ab, 2, &m1) == HURRA_OK);
  REQUIRE(hurra_ek_merge(ba, 2, &m2) == HURRA_OK);
  char *j1 = nullptr, *j2 = nullptr;
  hurra_ek_base_json(m1, &j1);
  hurra_ek_base_json(m2, &j2);
  const std::string s1 = take(j1);
  CHECK(s1 == take(j2));
  CHECK(json::parse(s1).at("features").at("x").at("n_plus") == 3);

  const std::string path = (dir / "base.json").string();
  REQUIRE(hurra_ek_base_write_json(m1, path.c_str()) == HURRA_OK);
  hurra_ek_base* loaded = nullptr;
  REQUIRE(hurra_ek_base_read_json(path.c_str(), &loaded) == HURRA_OK);
  hurra_ek_base_json(loaded, &j);
  CHECK(take(j) == s1);

  // K+ of x is 3/4: a score of 1 becomes 1 + 2 * 0.75.
  std::ofstream(dir / "r.csv") << "rank,feature,score\n1,x,1\n2,z,0.5\n";
  hurra_ranking* r = nullptr;
  REQUIRE(hurra_ranking_read_csv((dir / "r.csv").c_str(), &r) == HURRA_OK);
  hurra_ranking* adjusted = nullptr;
  REQUIRE(hurra_ek_apply(r, m1, 2.0, 0.0, &adjusted) == HURRA_OK);
  const char* name = nullptr;
  double score = 0;
  hurra_ranking_entry(adjusted, 0, &name, &score);
  CHECK(std::string(name) == "x");
  CHECK(score == doctest::Approx(2.5));
  hurra_ranking* neg = nullptr;
  CHECK(hurra_ek_apply(r, m1, -1.0, 0.0, &neg) == HURRA_ERR_INVALID_ARGUMENT);

  for (auto* p : {missing, a, b, m1, m2, loaded}) hurra_ek_base_free(p);
  hurra_ranking_free(r);
  hurra_ranking_free(adjusted);
  fs::remove_all(dir);
}

TEST_CASE("corpus and bench") {
  const fs::path dir = scratch("bench");
  CHECK(hurra_synth_corpus(R"({"features": 5, "timeslots": 200})", 1, 0.5, 0, dir.c_str()) ==
        HURRA_ERR_INVALID_ARGUMENT);
  REQUIRE(hurra_synth_corpus(R"({"features": 5, "timeslots": 200, "n_culprits": 2})", 3, 0.8, 7,
                             dir.c_str()) == HURRA_OK);
  CHECK(fs::exists(dir / "spec.json"));
  const char* config = R"({"algorithms": ["if", "loda"], "params": {"if": {"trees": 20}}})";
  char *report = nullptr, *csv = nullptr;
  int ok = 0;
  REQUIRE(hurra_bench(dir.c_str(), config, &report, &csv, &ok) == HURRA_OK);
  CHECK(ok == 1);
  const std::string first = take(report);
  CHECK(json::parse(first).at("datasets").size() == 3);
  CHECK(take(csv).find("dataset") != std::string::npos);

  hurra_set_threads(1);
  REQUIRE(hurra_bench(dir.c_str(), config, &report, nullptr, nullptr) == HURRA_OK);
  CHECK(take(report) == first);
  hurra_set_threads(0);

  CHECK(hurra_bench((dir / "missing").c_str(), config, &report, nullptr, nullptr) == HURRA_ERR_IO);
  CHECK(hurra_bench(dir.c_str(), R"({"fs": "bogus"})", &report, nullptr, nullptr) != HURRA_OK);
  fs::remove_all(dir);
}
