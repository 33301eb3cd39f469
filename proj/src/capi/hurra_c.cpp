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

#include "hurra/hurra.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "hurra/csv.hpp"
#include "hurra/detectors.hpp"
#include "hurra/error.hpp"
#include "hurra/evaluation.hpp"
#include "hurra/expert_knowledge.hpp"
#include "hurra/feature_scoring.hpp"
#include "hurra/json_io.hpp"
#include "hurra/model.hpp"
#include "hurra/parallel.hpp"
#include "hurra/pipeline.hpp"
#include "hurra/preprocess.hpp"
#include "hurra/synthetic.hpp"

#ifndef HURRA_VERSION
#define HURRA_VERSION "0.0.0"
#endif

struct hurra_dataset {
  hurra::Dataset d;
};

struct hurra_ground_truth {
  hurra::GroundTruth g;
  std::vector<hurra::Minutes> times;
};

struct hurra_scores {
  hurra::ScoreSeries s;
  std::vector<hurra::Minutes> times;
};

struct hurra_ranking {
  hurra::FeatureRanking r;
};

struct hurra_ek_base {
  hurra::EKBase b;
};

namespace {

using hurra::ErrorCode;

thread_local std::string t_last_error;

hurra_status fail_with(hurra_status code, std::string message) {
  t_last_error = std::move(message);
  return code;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
hurra_status guarded(Fn&& fn) {
  t_last_error.clear();
  try {
    fn();
    return HURRA_OK;
  } catch (const hurra::Error& e) {
    return fail_with(static_cast<hurra_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail_with(HURRA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail_with(HURRA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail_with(HURRA_ERR_INTERNAL, "unknown error");
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) hurra::fail(ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void emit(char** out, const std::string& s) {
  if (out != nullptr) *out = copy_string(s);
}

hurra::Json json_arg(const char* text, const char* what) {
  if (text == nullptr || *text == '\0') return hurra::Json::object();
  return hurra::parse_json(text, what);
}

void check_grid_alignment(const hurra::Dataset& d, const hurra::GroundTruth& g) {
  hurra::require(d.num_timeslots() == g.num_timeslots(), ErrorCode::kInvalidArgument,
                 "ground truth has " + std::to_string(g.num_timeslots()) +
                     " timeslots, dataset has " + std::to_string(d.num_timeslots()) +
                     " (align the labels first)");
}

}  // namespace

extern "C" {

const char* hurra_version(void) { return HURRA_VERSION; }

const char* hurra_last_error(void) { return t_last_error.c_str(); }

void hurra_string_free(char* s) { std::free(s); }

void hurra_set_threads(size_t n) { hurra::set_thread_count(n); }

/* ---- datasets ---------------------------------------------------------- */

hurra_status hurra_dataset_read_csv(const char* path, hurra_dataset** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new hurra_dataset{hurra::csv::read_dataset_file(path)};
  });
}

hurra_status hurra_dataset_write_csv(const hurra_dataset* d, const char* path) {
  return guarded([&] {
    need(d, "dataset");
    need(path, "path");
    hurra::csv::write_dataset_file(path, d->d);
  });
}

hurra_status hurra_dataset_create(const char* name, const char* const* feature_names,
                                  size_t num_features, const int64_t* timestamps,
                                  size_t num_timeslots, const double* values,
                                  hurra_dataset** out) {
  return guarded([&] {
    need(feature_names, "feature_names");
    need(timestamps, "timestamps");
    need(values, "values");
    need(out, "out");
    std::vector<std::string> names;
    for (size_t j = 0; j < num_features; ++j) {
      need(feature_names[j], "feature name");
      names.emplace_back(feature_names[j]);
    }
    std::vector<hurra::Minutes> times(timestamps, timestamps + num_timeslots);
    std::vector<hurra::Cell> cells(num_features * num_timeslots);
    for (size_t i = 0; i < cells.size(); ++i) {
      if (!std::isnan(values[i])) cells[i] = values[i];
    }
    *out = new hurra_dataset{hurra::Dataset(name ? name : "", std::move(names), std::move(times),
                                            std::move(cells))};
  });
}

const char* hurra_dataset_name(const hurra_dataset* d) { return d ? d->d.name().c_str() : nullptr; }

size_t hurra_dataset_num_features(const hurra_dataset* d) {
  return d ? d->d.num_features() : 0;
}

size_t hurra_dataset_num_timeslots(const hurra_dataset* d) {
  return d ? d->d.num_timeslots() : 0;
}

const char* hurra_dataset_feature_name(const hurra_dataset* d, size_t j) {
  if (d == nullptr || j >= d->d.num_features()) return nullptr;
  return d->d.feature_names()[j].c_str();
}

hurra_status hurra_dataset_timestamps(const hurra_dataset* d, int64_t* out) {
  return guarded([&] {
    need(d, "dataset");
    need(out, "out");
    std::copy(d->d.timestamps().begin(), d->d.timestamps().end(), out);
  });
}

hurra_status hurra_dataset_values(const hurra_dataset* d, double* out) {
  return guarded([&] {
    need(d, "dataset");
    need(out, "out");
    const auto& cells = d->d.cells();
    for (size_t i = 0; i < cells.size(); ++i) {
      out[i] = cells[i] ? *cells[i] : std::numeric_limits<double>::quiet_NaN();
    }
  });
}

void hurra_dataset_free(hurra_dataset* d) { delete d; }

hurra_status hurra_preprocess(const hurra_dataset* raw, hurra_dataset** out,
                              char** report_json) {
  return guarded([&] {
    need(raw, "dataset");
    need(out, "out");
    auto [dhat, report] = hurra::preprocess(raw->d);
    std::string text = hurra::dump_json(hurra::to_json(report));
    auto* handle = new hurra_dataset{std::move(dhat)};
    try {
      emit(report_json, text);
    } catch (...) {
      delete handle;
      throw;
    }
    *out = handle;
  });
}

/* ---- ground truth ------------------------------------------------------ */

hurra_status hurra_ground_truth_read_csv(const char* path, hurra_ground_truth** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    std::vector<hurra::Minutes> times;
    hurra::GroundTruth g = hurra::csv::read_ground_truth_file(path, &times);
    *out = new hurra_ground_truth{std::move(g), std::move(times)};
  });
}

hurra_status hurra_ground_truth_write_csv(const hurra_ground_truth* g, const char* path) {
  return guarded([&] {
    need(g, "ground truth");
    need(path, "path");
    hurra::csv::write_ground_truth_file(path, g->g, g->times);
  });
}

hurra_status hurra_ground_truth_align(const hurra_ground_truth* g, const int64_t* grid,
                                      size_t grid_len, hurra_ground_truth** out) {
  return guarded([&] {
    need(g, "ground truth");
    need(grid, "grid");
    need(out, "out");
    std::vector<hurra::Minutes> times(grid, grid + grid_len);
    hurra::GroundTruth aligned = hurra::align_ground_truth(g->g, g->times, times);
    *out = new hurra_ground_truth{std::move(aligned), std::move(times)};
  });
}

size_t hurra_ground_truth_num_timeslots(const hurra_ground_truth* g) {
  return g ? g->g.num_timeslots() : 0;
}

hurra_status hurra_ground_truth_timestamps(const hurra_ground_truth* g, int64_t* out) {
  return guarded([&] {
    need(g, "ground truth");
    need(out, "out");
    std::copy(g->times.begin(), g->times.end(), out);
  });
}

hurra_status hurra_ground_truth_timeslot_labels(const hurra_ground_truth* g, uint8_t* out) {
  return guarded([&] {
    need(g, "ground truth");
    need(out, "out");
    const auto a = hurra::derive_timeslot_labels(g->g);
    std::copy(a.values().begin(), a.values().end(), out);
  });
}

void hurra_ground_truth_free(hurra_ground_truth* g) { delete g; }

/* ---- detection --------------------------------------------------------- */

hurra_status hurra_detector_resolve(const char* spec_json, char** out) {
  return guarded([&] {
    need(spec_json, "spec_json");
    need(out, "out");
    const hurra::DetectorSpec spec = hurra::resolve_spec(
        hurra::detector_spec_from_json(hurra::parse_json(spec_json, "detector spec")));
    emit(out, hurra::dump_json(hurra::to_json(spec)));
  });
}

hurra_status hurra_detect(const hurra_dataset* dhat, const char* spec_json,
                          const hurra_ground_truth* gt, hurra_scores** out) {
  return guarded([&] {
    need(dhat, "dataset");
    need(spec_json, "spec_json");
    need(out, "out");
    const hurra::DetectorSpec spec =
        hurra::detector_spec_from_json(hurra::parse_json(spec_json, "detector spec"));
    if (gt != nullptr) check_grid_alignment(dhat->d, gt->g);
    hurra::ScoreSeries s = hurra::run_detector(dhat->d, spec, gt ? &gt->g : nullptr);
    *out = new hurra_scores{std::move(s), dhat->d.timestamps()};
  });
}

hurra_status hurra_detect_grid(const hurra_dataset* dhat, const char* algo,
                               const char* grid_json, const hurra_ground_truth* gt,
                               uint64_t seed, hurra_scores** out, char** result_json) {
  return guarded([&] {
    need(dhat, "dataset");
    need(algo, "algo");
    need(out, "out");
    if (gt == nullptr) {
      hurra::fail(ErrorCode::kInvalidArgument, "grid search needs ground truth");
    }
    check_grid_alignment(dhat->d, gt->g);
    const hurra::Algorithm a = hurra::parse_algorithm(algo);
    const hurra::HyperGrid grid =
        grid_json ? hurra::grid_from_json(hurra::parse_json(grid_json, "grid"), a)
                  : hurra::default_grid(a);
    hurra::GridSearchResult r = hurra::grid_search(dhat->d, grid, gt->g, seed);
    const hurra::Json info = {{"spec", hurra::to_json(r.spec)},
                              {"pr_auc", r.pr_auc},
                              {"evaluated", r.evaluated},
                              {"skipped", r.skipped}};
    const std::string text = hurra::dump_json(info);
    auto* handle = new hurra_scores{std::move(r.scores), dhat->d.timestamps()};
    try {
      emit(result_json, text);
    } catch (...) {
      delete handle;
      throw;
    }
    *out = handle;
  });
}

hurra_status hurra_scores_read_csv(const char* path, hurra_scores** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    std::vector<hurra::Minutes> times;
    hurra::ScoreSeries s = hurra::csv::read_scores_file(path, &times);
    *out = new hurra_scores{std::move(s), std::move(times)};
  });
}

hurra_status hurra_scores_write_csv(const hurra_scores* s, const char* path) {
  return guarded([&] {
    need(s, "scores");
    need(path, "path");
    hurra::csv::write_scores_file(path, s->s, s->times);
  });
}

size_t hurra_scores_length(const hurra_scores* s) { return s ? s->s.size() : 0; }

hurra_status hurra_scores_values(const hurra_scores* s, double* out) {
  return guarded([&] {
    need(s, "scores");
    need(out, "out");
    std::copy(s->s.scores.begin(), s->s.scores.end(), out);
  });
}

hurra_status hurra_scores_timestamps(const hurra_scores* s, int64_t* out) {
  return guarded([&] {
    need(s, "scores");
    need(out, "out");
    std::copy(s->times.begin(), s->times.end(), out);
  });
}

hurra_status hurra_scores_info(const hurra_scores* s, char** json) {
  return guarded([&] {
    need(s, "scores");
    need(json, "json");
    const hurra::Json info = {{"detector", s->s.detector_id},
                              {"seed", s->s.seed},
                              {"notes", s->s.notes},
                              {"has_labels", s->s.binary.has_value()}};
    emit(json, hurra::dump_json(info));
  });
}

hurra_status hurra_scores_binarize(const hurra_scores* s, double quantile, uint8_t* out) {
  return guarded([&] {
    need(s, "scores");
    need(out, "out");
    const auto a =
        hurra::anomaly_vector(s->s, hurra::BinarizationPolicy::top_quantile(quantile));
    std::copy(a.values().begin(), a.values().end(), out);
  });
}

void hurra_scores_free(hurra_scores* s) { delete s; }

/* ---- feature ranking --------------------------------------------------- */

hurra_status hurra_rank(const hurra_dataset* dhat, const hurra_scores* scores,
                        const char* config_json, const hurra_ek_base* base,
                        hurra_ranking** out) {
  return guarded([&] {
    need(dhat, "dataset");
    need(scores, "scores");
    need(out, "out");
    const hurra::Json cfg = json_arg(config_json, "rank config");
    hurra::require(cfg.is_object(), ErrorCode::kFormat, "rank config must be a JSON object");
    hurra::FsKind kind = hurra::FsKind::kFSa;
    hurra::BinarizationPolicy policy;
    std::uint64_t seed = 0;
    hurra::EKGains gains;
    bool have_quantile = false, have_threshold = false;
    try {
      for (const auto& [key, v] : cfg.items()) {
        if (key == "fs") {
          kind = hurra::parse_fs(v.get<std::string>());
        } else if (key == "quantile") {
          policy = hurra::BinarizationPolicy::top_quantile(v.get<double>());
          have_quantile = true;
        } else if (key == "threshold") {
          policy = hurra::BinarizationPolicy::threshold(v.get<double>());
          have_threshold = true;
        } else if (key == "seed") {
          seed = v.get<std::uint64_t>();
        } else if (key == "gamma_plus") {
          gains.gamma_plus = v.get<double>();
        } else if (key == "gamma_minus") {
          gains.gamma_minus = v.get<double>();
        } else {
          hurra::fail(ErrorCode::kFormat, "rank config: unknown key '" + key + "'");
        }
      }
    } catch (const hurra::Json::exception& e) {
      hurra::fail(ErrorCode::kFormat, std::string("rank config: ") + e.what());
    }
    hurra::require(!(have_quantile && have_threshold), ErrorCode::kInvalidArgument,
                   "rank config: give either quantile or threshold, not both");
    hurra::require(scores->s.size() == dhat->d.num_timeslots(), ErrorCode::kInvalidArgument,
                   "scores have " + std::to_string(scores->s.size()) +
                       " timeslots, dataset has " + std::to_string(dhat->d.num_timeslots()));
    const hurra::TimeslotLabels a = hurra::anomaly_vector(scores->s, policy);
    hurra::FeatureScores s = hurra::score_features(dhat->d, a, hurra::FSPolicy::of(kind, seed));
    if (base != nullptr) s = hurra::ek_apply(s, base->b, gains);
    *out = new hurra_ranking{hurra::rank_features(s)};
  });
}

hurra_status hurra_ranking_read_csv(const char* path, hurra_ranking** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new hurra_ranking{hurra::csv::read_ranking_file(path)};
  });
}

hurra_status hurra_ranking_write_csv(const hurra_ranking* r, const char* path) {
  return guarded([&] {
    need(r, "ranking");
    need(path, "path");
    hurra::csv::write_ranking_file(path, r->r);
  });
}

hurra_status hurra_ranking_json(const hurra_ranking* r, char** json) {
  return guarded([&] {
    need(r, "ranking");
    need(json, "json");
    emit(json, hurra::dump_json(hurra::to_json(r->r)));
  });
}

size_t hurra_ranking_size(const hurra_ranking* r) { return r ? r->r.size() : 0; }

hurra_status hurra_ranking_entry(const hurra_ranking* r, size_t i, const char** name,
                                 double* score) {
  return guarded([&] {
    need(r, "ranking");
    hurra::require(i < r->r.size(), ErrorCode::kInvalidArgument, "ranking index out of range");
    const auto& e = r->r.entries()[i];
    if (name != nullptr) *name = e.name.c_str();
    if (score != nullptr) *score = e.score;
  });
}

void hurra_ranking_free(hurra_ranking* r) { delete r; }

/* ---- evaluation -------------------------------------------------------- */

hurra_status hurra_eval_scores(const hurra_scores* s, const hurra_ground_truth* gt,
                               double quantile, char** report_json) {
  return guarded([&] {
    need(s, "scores");
    need(gt, "ground truth");
    need(report_json, "report_json");
    const hurra::Json j =
        hurra::eval_scores(s->s, gt->g, hurra::BinarizationPolicy::top_quantile(quantile));
    emit(report_json, hurra::dump_json(j));
  });
}

hurra_status hurra_eval_ranking(const hurra_ranking* r, const hurra_ground_truth* gt,
                                char** report_json) {
  return guarded([&] {
    need(r, "ranking");
    need(gt, "ground truth");
    need(report_json, "report_json");
    emit(report_json, hurra::dump_json(hurra::eval_ranking(r->r, gt->g)));
  });
}

hurra_status hurra_pr_auc(const double* scores, const uint8_t* labels, size_t n, double* out) {
  return guarded([&] {
    need(scores, "scores");
    need(labels, "labels");
    need(out, "out");
    const hurra::TimeslotLabels truth(std::vector<std::uint8_t>(labels, labels + n));
    *out = hurra::pr_auc(std::span<const double>(scores, n), truth);
  });
}

hurra_status hurra_nemenyi_cd(size_t k, size_t n_datasets, double alpha, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = hurra::nemenyi_cd(k, n_datasets, alpha);
  });
}

/* ---- expert knowledge -------------------------------------------------- */

hurra_status hurra_ek_base_new(hurra_ek_base** out) {
  return guarded([&] {
    need(out, "out");
    *out = new hurra_ek_base{};
  });
}

hurra_status hurra_ek_base_read_json(const char* path, hurra_ek_base** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) {
      *out = new hurra_ek_base{};
      return;
    }
    *out = new hurra_ek_base{hurra::ek_base_from_json(hurra::read_json_file(path))};
  });
}

hurra_status hurra_ek_base_write_json(const hurra_ek_base* b, const char* path) {
  return guarded([&] {
    need(b, "base");
    need(path, "path");
    hurra::csv::write_file_atomic(path, hurra::dump_json(hurra::to_json(b->b)));
  });
}

hurra_status hurra_ek_base_json(const hurra_ek_base* b, char** json) {
  return guarded([&] {
    need(b, "base");
    need(json, "json");
    emit(json, hurra::dump_json(hurra::to_json(b->b)));
  });
}

hurra_status hurra_ek_base_from_json(const char* json, hurra_ek_base** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new hurra_ek_base{hurra::ek_base_from_json(hurra::parse_json(json, "EK base"))};
  });
}

hurra_status hurra_ek_update(const hurra_ek_base* base, const hurra_ranking* feature_scores,
                             const hurra_ground_truth* gt, hurra_ek_base** out) {
  return guarded([&] {
    need(feature_scores, "feature scores");
    need(gt, "ground truth");
    need(out, "out");
    const hurra::EKBase empty;
    *out = new hurra_ek_base{
        hurra::ek_update(base ? base->b : empty, feature_scores->r.as_scores(), gt->g)};
  });
}

hurra_status hurra_ek_apply(const hurra_ranking* feature_scores, const hurra_ek_base* base,
                            double gamma_plus, double gamma_minus, hurra_ranking** out) {
  return guarded([&] {
    need(feature_scores, "feature scores");
    need(base, "base");
    need(out, "out");
    const hurra::FeatureScores s =
        hurra::ek_apply(feature_scores->r.as_scores(), base->b, {gamma_plus, gamma_minus});
    *out = new hurra_ranking{hurra::rank_features(s)};
  });
}

hurra_status hurra_ek_merge(const hurra_ek_base* const* bases, size_t n, hurra_ek_base** out) {
  return guarded([&] {
    need(out, "out");
    if (n > 0) need(bases, "bases");
    std::vector<hurra::EKBase> all;
    all.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      need(bases[i], "base");
      all.push_back(bases[i]->b);
    }
    *out = new hurra_ek_base{hurra::ek_merge(all)};
  });
}

void hurra_ek_base_free(hurra_ek_base* b) { delete b; }

/* ---- synthetic data and benchmarking ----------------------------------- */

hurra_status hurra_synth(const char* spec_json, hurra_dataset** data, hurra_ground_truth** gt,
                         char** spec_out) {
  return guarded([&] {
    need(data, "data");
    need(gt, "gt");
    const hurra::SynthSpec spec = hurra::synth_spec_from_json(json_arg(spec_json, "synth spec"));
    hurra::SynthCase c = hurra::generate(spec);
    const std::string effective = spec_out ? hurra::dump_json(hurra::to_json(spec)) : "";
    auto d = std::make_unique<hurra_dataset>(hurra_dataset{std::move(c.data)});
    auto g = std::make_unique<hurra_ground_truth>(
        hurra_ground_truth{std::move(c.truth), d->d.timestamps()});
    emit(spec_out, effective);
    *gt = g.release();
    *data = d.release();
  });
}

hurra_status hurra_synth_corpus(const char* spec_json, size_t n, double p_recurring,
                                uint64_t seed, const char* dir) {
  return guarded([&] {
    need(dir, "dir");
    hurra::SynthSpec spec = hurra::synth_spec_from_json(json_arg(spec_json, "synth spec"));
    if (spec.name_pool.empty()) spec.name_pool = hurra::default_name_pool(2 * spec.features);
    const auto cases = hurra::generate_corpus(n, spec, p_recurring, seed);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    hurra::require(!ec, ErrorCode::kIo, std::string("cannot create ") + dir + ": " + ec.message());
    const std::filesystem::path root(dir);
    for (const auto& c : cases) {
      hurra::csv::write_dataset_file((root / (c.data.name() + ".csv")).string(), c.data);
      hurra::csv::write_ground_truth_file((root / (c.data.name() + ".gt.csv")).string(), c.truth,
                                          c.data.timestamps());
    }
    hurra::Json sidecar = hurra::to_json(spec);
    sidecar["corpus"] = {{"n", n}, {"p_recurring", p_recurring}, {"seed", seed}};
    hurra::csv::write_file_atomic((root / "spec.json").string(), hurra::dump_json(sidecar));
  });
}

hurra_status hurra_bench(const char* corpus_dir, const char* config_json, char** report_json,
                         char** report_csv, int* all_ok) {
  return guarded([&] {
    need(corpus_dir, "corpus_dir");
    need(report_json, "report_json");
    const hurra::BenchConfig config =
        hurra::bench_config_from_json(json_arg(config_json, "bench config"));
    const auto corpus = hurra::load_corpus(corpus_dir);
    const hurra::BenchReport report = hurra::run_bench(corpus, config);
    const std::string text = hurra::dump_json(report.json);
    const std::string table = report_csv ? hurra::bench_csv(report.json) : std::string();
    char* j = copy_string(text);
    if (report_csv != nullptr) {
      try {
        *report_csv = copy_string(table);
      } catch (...) {
        std::free(j);
        throw;
      }
    }
    *report_json = j;
    if (all_ok != nullptr) *all_ok = report.ok ? 1 : 0;
  });
}

}  // extern "C"
