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

/* C interface to the hurra KPI troubleshooting library.
 *
 * Objects are opaque handles released with their *_free function. Every
 * fallible call returns a hurra_status; on failure the message is available
 * from hurra_last_error() on the same thread until the next call. Strings
 * returned through char** out-parameters are heap allocated and must be
 * released with hurra_string_free. Configuration and reports travel as JSON
 * text.
 */

#ifndef HURRA_HURRA_H_
#define HURRA_HURRA_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HURRA_BUILDING_LIBRARY)
#    define HURRA_API __declspec(dllexport)
#  else
#    define HURRA_API __declspec(dllimport)
#  endif
#else
#  define HURRA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes (HURRA_OK..HURRA_ERR_DEGENERATE). */
typedef enum hurra_status {
  HURRA_OK = 0,
  HURRA_ERR_INTERNAL = 1,
  HURRA_ERR_FORMAT = 2,
  HURRA_ERR_EMPTY = 3,
  HURRA_ERR_DEGENERATE = 4,
  HURRA_ERR_INVALID_ARGUMENT = 5,
  HURRA_ERR_IO = 6
} hurra_status;

typedef struct hurra_dataset hurra_dataset;
typedef struct hurra_ground_truth hurra_ground_truth;
typedef struct hurra_scores hurra_scores;
typedef struct hurra_ranking hurra_ranking;
typedef struct hurra_ek_base hurra_ek_base;

HURRA_API const char* hurra_version(void);
/* Message of the last failed call on this thread, "" if none. */
HURRA_API const char* hurra_last_error(void);
HURRA_API void hurra_string_free(char* s);
/* Caps worker threads; 0 restores the default (HURRA_THREADS or all cores). */
HURRA_API void hurra_set_threads(size_t n);

/* ---- datasets ---------------------------------------------------------- */

HURRA_API hurra_status hurra_dataset_read_csv(const char* path, hurra_dataset** out);
HURRA_API hurra_status hurra_dataset_write_csv(const hurra_dataset* d, const char* path);
/* values: row-major F x T; NaN marks a missing sample. */
HURRA_API hurra_status hurra_dataset_create(const char* name, const char* const* feature_names,
                                            size_t num_features, const int64_t* timestamps,
                                            size_t num_timeslots, const double* values,
                                            hurra_dataset** out);
/* The returned pointer lives as long as the dataset. */
HURRA_API const char* hurra_dataset_name(const hurra_dataset* d);
HURRA_API size_t hurra_dataset_num_features(const hurra_dataset* d);
HURRA_API size_t hurra_dataset_num_timeslots(const hurra_dataset* d);
/* The returned pointer lives as long as the dataset. */
HURRA_API const char* hurra_dataset_feature_name(const hurra_dataset* d, size_t j);
HURRA_API hurra_status hurra_dataset_timestamps(const hurra_dataset* d, int64_t* out);
/* Copies F x T values (NaN for missing) into out. */
HURRA_API hurra_status hurra_dataset_values(const hurra_dataset* d, double* out);
HURRA_API void hurra_dataset_free(hurra_dataset* d);

/* Align, drop degenerate features, impute, standardize. report_json may be NULL. */
HURRA_API hurra_status hurra_preprocess(const hurra_dataset* raw, hurra_dataset** out,
                                        char** report_json);

/* ---- ground truth ------------------------------------------------------ */

HURRA_API hurra_status hurra_ground_truth_read_csv(const char* path, hurra_ground_truth** out);
HURRA_API hurra_status hurra_ground_truth_write_csv(const hurra_ground_truth* g, const char* path);
/* Snaps label rows onto a regular time grid (e.g. a preprocessed dataset's
 * timestamps); rows sharing a slot are OR-ed. */
HURRA_API hurra_status hurra_ground_truth_align(const hurra_ground_truth* g, const int64_t* grid,
                                                size_t grid_len, hurra_ground_truth** out);
HURRA_API size_t hurra_ground_truth_num_timeslots(const hurra_ground_truth* g);
HURRA_API hurra_status hurra_ground_truth_timestamps(const hurra_ground_truth* g, int64_t* out);
/* Copies the per-timeslot labels (any feature flagged) into out. */
HURRA_API hurra_status hurra_ground_truth_timeslot_labels(const hurra_ground_truth* g,
                                                          uint8_t* out);
HURRA_API void hurra_ground_truth_free(hurra_ground_truth* g);

/* ---- detection --------------------------------------------------------- */

/* spec_json: {"algo": "if", "params": {...}, "seed": 0}; omitted params take
 * their defaults. gt is required for "oracle" only and may be NULL. */
/* Fills defaults into a spec and validates it; out receives the canonical
 * spec JSON. */
HURRA_API hurra_status hurra_detector_resolve(const char* spec_json, char** out);
HURRA_API hurra_status hurra_detect(const hurra_dataset* dhat, const char* spec_json,
                                    const hurra_ground_truth* gt, hurra_scores** out);
/* Grid search against gt. grid_json NULL selects the built-in grid.
 * result_json (may be NULL) receives {"spec", "pr_auc", "evaluated", "skipped"}. */
HURRA_API hurra_status hurra_detect_grid(const hurra_dataset* dhat, const char* algo,
                                         const char* grid_json, const hurra_ground_truth* gt,
                                         uint64_t seed, hurra_scores** out, char** result_json);
HURRA_API hurra_status hurra_scores_read_csv(const char* path, hurra_scores** out);
HURRA_API hurra_status hurra_scores_write_csv(const hurra_scores* s, const char* path);
HURRA_API size_t hurra_scores_length(const hurra_scores* s);
HURRA_API hurra_status hurra_scores_values(const hurra_scores* s, double* out);
HURRA_API hurra_status hurra_scores_timestamps(const hurra_scores* s, int64_t* out);
/* {"detector", "seed", "notes"} */
HURRA_API hurra_status hurra_scores_info(const hurra_scores* s, char** json);
/* quantile in (0, 1); a detector's own labels take precedence. */
HURRA_API hurra_status hurra_scores_binarize(const hurra_scores* s, double quantile, uint8_t* out);
HURRA_API void hurra_scores_free(hurra_scores* s);

/* ---- feature ranking --------------------------------------------------- */

/* config_json keys (all optional): fs ("fsa"), quantile (0.95) or threshold,
 * seed (0), gamma_plus (2), gamma_minus (0). base may be NULL. */
HURRA_API hurra_status hurra_rank(const hurra_dataset* dhat, const hurra_scores* scores,
                                  const char* config_json, const hurra_ek_base* base,
                                  hurra_ranking** out);
HURRA_API hurra_status hurra_ranking_read_csv(const char* path, hurra_ranking** out);
HURRA_API hurra_status hurra_ranking_write_csv(const hurra_ranking* r, const char* path);
HURRA_API hurra_status hurra_ranking_json(const hurra_ranking* r, char** json);
HURRA_API size_t hurra_ranking_size(const hurra_ranking* r);
/* 0-based index; name lives as long as the ranking. */
HURRA_API hurra_status hurra_ranking_entry(const hurra_ranking* r, size_t i, const char** name,
                                           double* score);
HURRA_API void hurra_ranking_free(hurra_ranking* r);

/* ---- evaluation -------------------------------------------------------- */

HURRA_API hurra_status hurra_eval_scores(const hurra_scores* s, const hurra_ground_truth* gt,
                                         double quantile, char** report_json);
HURRA_API hurra_status hurra_eval_ranking(const hurra_ranking* r, const hurra_ground_truth* gt,
                                          char** report_json);
HURRA_API hurra_status hurra_pr_auc(const double* scores, const uint8_t* labels, size_t n,
                                    double* out);
HURRA_API hurra_status hurra_nemenyi_cd(size_t k, size_t n_datasets, double alpha, double* out);

/* ---- expert knowledge -------------------------------------------------- */

HURRA_API hurra_status hurra_ek_base_new(hurra_ek_base** out);
/* A missing file yields an empty base. */
HURRA_API hurra_status hurra_ek_base_read_json(const char* path, hurra_ek_base** out);
/* Written to a temp file and renamed into place. */
HURRA_API hurra_status hurra_ek_base_write_json(const hurra_ek_base* b, const char* path);
HURRA_API hurra_status hurra_ek_base_json(const hurra_ek_base* b, char** json);
HURRA_API hurra_status hurra_ek_base_from_json(const char* json, hurra_ek_base** out);
/* feature_scores: the raw (pre-expert-knowledge) ranking of the case. */
HURRA_API hurra_status hurra_ek_update(const hurra_ek_base* base,
                                       const hurra_ranking* feature_scores,
                                       const hurra_ground_truth* gt, hurra_ek_base** out);
HURRA_API hurra_status hurra_ek_apply(const hurra_ranking* feature_scores,
                                      const hurra_ek_base* base, double gamma_plus,
                                      double gamma_minus, hurra_ranking** out);
HURRA_API hurra_status hurra_ek_merge(const hurra_ek_base* const* bases, size_t n,
                                      hurra_ek_base** out);
HURRA_API void hurra_ek_base_free(hurra_ek_base* b);

/* ---- synthetic data and benchmarking ----------------------------------- */

/* spec_out (may be NULL) receives the effective spec with defaults filled. */
HURRA_API hurra_status hurra_synth(const char* spec_json, hurra_dataset** data,
                                   hurra_ground_truth** gt, char** spec_out);
/* n >= 2 cases as NAME.csv / NAME.gt.csv plus spec.json in dir (created if
 * needed). Without a name_pool in the spec, 2F names kpi_000... are used. */
HURRA_API hurra_status hurra_synth_corpus(const char* spec_json, size_t n, double p_recurring,
                                          uint64_t seed, const char* dir);
/* Runs the benchmark over NAME.csv / NAME.gt.csv pairs in corpus_dir.
 * report_csv may be NULL. all_ok (may be NULL) is set to 0 when some dataset
 * or detector step failed; the call itself still returns HURRA_OK. */
HURRA_API hurra_status hurra_bench(const char* corpus_dir, const char* config_json,
                                   char** report_json, char** report_csv, int* all_ok);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* HURRA_HURRA_H_ */
