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

// hurra command-line tool. Every subcommand is a thin layer over the C API.
//
// Exit codes: 0 ok, 1 internal error, 2 malformed or unreadable input,
// 3 no data left to work on, 4 degenerate or invalid configuration.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "hurra/hurra.h"

namespace {

using Json = nlohmann::json;

struct CliError {
  int exit_code;
  std::string message;
};

int exit_code_of(hurra_status s) {
  switch (s) {
    case HURRA_OK:
      return 0;
    case HURRA_ERR_FORMAT:
    case HURRA_ERR_IO:
      return 2;
    case HURRA_ERR_EMPTY:
      return 3;
    case HURRA_ERR_DEGENERATE:
    case HURRA_ERR_INVALID_ARGUMENT:
      return 4;
    default:
      return 1;
  }
}

void check(hurra_status s) {
  if (s != HURRA_OK) throw CliError{exit_code_of(s), hurra_last_error()};
}

[[noreturn]] void usage_error(const std::string& message) { throw CliError{4, message}; }

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Dataset = std::unique_ptr<hurra_dataset, Deleter<hurra_dataset, hurra_dataset_free>>;
using Truth =
    std::unique_ptr<hurra_ground_truth, Deleter<hurra_ground_truth, hurra_ground_truth_free>>;
using Scores = std::unique_ptr<hurra_scores, Deleter<hurra_scores, hurra_scores_free>>;
using Ranking = std::unique_ptr<hurra_ranking, Deleter<hurra_ranking, hurra_ranking_free>>;
using Base = std::unique_ptr<hurra_ek_base, Deleter<hurra_ek_base, hurra_ek_base_free>>;

// Takes ownership of a string returned by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  hurra_string_free(s);
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{2, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw CliError{2, "cannot write " + path};
}

Json parse(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw CliError{2, what + ": " + e.what()};
  }
}

// Inline JSON when the argument starts with '{', otherwise a file path.
Json json_arg(const std::string& arg, const std::string& what) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return parse(arg, what);
  return parse(read_text(arg), what + " " + arg);
}

void require_file(const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw CliError{2, "no such file: " + path};
}

Dataset read_dataset(const std::string& path) {
  hurra_dataset* d = nullptr;
  check(hurra_dataset_read_csv(path.c_str(), &d));
  return Dataset(d);
}

Scores read_scores(const std::string& path) {
  hurra_scores* s = nullptr;
  check(hurra_scores_read_csv(path.c_str(), &s));
  return Scores(s);
}

Ranking read_ranking(const std::string& path) {
  hurra_ranking* r = nullptr;
  check(hurra_ranking_read_csv(path.c_str(), &r));
  return Ranking(r);
}

Base read_base(const std::string& path) {
  hurra_ek_base* b = nullptr;
  check(hurra_ek_base_read_json(path.c_str(), &b));
  return Base(b);
}

Truth read_truth(const std::string& path) {
  hurra_ground_truth* g = nullptr;
  check(hurra_ground_truth_read_csv(path.c_str(), &g));
  return Truth(g);
}

// Labels re-sampled onto `grid`.
Truth aligned_truth(const std::string& path, const std::vector<int64_t>& grid) {
  Truth raw = read_truth(path);
  hurra_ground_truth* g = nullptr;
  check(hurra_ground_truth_align(raw.get(), grid.data(), grid.size(), &g));
  return Truth(g);
}

std::vector<int64_t> timestamps_of(const hurra_dataset* d) {
  std::vector<int64_t> t(hurra_dataset_num_timeslots(d));
  check(hurra_dataset_timestamps(d, t.data()));
  return t;
}

std::vector<int64_t> timestamps_of(const hurra_scores* s) {
  std::vector<int64_t> t(hurra_scores_length(s));
  check(hurra_scores_timestamps(s, t.data()));
  return t;
}

// Options shared by the commands that binarize scores and score features.
struct RankOptions {
  std::string fs = "fsa";
  std::optional<double> quantile;
  std::optional<double> threshold;
  uint64_t seed = 0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--fs", fs, "Feature scoring: fsa, fsr, random, alpha, nd, ndlog")
        ->capture_default_str();
    auto* q = cmd->add_option("--quantile", quantile, "Flag scores above this quantile [0.95]");
    cmd->add_option("--threshold", threshold, "Flag scores strictly above this value")
        ->excludes(q);
    cmd->add_option("--seed", seed, "Seed for --fs random")->capture_default_str();
  }

  Json config() const {
    Json j = {{"fs", fs}, {"seed", seed}};
    if (quantile) j["quantile"] = *quantile;
    if (threshold) j["threshold"] = *threshold;
    return j;
  }
};

Ranking rank(const hurra_dataset* dhat, const hurra_scores* scores, const Json& config,
             const hurra_ek_base* base) {
  hurra_ranking* r = nullptr;
  check(hurra_rank(dhat, scores, config.dump().c_str(), base, &r));
  return Ranking(r);
}

std::string ranking_json(const hurra_ranking* r) {
  char* text = nullptr;
  check(hurra_ranking_json(r, &text));
  return take(text);
}

// ---- preprocess ----------------------------------------------------------

struct PreprocessArgs {
  std::string in, out, report;
};

void run_preprocess(const PreprocessArgs& a) {
  Dataset raw = read_dataset(a.in);
  hurra_dataset* d = nullptr;
  char* report = nullptr;
  check(hurra_preprocess(raw.get(), &d, &report));
  Dataset dhat(d);
  const std::string text = take(report);
  check(hurra_dataset_write_csv(dhat.get(), a.out.c_str()));
  if (!a.report.empty()) write_text(a.report, text);
}

// ---- detect --------------------------------------------------------------

struct DetectArgs {
  std::string data, algo, params, spec, grid, gt, out, spec_out;
  std::optional<uint64_t> seed;
};

std::string default_spec_out(const std::string& out) {
  std::filesystem::path p(out);
  if (p.extension() == ".csv") p.replace_extension();
  return p.string() + ".spec.json";
}

void run_detect(const DetectArgs& a) {
  Dataset dhat = read_dataset(a.data);
  Truth gt;
  if (!a.gt.empty()) gt = aligned_truth(a.gt, timestamps_of(dhat.get()));
  const std::string spec_out = a.spec_out.empty() ? default_spec_out(a.out) : a.spec_out;

  hurra_scores* s = nullptr;
  std::string chosen;
  if (!a.grid.empty()) {
    if (a.algo.empty()) usage_error("--grid needs --algo");
    if (!gt) usage_error("--grid needs --gt: grid search selects parameters against labels");
    std::string grid_text;
    if (a.grid != "default") grid_text = json_arg(a.grid, "grid").dump();
    char* result = nullptr;
    check(hurra_detect_grid(dhat.get(), a.algo.c_str(), a.grid == "default" ? nullptr
                                                                              : grid_text.c_str(),
                            gt.get(), a.seed.value_or(0), &s, &result));
    const Json r = parse(take(result), "grid result");
    chosen = r.at("spec").dump(2) + "\n";
    std::cerr << "evaluated " << r.at("evaluated").get<std::size_t>() << " settings, best Pr-Rec AUC "
              << r.at("pr_auc").get<double>() << "\n";
    for (const auto& skipped : r.at("skipped")) {
      std::cerr << "skipped " << skipped.get<std::string>() << "\n";
    }
  } else {
    Json spec;
    if (!a.spec.empty()) {
      spec = json_arg(a.spec, "spec");
      if (!a.algo.empty()) spec["algo"] = a.algo;
    } else {
      if (a.algo.empty()) usage_error("detect needs --algo or --spec");
      spec = {{"algo", a.algo}};
    }
    if (!a.params.empty()) spec["params"] = json_arg(a.params, "params");
    if (a.seed) spec["seed"] = *a.seed;
    const std::string spec_text = spec.dump();
    char* resolved = nullptr;
    check(hurra_detector_resolve(spec_text.c_str(), &resolved));
    chosen = take(resolved);
    check(hurra_detect(dhat.get(), spec_text.c_str(), gt.get(), &s));
  }
  Scores scores(s);
  check(hurra_scores_write_csv(scores.get(), a.out.c_str()));
  write_text(spec_out, chosen);
}

// ---- rank ----------------------------------------------------------------

struct RankArgs {
  std::string data, scores, ek, out, json_out;
  RankOptions options;
  double gamma_plus = 2.0;
  double gamma_minus = 0.0;
};

void run_rank(const RankArgs& a) {
  Dataset dhat = read_dataset(a.data);
  Scores scores = read_scores(a.scores);
  Base base;
  Json config = a.options.config();
  if (!a.ek.empty()) {
    base = read_base(a.ek);
    config["gamma_plus"] = a.gamma_plus;
    config["gamma_minus"] = a.gamma_minus;
  }
  Ranking r = rank(dhat.get(), scores.get(), config, base.get());
  check(hurra_ranking_write_csv(r.get(), a.out.c_str()));
  if (!a.json_out.empty()) write_text(a.json_out, ranking_json(r.get()));
}

// ---- eval ----------------------------------------------------------------

struct EvalArgs {
  std::string scores, ranking, gt, out;
  double quantile = 0.95;
  std::vector<double> cd;
  double alpha = 0.05;
};

void run_eval(const EvalArgs& a) {
  if (a.scores.empty() && a.ranking.empty() && a.cd.empty()) {
    usage_error("eval needs --scores, --ranking or --cd");
  }
  if ((!a.scores.empty() || !a.ranking.empty()) && a.gt.empty()) {
    usage_error("--scores and --ranking need --gt");
  }
  Json report = {{"schema", 1}};
  if (!a.scores.empty()) {
    Scores s = read_scores(a.scores);
    Truth gt = aligned_truth(a.gt, timestamps_of(s.get()));
    char* text = nullptr;
    check(hurra_eval_scores(s.get(), gt.get(), a.quantile, &text));
    Json j = parse(take(text), "detection report");
    j.erase("schema");
    report["detection"] = std::move(j);
  }
  if (!a.ranking.empty()) {
    Ranking r = read_ranking(a.ranking);
    Truth gt = read_truth(a.gt);
    char* text = nullptr;
    check(hurra_eval_ranking(r.get(), gt.get(), &text));
    Json j = parse(take(text), "ranking report");
    j.erase("schema");
    report["ranking"] = std::move(j);
  }
  if (!a.cd.empty()) {
    if (a.cd.size() != 2 || a.cd[0] < 0 || a.cd[1] < 0) usage_error("--cd takes K N");
    double cd = 0.0;
    const auto k = static_cast<std::size_t>(a.cd[0]);
    const auto n = static_cast<std::size_t>(a.cd[1]);
    check(hurra_nemenyi_cd(k, n, a.alpha, &cd));
    report["nemenyi"] = {{"k", k}, {"n_datasets", n}, {"alpha", a.alpha}, {"cd", cd}};
  }
  write_text(a.out, report.dump(2) + "\n");
}

// ---- ek ------------------------------------------------------------------

struct EkUpdateArgs {
  std::string base, ranking, data, scores, gt, out;
  RankOptions options;
};

void run_ek_update(const EkUpdateArgs& a) {
  Ranking r;
  if (!a.ranking.empty()) {
    if (!a.data.empty() || !a.scores.empty()) usage_error("give --ranking or --data/--scores");
    r = read_ranking(a.ranking);
  } else {
    if (a.data.empty() || a.scores.empty()) {
      usage_error("ek update needs --ranking, or --data with --scores");
    }
    Dataset dhat = read_dataset(a.data);
    Scores s = read_scores(a.scores);
    r = rank(dhat.get(), s.get(), a.options.config(), nullptr);
  }
  Truth gt = read_truth(a.gt);
  Base base = read_base(a.base);
  hurra_ek_base* b = nullptr;
  check(hurra_ek_update(base.get(), r.get(), gt.get(), &b));
  Base updated(b);
  const std::string& out = a.out.empty() ? a.base : a.out;
  check(hurra_ek_base_write_json(updated.get(), out.c_str()));
}

struct EkApplyArgs {
  std::string base, ranking, out, json_out;
  double gamma_plus = 2.0;
  double gamma_minus = 0.0;
};

void run_ek_apply(const EkApplyArgs& a) {
  require_file(a.base);
  Base base = read_base(a.base);
  Ranking r = read_ranking(a.ranking);
  hurra_ranking* out = nullptr;
  check(hurra_ek_apply(r.get(), base.get(), a.gamma_plus, a.gamma_minus, &out));
  Ranking reranked(out);
  check(hurra_ranking_write_csv(reranked.get(), a.out.c_str()));
  if (!a.json_out.empty()) write_text(a.json_out, ranking_json(reranked.get()));
}

struct EkMergeArgs {
  std::vector<std::string> bases;
  std::string out;
};

void run_ek_merge(const EkMergeArgs& a) {
  std::vector<Base> owned;
  std::vector<const hurra_ek_base*> bases;
  for (const auto& path : a.bases) {
    require_file(path);
    owned.push_back(read_base(path));
    bases.push_back(owned.back().get());
  }
  hurra_ek_base* m = nullptr;
  check(hurra_ek_merge(bases.data(), bases.size(), &m));
  Base merged(m);
  if (a.out.empty() || a.out == "-") {
    char* text = nullptr;
    check(hurra_ek_base_json(merged.get(), &text));
    std::cout << take(text);
  } else {
    check(hurra_ek_base_write_json(merged.get(), a.out.c_str()));
  }
}

// ---- synth ---------------------------------------------------------------

struct SynthArgs {
  std::string spec, out_dir = ".";
  std::size_t corpus = 0;
  double p_recurring = 0.8;
  std::optional<uint64_t> corpus_seed;
};

void run_synth(const SynthArgs& a) {
  const Json spec = a.spec.empty() ? Json::object() : json_arg(a.spec, "synth spec");
  const std::string text = spec.dump();
  std::error_code ec;
  std::filesystem::create_directories(a.out_dir, ec);
  if (ec) throw CliError{2, "cannot create " + a.out_dir + ": " + ec.message()};
  if (a.corpus > 0) {
    const uint64_t seed =
        a.corpus_seed.value_or(spec.contains("seed") ? spec.at("seed").get<uint64_t>() : 0);
    check(hurra_synth_corpus(text.c_str(), a.corpus, a.p_recurring, seed, a.out_dir.c_str()));
    return;
  }
  hurra_dataset* d = nullptr;
  hurra_ground_truth* g = nullptr;
  char* effective = nullptr;
  check(hurra_synth(text.c_str(), &d, &g, &effective));
  Dataset data(d);
  Truth gt(g);
  const std::string sidecar = take(effective);
  const std::filesystem::path root(a.out_dir);
  const std::string name = hurra_dataset_name(data.get());
  check(hurra_dataset_write_csv(data.get(), (root / (name + ".csv")).string().c_str()));
  check(hurra_ground_truth_write_csv(gt.get(), (root / (name + ".gt.csv")).string().c_str()));
  write_text((root / (name + ".spec.json")).string(), sidecar);
}

// ---- bench ---------------------------------------------------------------

struct BenchArgs {
  std::string dir, config, out, csv, mode, fs;
  std::vector<std::string> algorithms;
  std::optional<uint64_t> seed;
  std::optional<double> quantile, threshold, gamma_plus, gamma_minus, alpha;
  std::optional<bool> loo, oracle, ensemble;
  std::optional<std::size_t> threads;
};

void run_bench(const BenchArgs& a) {
  Json config = a.config.empty() ? Json::object() : json_arg(a.config, "bench config");
  if (!config.is_object()) throw CliError{2, "bench config must be a JSON object"};
  if (!a.mode.empty()) config["mode"] = a.mode;
  if (!a.fs.empty()) config["fs"] = a.fs;
  if (!a.algorithms.empty()) config["algorithms"] = a.algorithms;
  if (a.seed) config["seed"] = *a.seed;
  if (a.quantile) {
    config.erase("threshold");
    config["quantile"] = *a.quantile;
  }
  if (a.threshold) {
    config.erase("quantile");
    config["threshold"] = *a.threshold;
  }
  if (a.gamma_plus) config["gamma_plus"] = *a.gamma_plus;
  if (a.gamma_minus) config["gamma_minus"] = *a.gamma_minus;
  if (a.alpha) config["alpha"] = *a.alpha;
  if (a.loo) config["loo"] = *a.loo;
  if (a.oracle) config["oracle"] = *a.oracle;
  if (a.ensemble) config["ensemble"] = *a.ensemble;
  if (a.threads) hurra_set_threads(*a.threads);

  char* report = nullptr;
  char* table = nullptr;
  int ok = 0;
  check(hurra_bench(a.dir.c_str(), config.dump().c_str(), &report,
                    a.csv.empty() ? nullptr : &table, &ok));
  const std::string report_text = take(report);
  const std::string table_text = take(table);
  write_text(a.out, report_text);
  if (!a.csv.empty()) write_text(a.csv, table_text);
  if (!ok) throw CliError{1, "some datasets or detectors failed; see \"failures\" in the report"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"KPI troubleshooting: anomaly detection, feature ranking, expert knowledge"};
  app.set_version_flag("--version", std::string(hurra_version()));
  app.require_subcommand(1);

  PreprocessArgs pre;
  auto* c_pre = app.add_subcommand("preprocess", "Align, clean and standardize a KPI CSV");
  c_pre->add_option("input", pre.in, "Raw dataset CSV")->required();
  c_pre->add_option("output", pre.out, "Preprocessed dataset CSV")->required();
  c_pre->add_option("--report", pre.report, "Preprocessing report JSON ('-' for stdout)");
  c_pre->callback([&] { run_preprocess(pre); });

  DetectArgs det;
  auto* c_det = app.add_subcommand("detect", "Score timeslots with an anomaly detector");
  c_det->add_option("data", det.data, "Preprocessed dataset CSV")->required();
  c_det->add_option("--algo", det.algo, "if, rhf, hst, loda, xstream, dbscan or oracle");
  auto* o_params =
      c_det->add_option("--params", det.params, "Parameter overrides: JSON object or file");
  c_det->add_option("--spec", det.spec, "Full detector spec: JSON object or file");
  c_det->add_option("--grid", det.grid, "Grid search: JSON grid, file, or 'default'")
      ->excludes(o_params);
  c_det->add_option("--gt", det.gt, "Ground-truth CSV (oracle and grid search)");
  c_det->add_option("--seed", det.seed, "Detector seed [0]");
  c_det->add_option("--out", det.out, "Scores CSV")->required();
  c_det->add_option("--spec-out", det.spec_out, "Chosen spec JSON [<out>.spec.json]");
  c_det->callback([&] { run_detect(det); });

  RankArgs rk;
  auto* c_rank = app.add_subcommand("rank", "Rank KPIs by how much they explain the anomalies");
  c_rank->add_option("data", rk.data, "Preprocessed dataset CSV")->required();
  c_rank->add_option("scores", rk.scores, "Scores CSV")->required();
  rk.options.add_to(c_rank);
  c_rank->add_option("--ek", rk.ek, "Expert-knowledge base JSON (missing file = empty)");
  c_rank->add_option("--gamma-plus", rk.gamma_plus, "Gain of the culprit rate")
      ->capture_default_str();
  c_rank->add_option("--gamma-minus", rk.gamma_minus, "Gain of the bystander rate")
      ->capture_default_str();
  c_rank->add_option("--out", rk.out, "Ranking CSV")->required();
  c_rank->add_option("--json", rk.json_out, "Also write the ranking as JSON");
  c_rank->callback([&] { run_rank(rk); });

  EvalArgs ev;
  auto* c_eval = app.add_subcommand("eval", "Evaluate scores or a ranking against labels");
  c_eval->add_option("--scores", ev.scores, "Scores CSV");
  c_eval->add_option("--ranking", ev.ranking, "Ranking CSV");
  c_eval->add_option("--gt", ev.gt, "Ground-truth CSV");
  c_eval->add_option("--quantile", ev.quantile, "Binarization quantile")->capture_default_str();
  c_eval->add_option("--cd", ev.cd, "Nemenyi critical difference for K algorithms, N datasets")
      ->expected(2);
  c_eval->add_option("--alpha", ev.alpha, "Nemenyi significance level")->capture_default_str();
  c_eval->add_option("--out", ev.out, "Report JSON [stdout]");
  c_eval->callback([&] { run_eval(ev); });

  auto* c_ek = app.add_subcommand("ek", "Maintain the expert-knowledge base");
  c_ek->require_subcommand(1);

  EkUpdateArgs eku;
  auto* c_eku = c_ek->add_subcommand("update", "Record one troubleshooting case");
  c_eku->add_option("--base", eku.base, "Base JSON (created when missing)")->required();
  c_eku->add_option("--ranking", eku.ranking, "Feature scores of the case (ranking CSV)");
  c_eku->add_option("--data", eku.data, "Preprocessed dataset CSV (with --scores)");
  c_eku->add_option("--scores", eku.scores, "Detector scores CSV (with --data)");
  eku.options.add_to(c_eku);
  c_eku->add_option("--gt", eku.gt, "Ground-truth CSV of the case")->required();
  c_eku->add_option("--out", eku.out, "Output base [rewrites --base]");
  c_eku->callback([&] { run_ek_update(eku); });

  EkApplyArgs eka;
  auto* c_eka = c_ek->add_subcommand("apply", "Re-weight a ranking with a base");
  c_eka->add_option("--base", eka.base, "Base JSON")->required();
  c_eka->add_option("--ranking", eka.ranking, "Ranking CSV")->required();
  c_eka->add_option("--gamma-plus", eka.gamma_plus, "Gain of the culprit rate")
      ->capture_default_str();
  c_eka->add_option("--gamma-minus", eka.gamma_minus, "Gain of the bystander rate")
      ->capture_default_str();
  c_eka->add_option("--out", eka.out, "Re-ranked CSV")->required();
  c_eka->add_option("--json", eka.json_out, "Also write the ranking as JSON");
  c_eka->callback([&] { run_ek_apply(eka); });

  EkMergeArgs ekm;
  auto* c_ekm = c_ek->add_subcommand("merge", "Sum the counters of several bases");
  c_ekm->add_option("bases", ekm.bases, "Base JSON files")->required();
  c_ekm->add_option("--out", ekm.out, "Merged base [stdout]");
  c_ekm->callback([&] { run_ek_merge(ekm); });

  SynthArgs sy;
  auto* c_syn = app.add_subcommand("synth", "Generate labelled synthetic KPI data");
  c_syn->add_option("spec", sy.spec, "Synthetic spec: JSON object or file [defaults]");
  c_syn->add_option("--out-dir", sy.out_dir, "Output directory")->capture_default_str();
  c_syn->add_option("--corpus", sy.corpus, "Generate a corpus of this many datasets");
  c_syn->add_option("--p-recurring", sy.p_recurring, "Chance the chronic KPI is a culprit")
      ->capture_default_str();
  c_syn->add_option("--corpus-seed", sy.corpus_seed, "Corpus seed [spec seed]");
  c_syn->callback([&] { run_synth(sy); });

  BenchArgs be;
  auto* c_bench = app.add_subcommand("bench", "Benchmark detectors and rankings over a corpus");
  c_bench->add_option("corpus", be.dir, "Directory of NAME.csv / NAME.gt.csv pairs")->required();
  c_bench->add_option("--config", be.config, "Config: JSON object or file");
  c_bench->add_option("--mode", be.mode, "lb, ub or both");
  c_bench->add_option("--algos", be.algorithms, "Detectors to run")->delimiter(',');
  c_bench->add_option("--seed", be.seed, "Seed");
  auto* o_q = c_bench->add_option("--quantile", be.quantile, "Binarization quantile");
  c_bench->add_option("--threshold", be.threshold, "Binarization threshold")->excludes(o_q);
  c_bench->add_option("--fs", be.fs, "Feature scoring");
  c_bench->add_option("--gamma-plus", be.gamma_plus, "Gain of the culprit rate");
  c_bench->add_option("--gamma-minus", be.gamma_minus, "Gain of the bystander rate");
  c_bench->add_option("--alpha", be.alpha, "Nemenyi significance level");
  c_bench->add_flag("--loo,!--no-loo", be.loo, "Leave-one-out expert knowledge");
  c_bench->add_flag("--oracle,!--no-oracle", be.oracle, "Include the oracle");
  c_bench->add_flag("--ensemble,!--no-ensemble", be.ensemble, "Include the ideal ensemble");
  c_bench->add_option("--threads", be.threads, "Worker threads (overrides HURRA_THREADS)");
  c_bench->add_option("--out", be.out, "Report JSON [stdout]");
  c_bench->add_option("--csv", be.csv, "Per-dataset table CSV");
  c_bench->callback([&] { run_bench(be); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 4;
  } catch (const CliError& e) {
    std::cerr << "hurra: " << e.message << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "hurra: internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
