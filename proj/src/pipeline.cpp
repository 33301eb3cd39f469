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

#include "hurra/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <sstream>

#include "hurra/csv.hpp"
#include "hurra/error.hpp"
#include "hurra/parallel.hpp"
#include "hurra/preprocess.hpp"

namespace hurra {
namespace {

constexpr const char* kOracleLabel = "oracle";
constexpr const char* kEnsembleLabel = "ensemble";

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }
Json opt(const std::optional<ReadingEffort>& e) { return e ? to_json(*e) : Json(nullptr); }

struct Row {
  std::string label;
  std::optional<DetectorSpec> spec;
  std::optional<ScoreSeries> series;
  std::optional<double> pr_auc, roc_auc;
  std::optional<std::size_t> flagged;
  std::optional<FeatureScores> scores;
  std::optional<double> ndcg, ndcg_ek;
  std::optional<ReadingEffort> effort, effort_ek;
  std::vector<std::string> notes;
  std::string error;
};

struct Outcome {
  std::string name;
  std::optional<Dataset> dhat;
  std::optional<GroundTruth> gt;
  Json preprocess = nullptr;
  std::vector<Row> rows;
  std::string error;
};

std::vector<std::string> row_labels(const BenchConfig& c) {
  std::vector<std::string> out;
  for (Algorithm a : c.algorithms) {
    if (c.lower_bound) out.emplace_back(algorithm_name(a));
    if (c.upper_bound) out.push_back(std::string(algorithm_name(a)) + "/ub");
  }
  if (c.ensemble) out.push_back(kEnsembleLabel);
  if (c.oracle) out.push_back(kOracleLabel);
  return out;
}

bool is_reference(const std::string& label) {
  return label == kOracleLabel || label == kEnsembleLabel;
}

template <typename Fn>
void guarded(Row& row, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    if (row.error.empty()) row.error = e.what();
  }
}

void score_row(Row& row, const Dataset& dhat, const GroundTruth& gt, const TimeslotLabels& truth,
               const BenchConfig& config) {
  if (!row.series) return;
  guarded(row, [&] {
    row.pr_auc = pr_auc(row.series->scores, truth);
    row.roc_auc = roc_auc(row.series->scores, truth);
    const TimeslotLabels a = anomaly_vector(*row.series, config.binarization);
    row.flagged = a.count();
    FeatureScores s = score_features(dhat, a, FSPolicy::of(config.fs, config.seed));
    const FeatureRanking ranking = rank_features(s);
    const auto relevant = relevant_features(ranking, gt);
    if (!relevant.empty()) {
      row.ndcg = ndcg(ranking, relevant);
      row.effort = reading_effort(ranking, relevant);
    }
    row.scores = std::move(s);
  });
}

Outcome run_case(const BenchCase& c, const BenchConfig& config) {
  Outcome out;
  out.name = c.name;
  for (const auto& label : row_labels(config)) {
    out.rows.emplace_back();
    out.rows.back().label = label;
  }
  try {
    auto [dhat, report] = preprocess(c.raw);
    out.preprocess = to_json(report);
    out.gt = align_ground_truth(c.truth, c.truth_times, dhat.timestamps());
    out.dhat = std::move(dhat);
  } catch (const Error& e) {
    out.error = e.what();
    return out;
  }
  const Dataset& dhat = *out.dhat;
  const GroundTruth& gt = *out.gt;
  const TimeslotLabels truth = derive_timeslot_labels(gt);
  if (truth.count() == 0 || truth.count() == truth.size()) {
    out.error = "ground truth must flag some but not all timeslots";
    return out;
  }

  std::size_t r = 0;
  for (Algorithm a : config.algorithms) {
    if (config.lower_bound) {
      Row& row = out.rows[r++];
      guarded(row, [&] {
        DetectorSpec spec{a, {}, config.seed};
        if (auto it = config.params.find(a); it != config.params.end()) spec.params = it->second;
        spec = resolve_spec(spec);
        row.series = run_detector(dhat, spec);
        row.notes = row.series->notes;
        row.spec = std::move(spec);
      });
    }
    if (config.upper_bound) {
      Row& row = out.rows[r++];
      guarded(row, [&] {
        auto it = config.grids.find(a);
        const HyperGrid grid = it != config.grids.end() ? it->second : default_grid(a);
        GridSearchResult g = grid_search(dhat, grid, gt, config.seed);
        row.notes = g.scores.notes;
        row.notes.push_back("grid: " + std::to_string(g.evaluated) + " evaluated, " +
                            std::to_string(g.skipped.size()) + " skipped");
        row.series = std::move(g.scores);
        row.spec = std::move(g.spec);
      });
    }
  }
  if (config.ensemble) {
    Row& row = out.rows[r++];
    std::vector<DetectorResult> members;
    std::vector<std::size_t> from;
    for (std::size_t i = 0; i < out.rows.size(); ++i) {
      const Row& m = out.rows[i];
      if (!is_reference(m.label) && m.series && m.spec) {
        members.push_back({*m.spec, *m.series});
        from.push_back(i);
      }
    }
    guarded(row, [&] {
      const EnsembleChoice choice = ideal_ensemble(members, gt);
      row.series = members[choice.index].scores;
      row.spec = members[choice.index].spec;
      row.notes.push_back("member: " + out.rows[from[choice.index]].label);
    });
  }
  if (config.oracle) {
    Row& row = out.rows[r++];
    row.series = oracle_scores(gt);
  }
  for (Row& row : out.rows) score_row(row, dhat, gt, truth, config);
  return out;
}

struct Stats {
  std::vector<double> values;
  Json median() const { return values.empty() ? Json(nullptr) : Json(hurra::median(values)); }
  Json mean() const {
    if (values.empty()) return nullptr;
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  }
};

Json summarize(const std::vector<Outcome>& outcomes, const std::vector<std::string>& labels,
               const BenchConfig& config) {
  Json median_auc = Json::object(), table = Json::array();
  for (std::size_t l = 0; l < labels.size(); ++l) {
    Stats auc, nd, m, e, nd_ek, m_ek, e_ek;
    for (const auto& o : outcomes) {
      const Row& row = o.rows[l];
      if (row.pr_auc) auc.values.push_back(*row.pr_auc);
      if (row.ndcg) nd.values.push_back(*row.ndcg);
      if (row.effort) {
        m.values.push_back(static_cast<double>(row.effort->m));
        e.values.push_back(static_cast<double>(row.effort->e));
      }
      if (row.ndcg_ek) nd_ek.values.push_back(*row.ndcg_ek);
      if (row.effort_ek) {
        m_ek.values.push_back(static_cast<double>(row.effort_ek->m));
        e_ek.values.push_back(static_cast<double>(row.effort_ek->e));
      }
    }
    median_auc[labels[l]] = auc.median();
    Json entry = {{"detector", labels[l]},
                  {"datasets", nd.values.size()},
                  {"ndcg_mean", nd.mean()},
                  {"ndcg_median", nd.median()},
                  {"m_mean", m.mean()},
                  {"m_median", m.median()},
                  {"e_mean", e.mean()}};
    if (config.loo) {
      entry["ndcg_ek_mean"] = nd_ek.mean();
      entry["ndcg_ek_median"] = nd_ek.median();
      entry["m_ek_mean"] = m_ek.mean();
      entry["m_ek_median"] = m_ek.median();
      entry["e_ek_mean"] = e_ek.mean();
    }
    table.push_back(std::move(entry));
  }

  // Average ranks of the detectors (not the references) on Pr-Rec AUC, over
  // datasets where every compared detector produced a value.
  std::vector<std::size_t> compared;
  for (std::size_t l = 0; l < labels.size(); ++l) {
    if (!is_reference(labels[l])) compared.push_back(l);
  }
  MetricMatrix matrix(compared.size());
  for (const auto& o : outcomes) {
    const bool complete = std::all_of(compared.begin(), compared.end(),
                                      [&](std::size_t l) { return o.rows[l].pr_auc.has_value(); });
    if (!complete || compared.empty()) continue;
    for (std::size_t i = 0; i < compared.size(); ++i) matrix[i].push_back(*o.rows[compared[i]].pr_auc);
  }
  Json ranks = nullptr;
  const std::size_t k = compared.size();
  const std::size_t N = matrix.empty() ? 0 : matrix.front().size();
  if (k >= 2 && k <= 20 && N >= 1) {
    const std::vector<double> mean = average_ranks(matrix);
    const double cd = nemenyi_cd(k, N, config.alpha);
    Json per = Json::object();
    for (std::size_t i = 0; i < k; ++i) per[labels[compared[i]]] = mean[i];
    Json linked = Json::array();
    for (const auto& [i, j] : nemenyi_linked_pairs(mean, cd)) {
      linked.push_back({labels[compared[i]], labels[compared[j]]});
    }
    ranks = {{"metric", "pr_auc"}, {"datasets", N},     {"alpha", config.alpha},
             {"cd", cd},           {"ranks", per},      {"linked_pairs", linked}};
  }
  return {{"median_pr_auc", median_auc}, {"average_ranks", ranks}, {"table", table}};
}

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return csv::format_double(v.get<double>());
  if (v.is_number()) return v.dump();
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
  }
  return v.dump();
}

}  // namespace

TimeslotLabels anomaly_vector(const ScoreSeries& scores, const BinarizationPolicy& policy) {
  if (scores.binary) return TimeslotLabels(*scores.binary);
  return binarize(scores.scores, policy);
}

std::set<std::string> relevant_features(const FeatureRanking& ranking, const GroundTruth& gt) {
  std::set<std::string> out;
  for (const auto& name : derive_feature_labels(gt)) {
    if (ranking.position(name)) out.insert(name);
  }
  return out;
}

std::vector<LooOutcome> leave_one_out(std::span<const CaseScores> cases, const EKGains& gains) {
  require(cases.size() >= 2, ErrorCode::kInvalidArgument,
          "leave-one-out needs at least two datasets");
  std::vector<EKBase> deltas(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) {
    deltas[i] = ek_update(EKBase{}, cases[i].scores, cases[i].truth);
  });
  std::vector<LooOutcome> out(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) {
    std::vector<EKBase> others;
    others.reserve(cases.size() - 1);
    for (std::size_t k = 0; k < cases.size(); ++k) {
      if (k != i) others.push_back(deltas[k]);
    }
    LooOutcome& o = out[i];
    o.name = cases[i].name;
    o.base = ek_merge(others);
    o.ranking = rank_features(ek_apply(cases[i].scores, o.base, gains));
    const auto relevant = relevant_features(o.ranking, cases[i].truth);
    if (!relevant.empty()) {
      o.ndcg = ndcg(o.ranking, relevant);
      o.effort = reading_effort(o.ranking, relevant);
    }
  });
  return out;
}

std::vector<BenchCase> load_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  require(fs::is_directory(dir, ec), ErrorCode::kIo, "corpus directory not found: " + dir);
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string file = entry.path().filename().string();
    const std::string suffix = ".gt.csv";
    if (file.size() > suffix.size() && file.ends_with(suffix)) {
      names.push_back(file.substr(0, file.size() - suffix.size()));
    }
  }
  std::sort(names.begin(), names.end());
  require(!names.empty(), ErrorCode::kEmpty, "no NAME.csv / NAME.gt.csv pairs in " + dir);
  std::vector<BenchCase> out;
  for (const auto& name : names) {
    const fs::path data = fs::path(dir) / (name + ".csv");
    require(fs::exists(data), ErrorCode::kFormat, "missing dataset for labels " + name + ".gt.csv");
    std::vector<Minutes> times;
    GroundTruth gt = csv::read_ground_truth_file((fs::path(dir) / (name + ".gt.csv")).string(), &times);
    out.push_back({name, csv::read_dataset_file(data.string()), std::move(gt), std::move(times)});
  }
  return out;
}

Json to_json(const BenchConfig& c) {
  Json algos = Json::array();
  for (Algorithm a : c.algorithms) algos.push_back(std::string(algorithm_name(a)));
  Json params = Json::object(), grids = Json::object();
  for (const auto& [a, p] : c.params) params[std::string(algorithm_name(a))] = p;
  for (const auto& [a, g] : c.grids) grids[std::string(algorithm_name(a))] = to_json(g).at("params");
  Json out = {{"algorithms", algos},
              {"mode", c.lower_bound && c.upper_bound ? "both" : (c.upper_bound ? "ub" : "lb")},
              {"params", params},
              {"grids", grids},
              {"oracle", c.oracle},
              {"ensemble", c.ensemble},
              {"fs", std::string(fs_name(c.fs))},
              {"gamma_plus", c.gains.gamma_plus},
              {"gamma_minus", c.gains.gamma_minus},
              {"loo", c.loo},
              {"seed", c.seed},
              {"alpha", c.alpha}};
  if (c.binarization.method == BinarizationPolicy::Method::kTopQuantile) {
    out["quantile"] = c.binarization.value;
  } else {
    out["threshold"] = c.binarization.value;
  }
  return out;
}

BenchConfig bench_config_from_json(const Json& j) {
  require(j.is_object(), ErrorCode::kFormat, "bench config must be a JSON object");
  require(!(j.contains("quantile") && j.contains("threshold")), ErrorCode::kInvalidArgument,
          "bench config: quantile and threshold are mutually exclusive");
  BenchConfig c;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "algorithms") {
        c.algorithms.clear();
        for (const auto& a : v) c.algorithms.push_back(parse_algorithm(a.get<std::string>()));
      } else if (key == "mode") {
        const auto mode = v.get<std::string>();
        require(mode == "lb" || mode == "ub" || mode == "both", ErrorCode::kInvalidArgument,
                "mode must be lb, ub or both");
        c.lower_bound = mode != "ub";
        c.upper_bound = mode != "lb";
      } else if (key == "params") {
        for (const auto& [a, p] : v.items()) c.params[parse_algorithm(a)] = params_from_json(p);
      } else if (key == "grids") {
        for (const auto& [a, g] : v.items()) {
          const Algorithm alg = parse_algorithm(a);
          c.grids[alg] = grid_from_json(g, alg);
        }
      } else if (key == "oracle") {
        c.oracle = v.get<bool>();
      } else if (key == "ensemble") {
        c.ensemble = v.get<bool>();
      } else if (key == "quantile") {
        c.binarization = BinarizationPolicy::top_quantile(v.get<double>());
      } else if (key == "threshold") {
        c.binarization = BinarizationPolicy::threshold(v.get<double>());
      } else if (key == "fs") {
        c.fs = parse_fs(v.get<std::string>());
      } else if (key == "gamma_plus") {
        c.gains.gamma_plus = v.get<double>();
      } else if (key == "gamma_minus") {
        c.gains.gamma_minus = v.get<double>();
      } else if (key == "loo") {
        c.loo = v.get<bool>();
      } else if (key == "seed") {
        c.seed = v.get<std::uint64_t>();
      } else if (key == "alpha") {
        c.alpha = v.get<double>();
      } else {
        fail(ErrorCode::kFormat, "bench config: unknown key '" + key + "'");
      }
    }
  } catch (const Json::exception& e) {
    fail(ErrorCode::kFormat, std::string("bench config: ") + e.what());
  }
  require(!c.algorithms.empty() || c.oracle, ErrorCode::kInvalidArgument,
          "bench config selects no detector");
  for (Algorithm a : c.algorithms) {
    require(a != Algorithm::kOracle, ErrorCode::kInvalidArgument,
            "list the oracle via \"oracle\": true, not under algorithms");
  }
  return c;
}

BenchReport run_bench(std::span<const BenchCase> corpus, const BenchConfig& config) {
  require(!corpus.empty(), ErrorCode::kEmpty, "empty corpus");
  require(!config.loo || corpus.size() >= 2, ErrorCode::kInvalidArgument,
          "leave-one-out needs at least two datasets (disable loo for a single dataset)");
  (void)nemenyi_q(2, config.alpha);  // validates alpha up front

  const std::vector<std::string> labels = row_labels(config);
  std::vector<Outcome> outcomes(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t i) { outcomes[i] = run_case(corpus[i], config); });

  std::vector<std::string> loo_notes;
  if (config.loo) {
    for (std::size_t l = 0; l < labels.size(); ++l) {
      std::vector<CaseScores> cases;
      std::vector<std::size_t> owner;
      for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const Row& row = outcomes[i].rows[l];
        if (row.scores && outcomes[i].gt) {
          cases.push_back({outcomes[i].name, *row.scores, *outcomes[i].gt});
          owner.push_back(i);
        }
      }
      if (cases.size() < 2) {
        loo_notes.push_back(labels[l] + ": fewer than two datasets with feature scores");
        continue;
      }
      const auto loo = leave_one_out(cases, config.gains);
      for (std::size_t c = 0; c < cases.size(); ++c) {
        Row& row = outcomes[owner[c]].rows[l];
        row.ndcg_ek = loo[c].ndcg;
        row.effort_ek = loo[c].effort;
      }
    }
  }

  BenchReport report;
  Json datasets = Json::array(), failures = Json::array();
  for (const auto& o : outcomes) {
    Json results = Json::array();
    for (const Row& row : o.rows) {
      if (!o.error.empty()) break;
      Json r = {{"detector", row.label},
                {"spec", row.spec ? to_json(*row.spec) : Json(nullptr)},
                {"pr_auc", opt(row.pr_auc)},
                {"roc_auc", opt(row.roc_auc)},
                {"flagged", row.flagged ? Json(*row.flagged) : Json(nullptr)},
                {"ndcg", opt(row.ndcg)},
                {"reading_effort", opt(row.effort)},
                {"notes", row.notes},
                {"error", row.error.empty() ? Json(nullptr) : Json(row.error)}};
      if (config.loo) {
        r["ndcg_ek"] = opt(row.ndcg_ek);
        r["reading_effort_ek"] = opt(row.effort_ek);
      }
      if (!row.error.empty()) {
        failures.push_back({{"dataset", o.name}, {"detector", row.label}, {"error", row.error}});
      }
      results.push_back(std::move(r));
    }
    Json d = {{"name", o.name}, {"preprocess", o.preprocess}, {"results", results}};
    if (o.dhat) {
      d["features"] = o.dhat->num_features();
      d["timeslots"] = o.dhat->num_timeslots();
      d["anomalous_timeslots"] = derive_timeslot_labels(*o.gt).count();
      d["anomalous_features"] = derive_feature_labels(*o.gt);
    }
    if (!o.error.empty()) {
      d["error"] = o.error;
      failures.push_back({{"dataset", o.name}, {"detector", nullptr}, {"error", o.error}});
    }
    datasets.push_back(std::move(d));
  }
  report.ok = failures.empty();
  report.json = {{"schema", 1},
                 {"config", to_json(config)},
                 {"detectors", labels},
                 {"datasets", datasets},
                 {"summary", summarize(outcomes, labels, config)},
                 {"loo_notes", loo_notes},
                 {"failures", failures}};
  return report;
}

std::string bench_csv(const Json& report) {
  std::ostringstream out;
  out << "dataset,detector,pr_auc,roc_auc,flagged,ndcg,m,t,e,ndcg_ek,m_ek,e_ek,error\n";
  auto effort = [](const Json& r, const char* key, const char* field) {
    return r.contains(key) && r.at(key).is_object() ? csv_cell(r.at(key).at(field)) : std::string();
  };
  for (const auto& d : report.at("datasets")) {
    for (const auto& r : d.at("results")) {
      out << csv_cell(d.at("name")) << ',' << csv_cell(r.at("detector")) << ','
          << csv_cell(r.at("pr_auc")) << ',' << csv_cell(r.at("roc_auc")) << ','
          << csv_cell(r.at("flagged")) << ',' << csv_cell(r.at("ndcg")) << ','
          << effort(r, "reading_effort", "m") << ',' << effort(r, "reading_effort", "t") << ','
          << effort(r, "reading_effort", "e") << ','
          << (r.contains("ndcg_ek") ? csv_cell(r.at("ndcg_ek")) : "") << ','
          << effort(r, "reading_effort_ek", "m") << ',' << effort(r, "reading_effort_ek", "e")
          << ',' << csv_cell(r.at("error")) << '\n';
    }
  }
  return out.str();
}

Json eval_scores(const ScoreSeries& scores, const GroundTruth& gt,
                 const BinarizationPolicy& policy) {
  const TimeslotLabels truth = derive_timeslot_labels(gt);
  require(truth.size() == scores.size(), ErrorCode::kInvalidArgument,
          "scores cover " + std::to_string(scores.size()) + " timeslots, labels cover " +
              std::to_string(truth.size()));
  require(truth.count() > 0, ErrorCode::kDegenerate,
          "ground truth flags no anomalous timeslot; Pr-Rec AUC is undefined");
  const TimeslotLabels a = anomaly_vector(scores, policy);
  const ConfusionCounts c = confusion(a, truth);
  auto safe = [](auto fn) -> Json {
    try {
      return fn();
    } catch (const Error&) {
      return nullptr;
    }
  };
  return {{"schema", 1},
          {"timeslots", truth.size()},
          {"anomalous_timeslots", truth.count()},
          {"prevalence", static_cast<double>(truth.count()) / static_cast<double>(truth.size())},
          {"pr_auc", pr_auc(scores.scores, truth)},
          {"roc_auc", roc_auc(scores.scores, truth)},
          {"flagged", a.count()},
          {"confusion", {{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}, {"tn", c.tn}}},
          {"precision", safe([&] { return precision(c); })},
          {"recall", safe([&] { return recall(c); })}};
}

Json eval_ranking(const FeatureRanking& ranking, const GroundTruth& gt) {
  const auto relevant = relevant_features(ranking, gt);
  require(!relevant.empty(), ErrorCode::kDegenerate,
          "ground truth flags no feature that appears in the ranking; nDCG is undefined");
  return {{"schema", 1},
          {"features", ranking.size()},
          {"relevant_features", relevant},
          {"ndcg", ndcg(ranking, relevant)},
          {"reading_effort", to_json(reading_effort(ranking, relevant))}};
}

}  // namespace hurra
