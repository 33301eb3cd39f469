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

#include "hurra/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "hurra/csv.hpp"
#include "hurra/detectors/dbscan.hpp"
#include "hurra/detectors/half_space_trees.hpp"
#include "hurra/detectors/isolation_forest.hpp"
#include "hurra/detectors/loda.hpp"
#include "hurra/detectors/random_histogram_forest.hpp"
#include "hurra/detectors/xstream.hpp"
#include "hurra/error.hpp"
#include "hurra/evaluation.hpp"
#include "hurra/parallel.hpp"

namespace hurra {
namespace {

enum class Kind { kCount, kFraction, kPositive, kFlag };

struct ParamInfo {
  const char* name;
  Kind kind;
  std::optional<double> fallback;
};

const std::vector<ParamInfo>& param_table(Algorithm a) {
  static const std::vector<ParamInfo> kIf = {
      {"feature_frac", Kind::kFraction, 0.50},
      {"sample_frac", Kind::kFraction, 0.75},
      {"trees", Kind::kCount, 200}};
  static const std::vector<ParamInfo> kRhf = {
      {"check_duplicates", Kind::kFlag, 1},
      {"max_height", Kind::kCount, 5},
      {"trees", Kind::kCount, 100}};
  static const std::vector<ParamInfo> kHst = {
      {"max_depth", Kind::kCount, 10},
      {"trees", Kind::kCount, 300},
      {"window_frac", Kind::kFraction, 0.30}};
  static const std::vector<ParamInfo> kLoda = {
      {"projections", Kind::kCount, 100},
      {"window_frac", Kind::kFraction, 0.30}};
  static const std::vector<ParamInfo> kXs = {
      {"chains", Kind::kCount, 100},
      {"depth", Kind::kCount, 10},
      {"init_frac", Kind::kFraction, 0.30},
      {"projections", Kind::kCount, 200}};
  static const std::vector<ParamInfo> kDb = {
      {"eps", Kind::kPositive, 13},
      {"leaf_size", Kind::kCount, 30},
      {"min_samples", Kind::kCount, 2},
      {"min_samples_frac", Kind::kFraction, std::nullopt}};
  static const std::vector<ParamInfo> kNone = {};
  switch (a) {
    case Algorithm::kIF: return kIf;
    case Algorithm::kRHF: return kRhf;
    case Algorithm::kHST: return kHst;
    case Algorithm::kLODA: return kLoda;
    case Algorithm::kXStream: return kXs;
    case Algorithm::kDBSCAN: return kDb;
    case Algorithm::kOracle: return kNone;
  }
  fail(ErrorCode::kInternal, "unhandled algorithm");
}

void check_value(Algorithm a, const ParamInfo& info, double v) {
  const std::string where = std::string(algorithm_name(a)) + "." + info.name;
  require(std::isfinite(v), ErrorCode::kInvalidArgument, where + " must be finite");
  switch (info.kind) {
    case Kind::kCount:
      require(v >= 1 && v == std::floor(v) && v <= 1e9, ErrorCode::kInvalidArgument,
              where + " must be a positive integer");
      break;
    case Kind::kFraction:
      require(v > 0.0 && v <= 1.0, ErrorCode::kInvalidArgument, where + " must lie in (0, 1]");
      break;
    case Kind::kPositive:
      require(v > 0.0, ErrorCode::kInvalidArgument, where + " must be > 0");
      break;
    case Kind::kFlag:
      require(v == 0.0 || v == 1.0, ErrorCode::kInvalidArgument, where + " must be 0 or 1");
      break;
  }
}

std::size_t count(const ParamMap& p, const char* key) {
  return static_cast<std::size_t>(p.at(key));
}

std::string warmup_note(const char* what, std::size_t n) {
  return std::string(what) + ": warmup of " + std::to_string(n) +
         " timeslots, scored retrospectively once the model is built";
}

std::size_t dbscan_min_samples(const ParamMap& p, std::size_t T) {
  auto it = p.find("min_samples_frac");
  if (it == p.end()) return count(p, "min_samples");
  return std::max<std::size_t>(2, fraction_of(it->second, T));
}

// Shared by run_detector and grid_search; `dbscan` may carry precomputed
// distances for the dataset.
ScoreSeries run_resolved(const Dataset& dhat, const DetectorSpec& spec, const GroundTruth* gt,
                         const DbscanModel* dbscan) {
  ScoreSeries out;
  out.detector_id = describe(spec);
  out.seed = spec.seed;
  const ParamMap& p = spec.params;

  if (spec.algorithm == Algorithm::kOracle) {
    require(gt != nullptr, ErrorCode::kInvalidArgument, "oracle detector needs ground truth");
    require(gt->num_timeslots() == dhat.num_timeslots(), ErrorCode::kInvalidArgument,
            "ground truth covers " + std::to_string(gt->num_timeslots()) +
                " timeslots, dataset has " + std::to_string(dhat.num_timeslots()));
    ScoreSeries o = oracle_scores(*gt);
    out.scores = std::move(o.scores);
    out.binary = std::move(o.binary);
    return out;
  }

  const std::vector<double> data = dhat.point_matrix();
  const PointView points(data, dhat.num_timeslots(), dhat.num_features());
  const std::size_t T = points.rows();

  switch (spec.algorithm) {
    case Algorithm::kIF:
      out.scores = if_score(points, {count(p, "trees"), p.at("sample_frac"), p.at("feature_frac"),
                                     spec.seed});
      break;
    case Algorithm::kRHF:
      out.scores = rhf_score(points, {count(p, "trees"), count(p, "max_height"),
                                      p.at("check_duplicates") != 0.0, spec.seed});
      break;
    case Algorithm::kHST:
      out.scores = hst_score(points, {p.at("window_frac"), count(p, "trees"),
                                      count(p, "max_depth"), spec.seed});
      out.notes.push_back(warmup_note("hst", fraction_of(p.at("window_frac"), T)));
      break;
    case Algorithm::kLODA: {
      LodaResult r = loda_score(points, {p.at("window_frac"), count(p, "projections"), spec.seed});
      out.scores = std::move(r.scores);
      out.notes = std::move(r.notes);
      out.notes.push_back(warmup_note("loda", fraction_of(p.at("window_frac"), T)));
      break;
    }
    case Algorithm::kXStream:
      out.scores = xstream_score(points, dhat.feature_names(),
                                 {count(p, "projections"), count(p, "chains"), count(p, "depth"),
                                  p.at("init_frac"), spec.seed});
      out.notes.push_back(warmup_note("xstream", fraction_of(p.at("init_frac"), T)));
      break;
    case Algorithm::kDBSCAN: {
      const std::size_t min_samples = dbscan_min_samples(p, T);
      std::vector<std::uint8_t> flags;
      if (dbscan != nullptr) {
        flags = dbscan->noise_flags(p.at("eps"), min_samples);
      } else {
        flags = DbscanModel(points).noise_flags(p.at("eps"), min_samples);
      }
      out.scores.assign(flags.begin(), flags.end());
      out.binary = std::move(flags);
      break;
    }
    case Algorithm::kOracle:
      break;
  }
  out.validate();
  return out;
}

}  // namespace

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kIF: return "if";
    case Algorithm::kRHF: return "rhf";
    case Algorithm::kHST: return "hst";
    case Algorithm::kLODA: return "loda";
    case Algorithm::kXStream: return "xstream";
    case Algorithm::kDBSCAN: return "dbscan";
    case Algorithm::kOracle: return "oracle";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kIF, Algorithm::kRHF, Algorithm::kHST, Algorithm::kLODA,
                      Algorithm::kXStream, Algorithm::kDBSCAN, Algorithm::kOracle}) {
    if (algorithm_name(a) == name) return a;
  }
  fail(ErrorCode::kInvalidArgument,
       "unknown algorithm '" + std::string(name) +
           "' (expected if, rhf, hst, loda, xstream, dbscan or oracle)");
}

std::vector<Algorithm> detector_algorithms() {
  return {Algorithm::kIF, Algorithm::kRHF, Algorithm::kHST,
          Algorithm::kLODA, Algorithm::kXStream, Algorithm::kDBSCAN};
}

ParamMap default_params(Algorithm a) {
  ParamMap out;
  for (const auto& info : param_table(a)) {
    if (info.fallback) out[info.name] = *info.fallback;
  }
  return out;
}

DetectorSpec resolve_spec(const DetectorSpec& spec) {
  const auto& table = param_table(spec.algorithm);
  DetectorSpec out = spec;
  for (const auto& [key, value] : spec.params) {
    auto it = std::find_if(table.begin(), table.end(),
                           [&](const ParamInfo& i) { return key == i.name; });
    if (it == table.end()) {
      std::string known;
      for (const auto& i : table) known += (known.empty() ? "" : ", ") + std::string(i.name);
      fail(ErrorCode::kInvalidArgument,
           "unknown parameter '" + key + "' for " + std::string(algorithm_name(spec.algorithm)) +
               (known.empty() ? " (takes none)" : " (known: " + known + ")"));
    }
    check_value(spec.algorithm, *it, value);
  }
  for (const auto& info : table) {
    if (info.fallback && !out.params.count(info.name)) out.params[info.name] = *info.fallback;
  }
  return out;
}

std::string describe(const DetectorSpec& spec) {
  std::string s(algorithm_name(spec.algorithm));
  s += '(';
  bool first = true;
  for (const auto& [k, v] : spec.params) {
    if (!first) s += ',';
    first = false;
    s += k + "=" + csv::format_double(v);
  }
  return s + ')';
}

std::size_t HyperGrid::size() const {
  std::size_t n = 1;
  for (const auto& [k, v] : values) n *= v.size();
  return n;
}

std::vector<DetectorSpec> HyperGrid::combinations(std::uint64_t seed) const {
  require(size() > 0, ErrorCode::kInvalidArgument, "hyperparameter grid is empty");
  std::vector<std::pair<std::string, const std::vector<double>*>> axes;
  for (const auto& [k, v] : values) axes.emplace_back(k, &v);
  std::vector<DetectorSpec> out;
  out.reserve(size());
  std::vector<std::size_t> idx(axes.size(), 0);
  for (;;) {
    DetectorSpec spec{algorithm, {}, seed};
    for (std::size_t a = 0; a < axes.size(); ++a) spec.params[axes[a].first] = (*axes[a].second)[idx[a]];
    out.push_back(std::move(spec));
    std::size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++idx[a] < axes[a].second->size()) break;
      idx[a] = 0;
      if (a == 0) return out;
    }
    if (axes.empty()) return out;
  }
}

HyperGrid default_grid(Algorithm a) {
  HyperGrid g{a, {}};
  const std::vector<double> pct = {0.01, 0.03, 0.10, 0.30};
  switch (a) {
    case Algorithm::kDBSCAN: {
      std::vector<double> eps;
      for (int e = 1; e <= 20; ++e) eps.push_back(e);
      std::vector<double> ms = {2, 5, 10, 20};
      for (int m = 40; m <= 200; m += 20) ms.push_back(m);
      g.values = {{"eps", eps}, {"leaf_size", {30}}, {"min_samples", ms}};
      break;
    }
    case Algorithm::kHST:
      g.values = {{"max_depth", {10}}, {"trees", {100, 200, 300}}, {"window_frac", pct}};
      break;
    case Algorithm::kIF: {
      const std::vector<double> frac = {0.10, 0.25, 0.50, 0.75, 1.0};
      g.values = {{"feature_frac", frac}, {"sample_frac", frac}, {"trees", {10, 50, 100, 200, 300}}};
      break;
    }
    case Algorithm::kLODA:
      g.values = {{"window_frac", pct}};
      break;
    case Algorithm::kRHF:
      g.values = {{"check_duplicates", {1, 0}}, {"max_height", {5, 6}}, {"trees", {100}}};
      break;
    case Algorithm::kXStream:
      g.values = {{"chains", {50, 100, 200, 300}},
                  {"depth", {10}},
                  {"init_frac", pct},
                  {"projections", {50, 100, 200, 300}}};
      break;
    case Algorithm::kOracle:
      break;
  }
  return g;
}

TimeslotLabels binarize(std::span<const double> scores, const BinarizationPolicy& policy) {
  const std::size_t T = scores.size();
  for (double s : scores) {
    require(std::isfinite(s), ErrorCode::kInvalidArgument, "cannot binarize non-finite scores");
  }
  std::vector<std::uint8_t> a(T, 0);
  if (policy.method == BinarizationPolicy::Method::kThreshold) {
    require(std::isfinite(policy.value), ErrorCode::kInvalidArgument,
            "binarization threshold must be finite");
    for (std::size_t t = 0; t < T; ++t) a[t] = scores[t] > policy.value;
    return TimeslotLabels(std::move(a));
  }
  const double q = policy.value;
  require(q > 0.0 && q < 1.0, ErrorCode::kInvalidArgument, "binarization quantile must lie in (0, 1)");
  if (T == 0) return TimeslotLabels(std::move(a));
  // The epsilon absorbs representation error, e.g. (1 - 0.95) * 2000.
  const double want = (1.0 - q) * static_cast<double>(T);
  auto n = static_cast<std::size_t>(std::ceil(want - 1e-9));
  n = std::clamp<std::size_t>(n, 1, T);
  std::vector<double> sorted(scores.begin(), scores.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(n - 1),
                   sorted.end(), std::greater<>());
  const double cut = sorted[n - 1];
  for (std::size_t t = 0; t < T; ++t) a[t] = scores[t] >= cut;
  return TimeslotLabels(std::move(a));
}

TimeslotLabels oracle_detector(const GroundTruth& gt) { return derive_timeslot_labels(gt); }

ScoreSeries oracle_scores(const GroundTruth& gt) {
  const TimeslotLabels a = oracle_detector(gt);
  ScoreSeries s;
  s.scores.assign(a.values().begin(), a.values().end());
  s.binary = a.values();
  s.detector_id = "oracle()";
  return s;
}

ScoreSeries run_detector(const Dataset& dhat, const DetectorSpec& spec, const GroundTruth* gt) {
  return run_resolved(dhat, resolve_spec(spec), gt, nullptr);
}

EnsembleChoice ideal_ensemble(std::span<const DetectorResult> results, const GroundTruth& gt) {
  require(!results.empty(), ErrorCode::kInvalidArgument, "ideal ensemble needs at least one member");
  const TimeslotLabels a = derive_timeslot_labels(gt);
  EnsembleChoice c;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const double auc = pr_auc(results[i].scores.scores, a);
    c.member_pr_auc.push_back(auc);
    if (i == 0 || auc > c.pr_auc) {
      c.index = i;
      c.pr_auc = auc;
    }
  }
  return c;
}

GridSearchResult grid_search(const Dataset& dhat, const HyperGrid& grid, const GroundTruth& gt,
                             std::uint64_t seed) {
  const std::vector<DetectorSpec> combos = grid.combinations(seed);
  const TimeslotLabels a = derive_timeslot_labels(gt);
  require(a.size() == dhat.num_timeslots(), ErrorCode::kInvalidArgument,
          "ground truth and dataset differ in length");

  std::optional<DbscanModel> dbscan;
  if (grid.algorithm == Algorithm::kDBSCAN) {
    const std::vector<double> data = dhat.point_matrix();
    dbscan.emplace(PointView(data, dhat.num_timeslots(), dhat.num_features()));
  }

  struct Outcome {
    std::optional<ScoreSeries> scores;
    double auc = 0.0;
    std::string error;
  };
  std::vector<Outcome> outcomes(combos.size());
  parallel_for(combos.size(), [&](std::size_t i) {
    try {
      const DetectorSpec spec = resolve_spec(combos[i]);
      ScoreSeries s = run_resolved(dhat, spec, &gt, dbscan ? &*dbscan : nullptr);
      outcomes[i].auc = pr_auc(s.scores, a);
      outcomes[i].scores = std::move(s);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInvalidArgument) throw;
      outcomes[i].error = e.what();
    }
  });

  GridSearchResult result;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < combos.size(); ++i) {
    if (!outcomes[i].scores) {
      result.skipped.push_back(describe(combos[i]) + ": " + outcomes[i].error);
      continue;
    }
    ++result.evaluated;
    if (!best || outcomes[i].auc > outcomes[*best].auc) best = i;
  }
  require(best.has_value(), ErrorCode::kDegenerate,
          "every combination of the " + std::string(algorithm_name(grid.algorithm)) +
              " grid failed its preconditions");
  result.spec = resolve_spec(combos[*best]);
  result.scores = std::move(*outcomes[*best].scores);
  result.pr_auc = outcomes[*best].auc;
  return result;
}

}  // namespace hurra
