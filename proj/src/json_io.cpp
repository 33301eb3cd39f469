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

#include "hurra/json_io.hpp"

#include <cmath>

#include "hurra/csv.hpp"
#include "hurra/error.hpp"

namespace hurra {
namespace {

double number_or_flag(const Json& v, const std::string& key) {
  if (v.is_boolean()) return v.get<bool>() ? 1.0 : 0.0;
  require(v.is_number(), ErrorCode::kFormat, "parameter '" + key + "' must be a number");
  return v.get<double>();
}

const Json& object_field(const Json& j, const char* key, const char* what) {
  require(j.is_object() && j.contains(key), ErrorCode::kFormat,
          std::string(what) + ": missing key '" + key + "'");
  return j.at(key);
}

template <typename T>
T get_as(const Json& v, const char* key) {
  try {
    return v.get<T>();
  } catch (const Json::exception&) {
    fail(ErrorCode::kFormat, std::string("key '") + key + "' has the wrong type");
  }
}

std::uint64_t get_count(const Json& v, const char* key) {
  require(v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0),
          ErrorCode::kFormat, std::string("key '") + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

}  // namespace

Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::kFormat, std::string(what) + ": invalid JSON (" + e.what() + ")");
  }
}

Json read_json_file(const std::string& path) { return parse_json(csv::read_file(path), path); }

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const DetectorSpec& spec) {
  Json params = Json::object();
  for (const auto& [k, v] : spec.params) params[k] = v;
  return {{"algo", std::string(algorithm_name(spec.algorithm))},
          {"params", params},
          {"seed", spec.seed}};
}

ParamMap params_from_json(const Json& j) {
  require(j.is_object(), ErrorCode::kFormat, "params must be a JSON object");
  ParamMap out;
  for (const auto& [k, v] : j.items()) out[k] = number_or_flag(v, k);
  return out;
}

DetectorSpec detector_spec_from_json(const Json& j) {
  DetectorSpec spec;
  spec.algorithm = parse_algorithm(get_as<std::string>(object_field(j, "algo", "detector spec"), "algo"));
  if (j.contains("params")) spec.params = params_from_json(j.at("params"));
  if (j.contains("seed")) spec.seed = get_count(j.at("seed"), "seed");
  return spec;
}

HyperGrid grid_from_json(const Json& j, Algorithm algorithm) {
  require(j.is_object(), ErrorCode::kFormat, "grid must be a JSON object");
  const Json* values = &j;
  if (j.contains("params") && j.at("params").is_object()) {
    if (j.contains("algo")) {
      require(parse_algorithm(get_as<std::string>(j.at("algo"), "algo")) == algorithm,
              ErrorCode::kInvalidArgument, "grid algo does not match the requested algorithm");
    }
    values = &j.at("params");
  }
  HyperGrid grid{algorithm, {}};
  for (const auto& [k, v] : values->items()) {
    std::vector<double> candidates;
    if (v.is_array()) {
      for (const auto& c : v) candidates.push_back(number_or_flag(c, k));
    } else {
      candidates.push_back(number_or_flag(v, k));
    }
    require(!candidates.empty(), ErrorCode::kInvalidArgument,
            "grid parameter '" + k + "' has no candidates");
    grid.values[k] = std::move(candidates);
  }
  return grid;
}

Json to_json(const HyperGrid& grid) {
  Json params = Json::object();
  for (const auto& [k, v] : grid.values) params[k] = v;
  return {{"algo", std::string(algorithm_name(grid.algorithm))}, {"params", params}};
}

Json to_json(const PreprocessReport& report) {
  Json missing = Json::array();
  for (const auto& d : report.dropped_missing) {
    missing.push_back({{"feature", d.feature}, {"missing_fraction", d.missing_fraction}});
  }
  Json stats = Json::array();
  for (const auto& s : report.stats) {
    stats.push_back({{"feature", s.feature}, {"mean", s.mean}, {"std", s.stddev}});
  }
  return {{"dropped_constant", report.dropped_constant},
          {"dropped_missing", missing},
          {"imputed_cells", report.imputed_cells},
          {"stats", stats}};
}

Json to_json(const EKBase& base) {
  Json features = Json::object();
  for (const auto& [name, c] : base.features()) {
    features[name] = {{"n", c.n}, {"n_plus", c.n_plus}, {"n_minus", c.n_minus}};
  }
  return {{"features", features}};
}

EKBase ek_base_from_json(const Json& j) {
  const Json& features = object_field(j, "features", "expert-knowledge base");
  require(features.is_object(), ErrorCode::kFormat, "expert-knowledge base: 'features' must be an object");
  std::map<std::string, EKCounters> out;
  for (const auto& [name, c] : features.items()) {
    EKCounters counters;
    counters.n = get_count(object_field(c, "n", "expert-knowledge counters"), "n");
    counters.n_plus = get_count(object_field(c, "n_plus", "expert-knowledge counters"), "n_plus");
    counters.n_minus = get_count(object_field(c, "n_minus", "expert-knowledge counters"), "n_minus");
    out[name] = counters;
  }
  try {
    return EKBase(std::move(out));
  } catch (const Error& e) {
    fail(ErrorCode::kFormat, e.what());
  }
}

Json to_json(const FeatureRanking& ranking) {
  Json out = Json::array();
  std::size_t rank = 1;
  for (const auto& e : ranking.entries()) {
    out.push_back({{"rank", rank++}, {"feature", e.name}, {"score", e.score}});
  }
  return out;
}

Json to_json(const ReadingEffort& e) { return {{"m", e.m}, {"t", e.t}, {"e", e.e}}; }

Json to_json(const SynthSpec& spec) {
  return {{"name", spec.name},
          {"features", spec.features},
          {"timeslots", spec.timeslots},
          {"n_culprits", spec.n_culprits},
          {"prevalence", spec.prevalence},
          {"anomaly_kind", std::string(anomaly_kind_name(spec.anomaly))},
          {"base_kind", std::string(base_kind_name(spec.base))},
          {"missing_frac", spec.missing_frac},
          {"seed", spec.seed},
          {"name_pool", spec.name_pool}};
}

SynthSpec synth_spec_from_json(const Json& j) {
  require(j.is_object(), ErrorCode::kFormat, "synth spec must be a JSON object");
  SynthSpec s;
  for (const auto& [key, v] : j.items()) {
    const char* k = key.c_str();
    if (key == "name") s.name = get_as<std::string>(v, k);
    else if (key == "features" || key == "F") s.features = get_count(v, k);
    else if (key == "timeslots" || key == "T") s.timeslots = get_count(v, k);
    else if (key == "n_culprits") s.n_culprits = get_count(v, k);
    else if (key == "prevalence") s.prevalence = get_as<double>(v, k);
    else if (key == "anomaly_kind") s.anomaly = parse_anomaly_kind(get_as<std::string>(v, k));
    else if (key == "base_kind") s.base = parse_base_kind(get_as<std::string>(v, k));
    else if (key == "missing_frac") s.missing_frac = get_as<double>(v, k);
    else if (key == "seed") s.seed = get_count(v, k);
    else if (key == "name_pool") s.name_pool = get_as<std::vector<std::string>>(v, k);
    else fail(ErrorCode::kFormat, "synth spec: unknown key '" + key + "'");
  }
  return s;
}

}  // namespace hurra
