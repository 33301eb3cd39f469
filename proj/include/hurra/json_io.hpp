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

// JSON forms of specs, grids, reports and the expert-knowledge base.
// Objects use sorted keys, so dumps are canonical.

#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "hurra/detectors.hpp"
#include "hurra/evaluation.hpp"
#include "hurra/expert_knowledge.hpp"
#include "hurra/preprocess.hpp"
#include "hurra/synthetic.hpp"

namespace hurra {

using Json = nlohmann::json;

// Throws kFormat naming `what` on a syntax error.
Json parse_json(std::string_view text, std::string_view what);
Json read_json_file(const std::string& path);
// Two-space indented, newline terminated.
std::string dump_json(const Json& j);

// {"algo": "if", "params": {...}, "seed": 0}. Boolean params map to 0/1.
Json to_json(const DetectorSpec& spec);
DetectorSpec detector_spec_from_json(const Json& j);
ParamMap params_from_json(const Json& j);

// {"<param>": [candidates...]}; a {"algo": ..., "params": {...}} wrapper is
// also accepted, in which case its algo must match `algorithm`.
HyperGrid grid_from_json(const Json& j, Algorithm algorithm);
Json to_json(const HyperGrid& grid);

Json to_json(const PreprocessReport& report);

// {"features": {"<name>": {"n": 1, "n_plus": 0, "n_minus": 0}}}
Json to_json(const EKBase& base);
EKBase ek_base_from_json(const Json& j);

// [{"rank": 1, "feature": "...", "score": 0.5}, ...]
Json to_json(const FeatureRanking& ranking);

Json to_json(const ReadingEffort& e);

Json to_json(const SynthSpec& spec);
// Missing keys keep their SynthSpec defaults.
SynthSpec synth_spec_from_json(const Json& j);

}  // namespace hurra
