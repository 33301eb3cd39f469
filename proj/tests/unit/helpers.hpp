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

// Helpers shared by the unit suites.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hurra/model.hpp"
#include "hurra/random.hpp"

namespace testing {

inline std::vector<std::string> names(std::size_t n, const std::string& prefix = "f") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(prefix + (i < 10 ? "0" : "") + std::to_string(i));
  }
  return out;
}

inline std::vector<hurra::Minutes> minutes(std::size_t n) {
  std::vector<hurra::Minutes> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<hurra::Minutes>(i);
  return t;
}

// rows: F rows of T values.
inline hurra::Dataset dataset(const std::vector<std::vector<double>>& rows,
                              const std::string& name = "d") {
  std::vector<double> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return hurra::Dataset::dense(name, names(rows.size()), minutes(rows.empty() ? 0 : rows[0].size()),
                               flat);
}

inline std::vector<std::vector<double>> random_rows(hurra::Rng& rng, std::size_t f, std::size_t t) {
  std::vector<std::vector<double>> rows(f, std::vector<double>(t));
  for (auto& r : rows) {
    for (double& v : r) v = rng.normal();
  }
  return rows;
}

// Random labels with at least one 0 and one 1.
inline std::vector<std::uint8_t> random_labels(hurra::Rng& rng, std::size_t t, double p = 0.3) {
  std::vector<std::uint8_t> a(t);
  for (;;) {
    std::size_t ones = 0;
    for (auto& v : a) ones += (v = rng.bernoulli(p) ? 1 : 0);
    if (ones > 0 && ones < t) return a;
  }
}

inline std::vector<int> as_int(const std::vector<std::uint8_t>& a) {
  return std::vector<int>(a.begin(), a.end());
}

}  // namespace testing
