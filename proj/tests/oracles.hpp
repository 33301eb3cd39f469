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

// Brute-force reference implementations used by the unit and acceptance
// suites. Each one follows the textbook definition as literally as possible
// and shares no code with the library.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// Average precision by exhaustive thresholds: for every distinct score c
// (descending), flag everything >= c and accumulate (R - R_prev) * P.
inline double pr_auc(const std::vector<double>& s, const std::vector<int>& y) {
  std::set<double, std::greater<>> thresholds(s.begin(), s.end());
  double positives = 0;
  for (int v : y) positives += v;
  double r_prev = 0.0, area = 0.0;
  for (double c : thresholds) {
    double tp = 0, fp = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] >= c) (y[i] ? tp : fp) += 1;
    }
    const double r = tp / positives, p = tp / (tp + fp);
    area += (r - r_prev) * p;
    r_prev = r;
  }
  return area;
}

// Mann-Whitney U / (P N) with ties counted as one half.
inline double roc_auc(const std::vector<double>& s, const std::vector<int>& y) {
  double u = 0, p = 0, n = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!y[i]) continue;
    ++p;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (y[j]) continue;
      u += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
    }
  }
  for (int v : y) n += !v;
  return u / (p * n);
}

// order: feature names by rank; relevant: ground-truth features.
inline double ndcg(const std::vector<std::string>& order, const std::set<std::string>& relevant) {
  double dcg = 0, idcg = 0;
  for (std::size_t i = 1; i <= order.size(); ++i) {
    if (relevant.count(order[i - 1])) dcg += 1.0 / std::log2(static_cast<double>(i) + 1.0);
  }
  for (std::size_t i = 1; i <= relevant.size(); ++i) {
    idcg += 1.0 / std::log2(static_cast<double>(i) + 1.0);
  }
  return dcg / idcg;
}

inline std::size_t last_relevant_position(const std::vector<std::string>& order,
                                          const std::set<std::string>& relevant) {
  std::size_t m = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (relevant.count(order[i])) m = i + 1;
  }
  return m;
}

// rows: F rows of T values; a: T labels.
inline std::vector<double> fsa(const std::vector<std::vector<double>>& rows,
                               const std::vector<int>& a) {
  std::vector<double> out;
  for (const auto& row : rows) {
    double sa = 0, sn = 0, na = 0, nn = 0;
    for (std::size_t t = 0; t < row.size(); ++t) {
      if (a[t]) {
        sa += row[t];
        ++na;
      } else {
        sn += row[t];
        ++nn;
      }
    }
    out.push_back(std::fabs(sa / na - sn / nn));
  }
  return out;
}

// Rank of every feature by descending value, ties by name (names given in
// feature order). Ranks are 1-based; computed by counting who beats whom.
inline std::vector<int> ranks_by_value(const std::vector<double>& v,
                                       const std::vector<std::string>& names) {
  std::vector<int> r(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j == i) continue;
      if (v[j] > v[i] || (v[j] == v[i] && names[j] < names[i])) ++r[i];
    }
  }
  return r;
}

inline std::vector<double> fsr(const std::vector<std::vector<double>>& rows,
                               const std::vector<std::string>& names, const std::vector<int>& a) {
  std::vector<double> ma, mn;
  for (const auto& row : rows) {
    double sa = 0, sn = 0, na = 0, nn = 0;
    for (std::size_t t = 0; t < row.size(); ++t) {
      (a[t] ? sa : sn) += row[t];
      (a[t] ? na : nn) += 1;
    }
    ma.push_back(sa / na);
    mn.push_back(sn / nn);
  }
  const auto ra = ranks_by_value(ma, names), rn = ranks_by_value(mn, names);
  std::vector<double> out;
  for (std::size_t j = 0; j < rows.size(); ++j) out.push_back(std::abs(ra[j] - rn[j]));
  return out;
}

// Standard normal CDF by composite Simpson integration of the density.
inline double phi_integrated(double z) {
  const double lo = -12.0;
  if (z <= lo) return 0.0;
  const int n = 20000;
  const double h = (z - lo) / n;
  auto f = [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * 3.14159265358979323846); };
  double sum = f(lo) + f(z);
  for (int i = 1; i < n; ++i) sum += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

// P(Z > z) for z >= 0 by Simpson's rule over [z, z + 40].
inline double upper_tail_integrated(double z) {
  const int n = 20000;
  const double h = 40.0 / n;
  auto f = [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * 3.14159265358979323846); };
  double sum = f(z) + f(z + 40.0);
  for (int i = 1; i < n; ++i) sum += f(z + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

struct Counters {
  std::uint64_t n = 0, n_plus = 0, n_minus = 0;
  bool operator==(const Counters&) const = default;
};

// One case of the counter update rules.
inline void ek_update(std::map<std::string, Counters>& base,
                      const std::map<std::string, double>& s,
                      const std::set<std::string>& anomalous) {
  bool any = false;
  double floor = 0;
  for (const auto& [name, v] : s) {
    if (!anomalous.count(name)) continue;
    floor = any ? std::min(floor, v) : v;
    any = true;
  }
  for (const auto& [name, v] : s) {
    auto& c = base[name];
    c.n += 1;
    if (anomalous.count(name)) {
      c.n_plus += 1;
    } else if (any && v > floor) {
      c.n_minus += 1;
    }
  }
}

// Per-column average ranks (rank 1 = largest), ties averaged, then mean over
// columns. m[alg][dataset].
inline std::vector<double> average_ranks(const std::vector<std::vector<double>>& m) {
  const std::size_t k = m.size(), n = m[0].size();
  std::vector<double> out(k, 0.0);
  for (std::size_t d = 0; d < n; ++d) {
    for (std::size_t i = 0; i < k; ++i) {
      double better = 0, equal = 0;
      for (std::size_t j = 0; j < k; ++j) {
        if (m[j][d] > m[i][d]) ++better;
        if (m[j][d] == m[i][d]) ++equal;  // includes i itself
      }
      out[i] += better + (equal + 1.0) / 2.0;
    }
  }
  for (double& v : out) v /= static_cast<double>(n);
  return out;
}

}  // namespace oracle
