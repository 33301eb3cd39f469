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

#include "hurra/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hurra/error.hpp"

namespace hurra::csv {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

std::string where(std::size_t line, std::size_t column) {
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

double parse_double(std::string_view s, std::size_t line, std::size_t column) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    fail(ErrorCode::kFormat,
         "non-numeric value '" + std::string(s) + "' at " + where(line, column));
  }
  return v;
}

Minutes parse_minutes(std::string_view s, std::size_t line) {
  Minutes v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(ErrorCode::kFormat,
         "timestamp '" + std::string(s) + "' is not an integer minute count at " + where(line, 1));
  }
  return v;
}

// A header plus rows of equal width; blank lines are skipped.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;
};

Table read_table(std::istream& in, std::string_view what) {
  Table table;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (lineno == 1 && view.size() >= 3 && view.substr(0, 3) == "\xEF\xBB\xBF") {
      view.remove_prefix(3);
    }
    if (trim(view).empty()) continue;
    auto fields = split(view);
    if (!have_header) {
      for (auto f : fields) table.header.emplace_back(f);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      fail(ErrorCode::kFormat, std::string(what) + ": line " + std::to_string(lineno) + " has " +
                                   std::to_string(fields.size()) + " fields, header has " +
                                   std::to_string(table.header.size()));
    }
    std::vector<std::string> row;
    row.reserve(fields.size());
    for (auto f : fields) row.emplace_back(f);
    table.rows.push_back(std::move(row));
    table.line_numbers.push_back(lineno);
  }
  if (!have_header) fail(ErrorCode::kFormat, std::string(what) + ": empty file");
  return table;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path + "' for reading");
  return in;
}

template <typename Writer>
void write_via(const std::string& path, Writer&& writer) {
  std::ostringstream os;
  writer(os);
  write_file_atomic(path, os.str());
}

std::string stem_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) return "0";  // also folds -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) fail(ErrorCode::kInternal, "number formatting failed");
  return std::string(buf, ptr);
}

Dataset read_dataset(std::istream& in, std::string name) {
  Table table = read_table(in, "dataset");
  require(table.header.size() >= 2, ErrorCode::kFormat,
          "dataset: header must be 'timestamp,<kpi1>,...'");
  require(table.header[0] == "timestamp", ErrorCode::kFormat,
          "dataset: first header column must be 'timestamp'");
  require(!table.rows.empty(), ErrorCode::kEmpty, "dataset: no rows");
  std::vector<std::string> features(table.header.begin() + 1, table.header.end());
  const std::size_t F = features.size(), T = table.rows.size();
  std::vector<Minutes> ts(T);
  std::vector<Cell> values(F * T);
  for (std::size_t t = 0; t < T; ++t) {
    const auto& row = table.rows[t];
    const std::size_t lineno = table.line_numbers[t];
    ts[t] = parse_minutes(row[0], lineno);
    for (std::size_t j = 0; j < F; ++j) {
      if (row[j + 1].empty()) continue;
      values[j * T + t] = parse_double(row[j + 1], lineno, j + 2);
    }
  }
  return Dataset(std::move(name), std::move(features), std::move(ts), std::move(values));
}

Dataset read_dataset_file(const std::string& path) {
  auto in = open_in(path);
  return read_dataset(in, stem_of(path));
}

void write_dataset(std::ostream& out, const Dataset& d) {
  out << "timestamp";
  for (const auto& f : d.feature_names()) out << ',' << f;
  out << '\n';
  for (std::size_t t = 0; t < d.num_timeslots(); ++t) {
    out << d.timestamps()[t];
    for (std::size_t j = 0; j < d.num_features(); ++j) {
      out << ',';
      if (const Cell& c = d.at(j, t)) out << format_double(*c);
    }
    out << '\n';
  }
}

void write_dataset_file(const std::string& path, const Dataset& d) {
  write_via(path, [&](std::ostream& os) { write_dataset(os, d); });
}

GroundTruth read_ground_truth(std::istream& in, std::vector<Minutes>* timestamps) {
  Table table = read_table(in, "ground truth");
  require(table.header.size() >= 2 && table.header[0] == "timestamp", ErrorCode::kFormat,
          "ground truth: header must be 'timestamp,<kpi1>,...'");
  std::vector<std::string> features(table.header.begin() + 1, table.header.end());
  const std::size_t F = features.size(), T = table.rows.size();
  std::vector<std::uint8_t> labels(F * T, 0);
  if (timestamps) timestamps->clear();
  for (std::size_t t = 0; t < T; ++t) {
    const auto& row = table.rows[t];
    const std::size_t lineno = table.line_numbers[t];
    const Minutes ts = parse_minutes(row[0], lineno);
    if (timestamps) timestamps->push_back(ts);
    for (std::size_t j = 0; j < F; ++j) {
      const auto& cell = row[j + 1];
      if (cell == "0" || cell.empty()) continue;
      if (cell == "1") {
        labels[j * T + t] = 1;
        continue;
      }
      fail(ErrorCode::kFormat, "ground truth: expected 0 or 1, got '" + cell + "' at " +
                                   where(lineno, j + 2));
    }
  }
  return GroundTruth(std::move(features), T, std::move(labels));
}

GroundTruth read_ground_truth_file(const std::string& path, std::vector<Minutes>* timestamps) {
  auto in = open_in(path);
  return read_ground_truth(in, timestamps);
}

void write_ground_truth(std::ostream& out, const GroundTruth& g,
                        const std::vector<Minutes>& timestamps) {
  require(timestamps.size() == g.num_timeslots(), ErrorCode::kInvalidArgument,
          "ground truth and timestamps differ in length");
  out << "timestamp";
  for (const auto& f : g.feature_names()) out << ',' << f;
  out << '\n';
  for (std::size_t t = 0; t < g.num_timeslots(); ++t) {
    out << timestamps[t];
    for (std::size_t j = 0; j < g.num_features(); ++j) out << ',' << int{g.at(j, t)};
    out << '\n';
  }
}

void write_ground_truth_file(const std::string& path, const GroundTruth& g,
                             const std::vector<Minutes>& timestamps) {
  write_via(path, [&](std::ostream& os) { write_ground_truth(os, g, timestamps); });
}

ScoreSeries read_scores(std::istream& in, std::vector<Minutes>* timestamps) {
  Table table = read_table(in, "scores");
  const auto& h = table.header;
  const bool with_binary = h.size() == 3 && h[2] == "binary";
  require((h.size() == 2 || with_binary) && h[0] == "timestamp" && h[1] == "score",
          ErrorCode::kFormat, "scores: header must be 'timestamp,score[,binary]'");
  ScoreSeries s;
  s.scores.reserve(table.rows.size());
  if (with_binary) s.binary.emplace();
  if (timestamps) timestamps->clear();
  for (std::size_t t = 0; t < table.rows.size(); ++t) {
    const auto& row = table.rows[t];
    const std::size_t lineno = table.line_numbers[t];
    const Minutes ts = parse_minutes(row[0], lineno);
    if (timestamps) timestamps->push_back(ts);
    s.scores.push_back(parse_double(row[1], lineno, 2));
    if (with_binary) {
      require(row[2] == "0" || row[2] == "1", ErrorCode::kFormat,
              "scores: binary column must be 0 or 1 at " + where(lineno, 3));
      s.binary->push_back(row[2] == "1" ? 1 : 0);
    }
  }
  return s;
}

ScoreSeries read_scores_file(const std::string& path, std::vector<Minutes>* timestamps) {
  auto in = open_in(path);
  return read_scores(in, timestamps);
}

void write_scores(std::ostream& out, const ScoreSeries& s, const std::vector<Minutes>& timestamps) {
  require(timestamps.size() == s.size(), ErrorCode::kInvalidArgument,
          "scores and timestamps differ in length");
  out << (s.binary ? "timestamp,score,binary\n" : "timestamp,score\n");
  for (std::size_t t = 0; t < s.size(); ++t) {
    out << timestamps[t] << ',' << format_double(s.scores[t]);
    if (s.binary) out << ',' << int{(*s.binary)[t]};
    out << '\n';
  }
}

void write_scores_file(const std::string& path, const ScoreSeries& s,
                       const std::vector<Minutes>& timestamps) {
  write_via(path, [&](std::ostream& os) { write_scores(os, s, timestamps); });
}

FeatureRanking read_ranking(std::istream& in) {
  Table table = read_table(in, "ranking");
  const auto& h = table.header;
  require(h.size() == 3 && h[0] == "rank" && h[1] == "feature" && h[2] == "score",
          ErrorCode::kFormat, "ranking: header must be 'rank,feature,score'");
  std::vector<RankedFeature> entries;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const std::size_t lineno = table.line_numbers[i];
    require(parse_minutes(row[0], lineno) == static_cast<Minutes>(i + 1), ErrorCode::kFormat,
            "ranking: rank column must count 1, 2, ... (" + where(lineno, 1) + ")");
    entries.push_back({row[1], parse_double(row[2], lineno, 3)});
  }
  try {
    return FeatureRanking(std::move(entries));
  } catch (const Error& e) {
    fail(ErrorCode::kFormat, std::string("ranking: ") + e.what());
  }
}

FeatureRanking read_ranking_file(const std::string& path) {
  auto in = open_in(path);
  return read_ranking(in);
}

void write_ranking(std::ostream& out, const FeatureRanking& r) {
  out << "rank,feature,score\n";
  for (std::size_t i = 0; i < r.size(); ++i) {
    out << (i + 1) << ',' << r.entries()[i].name << ',' << format_double(r.entries()[i].score)
        << '\n';
  }
}

void write_ranking_file(const std::string& path, const FeatureRanking& r) {
  write_via(path, [&](std::ostream& os) { write_ranking(os, r); });
}

void write_file_atomic(const std::string& path, std::string_view contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::kIo, "cannot open '" + tmp.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) fail(ErrorCode::kIo, "write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorCode::kIo, "cannot rename onto '" + path + "'");
  }
}

std::string read_file(const std::string& path) {
  auto in = open_in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace hurra::csv
