/*
 * Copyright 2026 The poda Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "poda/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "poda/error.hpp"

namespace poda {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell, std::size_t line_no, std::size_t col) {
  double v = 0.0;
  const char* begin = cell.data();
  const char* end = cell.data() + cell.size();
  if (!cell.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (cell.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line_no) + ", column " +
                     std::to_string(col + 1) + ": '" + cell + "' is not a finite number");
  }
  return v;
}

}  // namespace

FeatureVector Dataset::instance(std::size_t r) const {
  const auto row = features.row(r);
  return FeatureVector{std::vector<double>(row.begin(), row.end()), feature_names};
}

Dataset parse_csv(const std::string& text, const std::string& source,
                  const std::string& label_column) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split_line(line);
      break;
    }
  }
  if (header.empty()) throw ParseError(source + ": missing header row");

  std::optional<std::size_t> label_index;
  if (!label_column.empty()) {
    const auto it = std::find(header.begin(), header.end(), label_column);
    if (it == header.end()) {
      throw ParseError(source + ": label column '" + label_column + "' not in header");
    }
    label_index = static_cast<std::size_t>(it - header.begin());
  }

  Dataset data;
  data.source = source;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (label_index && c == *label_index) continue;
    data.feature_names.push_back(header[c]);
  }
  if (data.feature_names.empty()) throw ParseError(source + ": no feature columns");
  if (label_index) data.labels.emplace();

  std::vector<double> row;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != header.size()) {
      throw ParseError(source + ": line " + std::to_string(line_no) + " has " +
                       std::to_string(cells.size()) + " cells, header has " +
                       std::to_string(header.size()));
    }
    row.clear();
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const double v = parse_cell(cells[c], line_no, c);
      if (label_index && c == *label_index) {
        data.labels->push_back(v);
      } else {
        row.push_back(v);
      }
    }
    data.features.append_row(row);
  }
  return data;
}

Dataset read_csv(const std::filesystem::path& path, const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), path.string(), label_column);
}

BackgroundSet sample_background(const Dataset& data, std::size_t max_rows,
                                std::uint64_t seed) {
  if (data.size() == 0) throw DimensionError(data.source + ": no background rows");
  std::vector<std::size_t> picked(data.size());
  std::iota(picked.begin(), picked.end(), std::size_t{0});
  if (max_rows != 0 && max_rows < data.size()) {
    // Partial Fisher-Yates with an explicit index draw; std::shuffle's
    // sequence is not specified across standard libraries.
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < max_rows; ++k) {
      const std::size_t j = k + static_cast<std::size_t>(rng() % (data.size() - k));
      std::swap(picked[k], picked[j]);
    }
    picked.resize(max_rows);
    std::sort(picked.begin(), picked.end());
  }
  RowMatrix rows;
  for (std::size_t r : picked) rows.append_row(data.features.row(r));
  std::string source = data.source + " (" + std::to_string(picked.size()) + " of " +
                       std::to_string(data.size()) + " rows, seed " +
                       std::to_string(seed) + ")";
  return make_background(std::move(rows), std::move(source));
}

}  // namespace poda
