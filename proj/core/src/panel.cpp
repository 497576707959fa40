// Copyright 2026 The ppvar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ppvar/panel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ppvar/csv.hpp"
#include "ppvar/errors.hpp"

namespace ppvar {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool is_timestamp_header(const std::string& name) {
  const std::string l = lower(name);
  // An empty first header cell is an index column (R convention).
  return l.empty() || l == "timestamp" || l == "time" || l == "datetime" ||
         l == "date";
}

bool is_missing_cell(const std::string& cell) {
  if (cell.empty()) return true;
  const std::string l = lower(cell);
  return l == "na" || l == "nan" || l == "null" || l == "n/a";
}

}  // namespace

void TimeSeriesPanel::validate() const {
  if (values.rows() < 1 || values.cols() < 1)
    throw ShapeError("panel must have at least one row and one column");
  if (static_cast<Eigen::Index>(owners.size()) != values.cols())
    throw ShapeError("owner count does not match column count");
  if (!values.allFinite())
    throw ShapeError("panel contains non-finite entries");
  std::set<std::string> distinct(owners.begin(), owners.end());
  if (static_cast<Eigen::Index>(distinct.size()) != values.cols())
    throw ShapeError("owner identifiers must be distinct");
  if (!timestamps.empty()) {
    if (static_cast<Eigen::Index>(timestamps.size()) != values.rows())
      throw ShapeError("timestamp count does not match row count");
    for (size_t t = 1; t < timestamps.size(); ++t)
      if (!(timestamps[t] > timestamps[t - 1]))
        throw ShapeError("timestamps must be strictly increasing");
  }
}

std::vector<std::string> default_owner_names(int n) {
  std::vector<std::string> names;
  names.reserve(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) names.push_back("A" + std::to_string(i));
  return names;
}

void write_panel_csv(const std::string& path, const TimeSeriesPanel& panel) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open for writing: " + path);
  const bool with_ts = !panel.timestamps.empty();
  if (with_ts) os << "timestamp,";
  for (size_t j = 0; j < panel.owners.size(); ++j) {
    if (j) os << ',';
    os << panel.owners[j];
  }
  os << '\n';
  for (Eigen::Index t = 0; t < panel.values.rows(); ++t) {
    if (with_ts) os << format_double(panel.timestamps[static_cast<size_t>(t)]) << ',';
    for (Eigen::Index j = 0; j < panel.values.cols(); ++j) {
      if (j) os << ',';
      os << format_double(panel.values(t, j));
    }
    os << '\n';
  }
}

PanelReadResult read_panel_csv(const std::string& path,
                               const PanelReadOptions& options) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(is, line)) throw Error("empty panel file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header = split_csv_line(line);
  if (header.empty()) throw Error("empty header in " + path);

  const bool with_ts = is_timestamp_header(header.front());
  const size_t first_col = with_ts ? 1 : 0;
  std::vector<std::string> all_owners(header.begin() +
                                          static_cast<long>(first_col),
                                      header.end());

  std::vector<size_t> selected;
  std::vector<std::string> owners;
  if (options.columns.empty()) {
    owners = all_owners;
    for (size_t j = 0; j < all_owners.size(); ++j) selected.push_back(j);
  } else {
    std::vector<std::string> missing;
    for (const auto& want : options.columns) {
      auto it = std::find(all_owners.begin(), all_owners.end(), want);
      if (it == all_owners.end()) {
        missing.push_back(want);
      } else {
        selected.push_back(static_cast<size_t>(it - all_owners.begin()));
        owners.push_back(want);
      }
    }
    if (!missing.empty()) {
      std::ostringstream msg;
      msg << "missing columns in " << path << ":";
      for (const auto& m : missing) msg << ' ' << m;
      throw IngestionError(msg.str(), {});
    }
  }

  std::vector<std::vector<double>> rows;
  std::vector<double> timestamps;
  std::vector<int> nonfinite_rows;
  int dropped = 0;
  int data_row = 0;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++data_row;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      if (options.drop_missing_rows) {
        ++dropped;
        continue;
      }
      throw IngestionError("row " + std::to_string(data_row) +
                               " has wrong cell count in " + path,
                           {data_row});
    }
    std::vector<double> row(selected.size());
    bool missing = false;
    bool nonfinite = false;
    for (size_t j = 0; j < selected.size(); ++j) {
      const std::string& cell = cells[first_col + selected[j]];
      if (is_missing_cell(cell)) {
        // "nan" literals are non-finite values, not absent cells.
        if (lower(cell) == "nan") nonfinite = true;
        missing = true;
        break;
      }
      try {
        row[j] = std::stod(cell);
      } catch (const std::exception&) {
        missing = true;
        break;
      }
      if (!std::isfinite(row[j])) nonfinite = true;
    }
    if (nonfinite) {
      nonfinite_rows.push_back(data_row);
      continue;
    }
    if (missing) {
      if (!options.drop_missing_rows)
        throw IngestionError("row " + std::to_string(data_row) +
                                 " has missing values in " + path,
                             {data_row});
      ++dropped;
      continue;
    }
    if (with_ts) {
      try {
        timestamps.push_back(std::stod(cells[0]));
      } catch (const std::exception&) {
        timestamps.push_back(static_cast<double>(data_row));
      }
    }
    rows.push_back(std::move(row));
  }
  if (!nonfinite_rows.empty()) {
    std::ostringstream msg;
    msg << "non-finite entries in " << path << " at rows:";
    for (int r : nonfinite_rows) msg << ' ' << r;
    throw IngestionError(msg.str(), nonfinite_rows);
  }
  if (rows.empty()) throw Error("no data rows in " + path);

  TimeSeriesPanel panel;
  panel.values.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(selected.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      panel.values(static_cast<Eigen::Index>(i),
                   static_cast<Eigen::Index>(j)) = rows[i][j];
  panel.owners = owners;
  if (with_ts && timestamps.size() == rows.size()) {
    bool monotone = true;
    for (size_t t = 1; t < timestamps.size(); ++t)
      if (!(timestamps[t] > timestamps[t - 1])) monotone = false;
    if (monotone) panel.timestamps = timestamps;
  }
  panel.validate();
  return {std::move(panel), dropped};
}

}  // namespace ppvar
