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

#ifndef PPVAR_PANEL_HPP_
#define PPVAR_PANEL_HPP_

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ppvar {

// Multivariate observation panel: one column per data owner, one row per
// timestamp. Timestamps are optional (synthetic panels omit them).
struct TimeSeriesPanel {
  Eigen::MatrixXd values;            // T x n
  std::vector<std::string> owners;   // n distinct identifiers
  std::vector<double> timestamps;    // empty or length T, strictly increasing

  Eigen::Index length() const { return values.rows(); }
  Eigen::Index n_series() const { return values.cols(); }

  // Throws on empty data, non-finite entries, duplicate owners or a
  // non-monotone timestamp sequence.
  void validate() const;
};

std::vector<std::string> default_owner_names(int n);

// Header row of owner identifiers, one data row per timestamp. When
// timestamps are present they are written as a leading "timestamp" column.
void write_panel_csv(const std::string& path, const TimeSeriesPanel& panel);

struct PanelReadOptions {
  // Rows with unparsable or empty cells are dropped instead of rejected.
  // Literal non-finite values (nan/inf) always reject the file.
  bool drop_missing_rows = false;
  // Restrict to these owner columns (all columns when empty).
  std::vector<std::string> columns;
};

struct PanelReadResult {
  TimeSeriesPanel panel;
  int dropped_rows = 0;
};

PanelReadResult read_panel_csv(const std::string& path,
                               const PanelReadOptions& options = {});

}  // namespace ppvar

#endif  // PPVAR_PANEL_HPP_
