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

#ifndef PPVAR_CSV_HPP_
#define PPVAR_CSV_HPP_

#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ppvar {

// Shortest decimal text that round-trips the IEEE-754 double exactly.
std::string format_double(double v);

std::vector<std::string> split_csv_line(const std::string& line);

// Plain numeric matrix, optional header line with column names.
void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m,
                      const std::vector<std::string>& header = {});
void write_matrix_csv_file(const std::string& path, const Eigen::MatrixXd& m,
                           const std::vector<std::string>& header = {});
Eigen::MatrixXd read_matrix_csv_file(const std::string& path, bool has_header);

// Generic long-format table: header + string cells. Used for metric and
// report tables so every writer produces byte-identical output for equal
// inputs.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
void write_table_csv(std::ostream& os, const Table& table);
void write_table_csv_file(const std::string& path, const Table& table);

}  // namespace ppvar

#endif  // PPVAR_CSV_HPP_
