// Copyright 2026 The sledsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLED_SWEEP_WRITERS_HPP
#define SLED_SWEEP_WRITERS_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "sled/pair_state.hpp"

namespace sled::sweep {

/// Shortest decimal that round-trips to the same double; -0 prints as 0.
std::string format_number(double v);

/// Writes via a temporary file and rename. Throws IoError.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents);

std::string read_file(const std::filesystem::path& path);

/// Lower-case hex SHA-256 of `data`.
std::string sha256_hex(const std::string& data);

/// CSV with a header row and numeric rows.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

/// {"basis": [[l1,l2],...], "re": [[...]], "im": [[...]]}, row-major in
/// basis order.
std::string density_matrix_json(const PairDensityMatrix& m);

/// Inverse of density_matrix_json. Throws IoError on malformed input.
PairDensityMatrix parse_density_matrix_json(const std::string& text);

struct HeatmapSpec {
  std::string title;
  std::vector<std::string> row_labels;  // top to bottom
  std::vector<std::string> col_labels;  // left to right
  std::vector<double> values;           // row-major
  double scale_min = 0.0;
  double scale_max = 1.0;
  bool log_scale = false;
  std::string x_title;
  std::string y_title;
};

std::string svg_heatmap(const HeatmapSpec& spec);

struct LineSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

std::string svg_line_plot(const std::string& title, const std::string& x_title,
                          const std::string& y_title,
                          const std::vector<LineSeries>& series);

}  // namespace sled::sweep

#endif  // SLED_SWEEP_WRITERS_HPP
