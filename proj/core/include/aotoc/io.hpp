// Copyright 2026 The aotoc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "aotoc/aotoc.hpp"
#include "aotoc/models.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace aotoc {

/// Raised for malformed input files; the message names the file and line.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Complex CSV: one "re,im" entry per line, row-major. Blank lines and lines
/// starting with '#' are skipped. A matrix file holds N^2 entries.
std::vector<cplx> read_complex_entries(const std::filesystem::path& path);
Matrix read_complex_matrix(const std::filesystem::path& path);
Vector read_complex_vector(const std::filesystem::path& path);
void write_complex_matrix(const std::filesystem::path& path, const Matrix& m);

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

/// Header t,g,g1,g2,bound,typical.
void write_series_csv(std::ostream& os, const ExperimentSeries& s);
void write_series_csv(const std::filesystem::path& path, const ExperimentSeries& s);

/// Header method,g,g1,g2,bound,typical,stderr.
void write_report_csv(std::ostream& os, const std::vector<AotocReport>& rows);

/// Two-column blocks "t value" per curve (g, g1, g2 of every series),
/// separated by two blank lines and headed by "# <label> <column>".
void write_plot_data(const std::filesystem::path& path, const std::vector<ExperimentSeries>& series,
                     const std::vector<std::string>& labels);

}  // namespace aotoc
