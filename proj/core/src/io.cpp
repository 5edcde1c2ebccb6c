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

#include "aotoc/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>

namespace aotoc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_number(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return os;
}

}  // namespace

std::vector<cplx> read_complex_entries(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  std::vector<cplx> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    const auto comma = s.find(',');
    double re = 0.0, im = 0.0;
    const bool ok = comma == std::string_view::npos ? parse_number(s, re)
                                                    : parse_number(s.substr(0, comma), re) &&
                                                          parse_number(s.substr(comma + 1), im);
    if (!ok) throw FormatError(path.string() + ":" + std::to_string(lineno) + ": expected 're,im', got '" + line + "'");
    out.emplace_back(re, im);
  }
  return out;
}

Matrix read_complex_matrix(const std::filesystem::path& path) {
  const auto entries = read_complex_entries(path);
  const auto n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(entries.size()))));
  if (entries.empty() || n * n != static_cast<Index>(entries.size()))
    throw FormatError(path.string() + ": " + std::to_string(entries.size()) +
                      " entries do not form a square matrix");
  Matrix m(n, n);
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c) m(r, c) = entries[static_cast<std::size_t>(r * n + c)];
  return m;
}

Vector read_complex_vector(const std::filesystem::path& path) {
  const auto entries = read_complex_entries(path);
  if (entries.empty()) throw FormatError(path.string() + ": empty vector");
  return Eigen::Map<const Vector>(entries.data(), static_cast<Index>(entries.size()));
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void write_complex_matrix(const std::filesystem::path& path, const Matrix& m) {
  auto os = open_out(path);
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c)
      os << format_double(m(r, c).real()) << ',' << format_double(m(r, c).imag()) << '\n';
}

void write_series_csv(std::ostream& os, const ExperimentSeries& s) {
  os << "t,g,g1,g2,bound,typical\n";
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    const auto& r = s.rows[i];
    os << format_double(s.times[i]) << ',' << format_double(r.g) << ',' << format_double(r.g1) << ','
       << format_double(r.g2) << ',' << format_double(r.bound) << ',' << format_double(r.typical) << '\n';
  }
}

void write_series_csv(const std::filesystem::path& path, const ExperimentSeries& s) {
  auto os = open_out(path);
  write_series_csv(os, s);
}

void write_report_csv(std::ostream& os, const std::vector<AotocReport>& rows) {
  os << "method,g,g1,g2,bound,typical,stderr\n";
  for (const auto& r : rows)
    os << to_string(r.method) << ',' << format_double(r.g) << ',' << format_double(r.g1) << ','
       << format_double(r.g2) << ',' << format_double(r.bound) << ',' << format_double(r.typical) << ','
       << (r.mc_stderr ? format_double(*r.mc_stderr) : std::string()) << '\n';
}

void write_plot_data(const std::filesystem::path& path, const std::vector<ExperimentSeries>& series,
                     const std::vector<std::string>& labels) {
  if (labels.size() != series.size()) throw std::invalid_argument("write_plot_data: one label per series");
  auto os = open_out(path);
  const std::pair<const char*, double AotocReport::*> columns[] = {
      {"g", &AotocReport::g}, {"g1", &AotocReport::g1}, {"g2", &AotocReport::g2}};
  bool first = true;
  for (std::size_t k = 0; k < series.size(); ++k)
    for (const auto& [name, field] : columns) {
      if (!first) os << "\n\n";
      first = false;
      os << "# " << labels[k] << ' ' << name << '\n';
      for (std::size_t i = 0; i < series[k].times.size(); ++i)
        os << format_double(series[k].times[i]) << ' ' << format_double(series[k].rows[i].*field) << '\n';
    }
}

}  // namespace aotoc
