// Copyright 2026 The policycert Authors.
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

// Report serialisation: JSON views of results, deterministic CSV tables,
// histograms and a small SVG renderer.

#ifndef POLICYCERT_REPORT_H_
#define POLICYCERT_REPORT_H_

#include <exception>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "policycert/bounds.h"
#include "policycert/shift.h"
#include "policycert/verify.h"

namespace policycert {

// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  static std::string cell(double x) { return format_double(x); }
  static std::string cell(int x) { return std::to_string(x); }
  static std::string cell(std::uint64_t x) { return std::to_string(x); }
  static std::string cell(bool x) { return x ? "true" : "false"; }
  static std::string cell(const std::string& x) { return x; }
  static std::string cell(const char* x) { return x; }
  template <typename T>
  static std::string cell(const std::optional<T>& x) {
    return x ? cell(*x) : std::string();
  }

  template <typename... Cells>
  void add(const Cells&... cells) {
    add_row({cell(cells)...});
  }
  // Throws InvalidArgument when the width differs from the header's.
  void add_row(std::vector<std::string> row);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

nlohmann::json to_json(const BoundResult& bound);
nlohmann::json to_json(const TestOutcome& outcome);
nlohmann::json to_json(const SelectionReport& report);
nlohmann::json to_json(const SensitivityResult& result);
// {"schema_version": 1, "error": {"code": ..., "message": ..., ...}} with the
// structured fields of the library's exception types.
nlohmann::json error_json(const std::exception& error);

// Stable pretty-printed JSON with a trailing newline.
std::string dump_report(const nlohmann::json& report);

struct Histogram {
  std::vector<double> edges;  // bins + 1 ascending edges
  std::vector<int> counts;    // left-closed bins; the last is also right-closed
};

// Equal-width bins over [lo, hi]; values outside are clamped into the end
// bins. lo == hi widens the range by 0.5 on each side.
Histogram make_histogram(std::span<const double> values, int bins, double lo, double hi);

struct HistogramSeries {
  std::string name;
  Histogram histogram;
};

struct LineSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotLabels {
  std::string title;
  std::string x_label;
  std::string y_label;
};

// Overlaid count histograms, each scaled to its own maximum, with optional
// vertical markers (for example the true measure).
std::string render_histogram_svg(const PlotLabels& labels,
                                 std::span<const HistogramSeries> series,
                                 std::span<const std::pair<std::string, double>> markers = {});
std::string render_lines_svg(const PlotLabels& labels, std::span<const LineSeries> series,
                             std::optional<double> y_reference = std::nullopt);

}  // namespace policycert

#endif  // POLICYCERT_REPORT_H_
