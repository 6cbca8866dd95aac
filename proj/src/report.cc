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

#include "policycert/report.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "policycert/config.h"
#include "policycert/error.h"

namespace policycert {
namespace {

using nlohmann::json;

constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c",
                                                 "#ff7f0e", "#9467bd", "#8c564b"};
constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 24.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 52.0;

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Short human label for axis ticks.
std::string tick(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

json optional_json(const std::optional<double>& x) {
  return x ? json(*x) : json(nullptr);
}

json optional_json(const std::optional<int>& x) { return x ? json(*x) : json(nullptr); }

struct Frame {
  double x_lo, x_hi, y_lo, y_hi;
  double px(double x) const {
    return kLeft + (x - x_lo) / (x_hi - x_lo) * (kWidth - kLeft - kRight);
  }
  double py(double y) const {
    return kHeight - kBottom - (y - y_lo) / (y_hi - y_lo) * (kHeight - kTop - kBottom);
  }
};

void open_svg(std::ostringstream& os, const PlotLabels& labels, const Frame& f) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
     << xml_escape(labels.title) << "</text>\n";
  const double x0 = f.px(f.x_lo), x1 = f.px(f.x_hi), y0 = f.py(f.y_lo), y1 = f.py(f.y_hi);
  os << "<path d=\"M" << x0 << ' ' << y1 << " L" << x0 << ' ' << y0 << " L" << x1 << ' ' << y0
     << "\" stroke=\"black\" fill=\"none\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = f.x_lo + (f.x_hi - f.x_lo) * i / 4.0;
    const double yv = f.y_lo + (f.y_hi - f.y_lo) * i / 4.0;
    os << "<text x=\"" << f.px(xv) << "\" y=\"" << y0 + 16
       << "\" text-anchor=\"middle\">" << tick(xv) << "</text>\n";
    os << "<text x=\"" << x0 - 6 << "\" y=\"" << f.py(yv) + 4
       << "\" text-anchor=\"end\">" << tick(yv) << "</text>\n";
  }
  os << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 12
     << "\" text-anchor=\"middle\">" << xml_escape(labels.x_label) << "</text>\n";
  os << "<text x=\"16\" y=\"" << (y0 + y1) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << (y0 + y1) / 2 << ")\">" << xml_escape(labels.y_label) << "</text>\n";
}

void legend(std::ostringstream& os, const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    const double y = kTop + 4 + 16.0 * static_cast<double>(i);
    os << "<rect x=\"" << kWidth - kRight - 150 << "\" y=\"" << y << "\" width=\"10\" height=\"10\" fill=\""
       << kPalette[i % kPalette.size()] << "\"/>\n";
    os << "<text x=\"" << kWidth - kRight - 135 << "\" y=\"" << y + 9 << "\">"
       << xml_escape(names[i]) << "</text>\n";
  }
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  internal::require(!header_.empty(), "CSV table needs at least one column");
}

void CsvTable::add_row(std::vector<std::string> row) {
  internal::require(row.size() == header_.size(), "CSV row width differs from the header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += csv_escape(row[i]);
    }
    out += '\n';
  };
  emit(header_);
  for (const auto& row : rows_) emit(row);
  return out;
}

json to_json(const BoundResult& bound) {
  return {{"measure", measure_name(bound.measure)},
          {"value", bound.value},
          {"k_index", optional_json(bound.k_index)},
          {"epsilon", optional_json(bound.epsilon)},
          {"defaulted", bound.defaulted},
          {"nominal_confidence", bound.nominal_confidence}};
}

json to_json(const TestOutcome& outcome) {
  json j = {{"accepted", outcome.accepted},
            {"bound", outcome.bound ? to_json(*outcome.bound) : json(nullptr)},
            {"cutoff", outcome.cutoff},
            {"delta", outcome.guaranteed_false_accept_rate}};
  if (!outcome.reason.empty()) j["reason"] = outcome.reason;
  return j;
}

json to_json(const SelectionReport& report) {
  json bounds = json::array();
  for (const auto& b : report.per_policy_bounds) bounds.push_back(to_json(b));
  return {{"correction", correction_name(report.correction)},
          {"inflated_delta", report.inflated_delta},
          {"chosen_index", report.chosen_index},
          {"chosen_bound", report.chosen_bound},
          {"per_policy_bounds", bounds}};
}

json to_json(const SensitivityResult& result) {
  return {{"delta_true", result.delta_true},
          {"delta_sim", result.delta_sim},
          {"alpha", result.alpha},
          {"k_star", optional_json(result.k_star)},
          {"epsilon", optional_json(result.epsilon)},
          {"max_alpha", optional_json(result.max_alpha)},
          {"k_star_alpha", optional_json(result.k_star_alpha)}};
}

json error_json(const std::exception& error) {
  json detail = {{"code", "InternalError"}, {"message", error.what()}};
  if (const auto* e = dynamic_cast<const Error*>(&error)) {
    detail["code"] = error_code_name(e->code());
  }
  if (const auto* e = dynamic_cast<const InsufficientSamples*>(&error)) {
    detail["have"] = e->have();
    detail["required"] = e->required();
  }
  if (const auto* e = dynamic_cast<const AlphaTooLarge*>(&error)) {
    detail["alpha"] = e->alpha();
    detail["max_alpha"] = e->max_alpha();
  }
  if (const auto* e = dynamic_cast<const SelectionError*>(&error)) {
    detail["policy_index"] = e->policy_index();
    detail["cause"] = error_code_name(e->cause());
  }
  if (const auto* e = dynamic_cast<const ConfigError*>(&error)) {
    if (!e->field().empty()) detail["field"] = e->field();
    if (e->line() > 0) detail["line"] = e->line();
  }
  return {{"schema_version", kSchemaVersion}, {"error", detail}};
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

Histogram make_histogram(std::span<const double> values, int bins, double lo, double hi) {
  internal::require(bins >= 1, "histogram needs at least one bin");
  internal::require(std::isfinite(lo) && std::isfinite(hi) && lo <= hi,
                    "histogram range must be finite with lo <= hi");
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  Histogram h;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) h.edges[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / bins;
  h.edges.back() = hi;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : values) {
    auto b = static_cast<int>(std::floor((v - lo) / (hi - lo) * bins));
    b = std::clamp(b, 0, bins - 1);
    ++h.counts[static_cast<std::size_t>(b)];
  }
  return h;
}

std::string render_histogram_svg(const PlotLabels& labels,
                                 std::span<const HistogramSeries> series,
                                 std::span<const std::pair<std::string, double>> markers) {
  internal::require(!series.empty(), "nothing to plot");
  Frame f{series.front().histogram.edges.front(), series.front().histogram.edges.back(), 0.0,
          1.05};
  for (const auto& s : series) {
    f.x_lo = std::min(f.x_lo, s.histogram.edges.front());
    f.x_hi = std::max(f.x_hi, s.histogram.edges.back());
  }
  std::ostringstream os;
  open_svg(os, labels, f);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& h = series[i].histogram;
    names.push_back(series[i].name);
    const int peak = std::max(1, *std::max_element(h.counts.begin(), h.counts.end()));
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
      const double x0 = f.px(h.edges[b]);
      const double x1 = f.px(h.edges[b + 1]);
      const double y = f.py(static_cast<double>(h.counts[b]) / peak);
      os << "<rect x=\"" << x0 << "\" y=\"" << y << "\" width=\"" << std::max(0.0, x1 - x0)
         << "\" height=\"" << f.py(0.0) - y << "\" fill=\"" << kPalette[i % kPalette.size()]
         << "\" fill-opacity=\"0.45\"/>\n";
    }
  }
  for (std::size_t i = 0; i < markers.size(); ++i) {
    const double x = f.px(std::clamp(markers[i].second, f.x_lo, f.x_hi));
    os << "<line x1=\"" << x << "\" y1=\"" << f.py(0.0) << "\" x2=\"" << x << "\" y2=\""
       << f.py(1.05) << "\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n";
    os << "<text x=\"" << x + 4 << "\" y=\"" << f.py(1.0) + 14.0 * static_cast<double>(i)
       << "\">" << xml_escape(markers[i].first) << "</text>\n";
  }
  legend(os, names);
  os << "</svg>\n";
  return os.str();
}

std::string render_lines_svg(const PlotLabels& labels, std::span<const LineSeries> series,
                             std::optional<double> y_reference) {
  internal::require(!series.empty(), "nothing to plot");
  Frame f{INFINITY, -INFINITY, 0.0, 1.0};
  for (const auto& s : series) {
    internal::require(s.x.size() == s.y.size(), "line series needs equal-length x and y");
    for (double x : s.x) {
      f.x_lo = std::min(f.x_lo, x);
      f.x_hi = std::max(f.x_hi, x);
    }
    for (double y : s.y) {
      if (std::isfinite(y)) {
        f.y_lo = std::min(f.y_lo, y);
        f.y_hi = std::max(f.y_hi, y);
      }
    }
  }
  if (!(f.x_lo < f.x_hi)) {
    f.x_lo -= 0.5;
    f.x_hi += 0.5;
  }
  std::ostringstream os;
  open_svg(os, labels, f);
  if (y_reference) {
    os << "<line x1=\"" << f.px(f.x_lo) << "\" y1=\"" << f.py(*y_reference) << "\" x2=\""
       << f.px(f.x_hi) << "\" y2=\"" << f.py(*y_reference)
       << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < series.size(); ++i) {
    names.push_back(series[i].name);
    std::ostringstream path;
    bool pen_down = false;
    for (std::size_t k = 0; k < series[i].x.size(); ++k) {
      if (!std::isfinite(series[i].y[k])) {
        pen_down = false;
        continue;
      }
      path << (pen_down ? " L" : " M") << f.px(series[i].x[k]) << ' ' << f.py(series[i].y[k]);
      pen_down = true;
    }
    os << "<path d=\"" << path.str() << "\" stroke=\"" << kPalette[i % kPalette.size()]
       << "\" stroke-width=\"2\" fill=\"none\"/>\n";
  }
  legend(os, names);
  os << "</svg>\n";
  return os.str();
}

}  // namespace policycert
