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

#include "policycert/config.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "policycert/error.h"

namespace policycert {

using nlohmann::json;

json parse_config_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end(), nullptr, /*allow_exceptions=*/true,
                       /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(
                             std::count(text.begin(), text.begin() + upto, '\n'));
    std::string what = e.what();
    // Keep nlohmann's own explanation, drop its "[json.exception...]" prefix.
    if (const auto pos = what.find("syntax error"); pos != std::string::npos) {
      what = what.substr(pos);
    }
    throw ConfigError("", line, what);
  }
}

json load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

ConfigReader::ConfigReader(const json& node, std::string path)
    : node_(&node), path_(std::move(path)) {
  if (!node.is_object()) throw ConfigError(path_, 0, "expected an object");
}

std::string ConfigReader::field(std::string_view key) const {
  return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
}

void ConfigReader::fail(std::string_view key, const std::string& message) const {
  throw ConfigError(field(key), 0, message);
}

bool ConfigReader::has(std::string_view key) const {
  const auto it = node_->find(key);
  return it != node_->end() && !it->is_null();
}

const json& ConfigReader::at(std::string_view key) const {
  const auto it = node_->find(key);
  if (it == node_->end() || it->is_null()) fail(key, "required field is missing");
  return *it;
}

double ConfigReader::number(std::string_view key) const {
  const json& v = at(key);
  if (!v.is_number()) fail(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(key, "expected a finite number");
  return x;
}

double ConfigReader::number(std::string_view key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

int ConfigReader::integer(std::string_view key) const {
  const json& v = at(key);
  if (!v.is_number_integer()) fail(key, "expected an integer");
  const auto x = v.get<std::int64_t>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    fail(key, "integer out of range");
  }
  return static_cast<int>(x);
}

int ConfigReader::integer(std::string_view key, int fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::uint64_t ConfigReader::seed(std::string_view key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const json& v = at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  fail(key, "expected a non-negative integer seed");
}

bool ConfigReader::boolean(std::string_view key, bool fallback) const {
  if (!has(key)) return fallback;
  const json& v = at(key);
  if (!v.is_boolean()) fail(key, "expected true or false");
  return v.get<bool>();
}

std::string ConfigReader::string(std::string_view key) const {
  const json& v = at(key);
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

std::string ConfigReader::string(std::string_view key, std::string fallback) const {
  return has(key) ? string(key) : std::move(fallback);
}

std::vector<double> ConfigReader::numbers(std::string_view key) const {
  const json& v = at(key);
  if (v.is_number()) return {number(key)};
  if (!v.is_array()) fail(key, "expected a list of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number() || !std::isfinite(v[i].get<double>())) {
      fail(std::string(key) + "[" + std::to_string(i) + "]", "expected a finite number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

std::vector<double> ConfigReader::numbers(std::string_view key,
                                          std::vector<double> fallback) const {
  return has(key) ? numbers(key) : std::move(fallback);
}

std::vector<std::vector<double>> ConfigReader::matrix(std::string_view key) const {
  const json& v = at(key);
  if (!v.is_array() || v.empty()) fail(key, "expected a non-empty list of rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string row_key = std::string(key) + "[" + std::to_string(i) + "]";
    if (!v[i].is_array()) fail(row_key, "expected a row of numbers");
    std::vector<double> row;
    for (const auto& x : v[i]) {
      if (!x.is_number() || !std::isfinite(x.get<double>())) {
        fail(row_key, "expected finite numbers");
      }
      row.push_back(x.get<double>());
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail(row_key, "rows must have equal length");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ConfigReader ConfigReader::child(std::string_view key) const {
  const json& v = at(key);
  if (!v.is_object()) fail(key, "expected an object");
  return ConfigReader(v, field(key));
}

std::optional<ConfigReader> ConfigReader::optional_child(std::string_view key) const {
  if (!has(key)) return std::nullopt;
  return child(key);
}

void ConfigReader::reject_unknown(std::initializer_list<std::string_view> allowed) const {
  for (const auto& [key, value] : node_->items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(key, "unknown field");
    }
  }
}

}  // namespace policycert
