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

// JSON config files. Comments (// and /* */) are allowed. Syntax errors
// and field errors both surface as ConfigError; the former carry a line
// number, the latter a dotted field path such as "environment.A".

#ifndef POLICYCERT_CONFIG_H_
#define POLICYCERT_CONFIG_H_

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace policycert {

inline constexpr int kSchemaVersion = 1;

nlohmann::json parse_config_text(std::string_view text);
// Throws Error(kIo) when the file cannot be read.
nlohmann::json load_config_file(const std::string& path);

// Typed, path-aware access to one JSON object.
class ConfigReader {
 public:
  ConfigReader(const nlohmann::json& node, std::string path);

  const nlohmann::json& node() const { return *node_; }
  const std::string& path() const { return path_; }
  std::string field(std::string_view key) const;

  bool has(std::string_view key) const;

  double number(std::string_view key) const;
  double number(std::string_view key, double fallback) const;
  int integer(std::string_view key) const;
  int integer(std::string_view key, int fallback) const;
  std::uint64_t seed(std::string_view key, std::uint64_t fallback) const;
  bool boolean(std::string_view key, bool fallback) const;
  std::string string(std::string_view key) const;
  std::string string(std::string_view key, std::string fallback) const;
  // A number is accepted as a one-element list.
  std::vector<double> numbers(std::string_view key) const;
  std::vector<double> numbers(std::string_view key,
                              std::vector<double> fallback) const;
  std::vector<std::vector<double>> matrix(std::string_view key) const;

  ConfigReader child(std::string_view key) const;
  std::optional<ConfigReader> optional_child(std::string_view key) const;

  // Throws ConfigError naming the first key not in `allowed`.
  void reject_unknown(std::initializer_list<std::string_view> allowed) const;

  [[noreturn]] void fail(std::string_view key, const std::string& message) const;

 private:
  const nlohmann::json& at(std::string_view key) const;

  const nlohmann::json* node_;
  std::string path_;
};

}  // namespace policycert

#endif  // POLICYCERT_CONFIG_H_
