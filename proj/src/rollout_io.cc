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

#include "policycert/rollout_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "policycert/error.h"

namespace policycert {
namespace {

using nlohmann::json;

[[noreturn]] void fail_line(int line, const std::string& message) {
  throw Error(ErrorCode::kIo, "line " + std::to_string(line) + ": " + message);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double finite_number(const json& j, const char* key, int line) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number()) {
    fail_line(line, std::string("field '") + key + "' must be a number");
  }
  const double x = it->get<double>();
  if (!std::isfinite(x)) fail_line(line, std::string("field '") + key + "' is not finite");
  return x;
}

std::vector<Vector> vectors(const json& j, const char* key, int line) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  if (!it->is_array()) fail_line(line, std::string("field '") + key + "' must be a list");
  std::vector<Vector> out;
  for (const auto& row : *it) {
    if (!row.is_array()) {
      fail_line(line, std::string("field '") + key + "' must hold lists of numbers");
    }
    Vector v;
    for (const auto& x : row) {
      if (!x.is_number()) fail_line(line, std::string("field '") + key + "' holds a non-number");
      v.push_back(x.get<double>());
    }
    out.push_back(std::move(v));
  }
  return out;
}

RolloutRecord record_from_json(const json& j, int line) {
  if (!j.is_object()) fail_line(line, "expected a JSON object");
  RolloutRecord r;
  const auto seed = j.find("seed");
  if (seed == j.end() || !seed->is_number_integer() ||
      (seed->is_number_integer() && !seed->is_number_unsigned() &&
       seed->get<std::int64_t>() < 0)) {
    fail_line(line, "field 'seed' must be a non-negative integer");
  }
  r.seed = seed->get<std::uint64_t>();
  r.total_cost = finite_number(j, "total_cost", line);
  r.constraint_value = finite_number(j, "constraint_value", line);
  const auto clipped = j.find("clipped");
  if (clipped != j.end()) {
    if (!clipped->is_boolean()) fail_line(line, "field 'clipped' must be true or false");
    r.clipped = clipped->get<bool>();
  }
  r.states = vectors(j, "states", line);
  r.controls = vectors(j, "controls", line);
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

void write_rollouts(std::ostream& out, const std::vector<RolloutRecord>& records,
                    const PersistOptions& options) {
  for (const auto& r : records) {
    json j = {{"seed", r.seed},
              {"total_cost", r.total_cost},
              {"constraint_value", r.constraint_value},
              {"clipped", r.clipped}};
    if (options.include_trajectories) {
      j["states"] = r.states;
      j["controls"] = r.controls;
    }
    out << j.dump() << '\n';
  }
}

void persist_rollouts(const std::vector<RolloutRecord>& records, const std::string& path,
                      const PersistOptions& options) {
  std::ostringstream out;
  write_rollouts(out, records, options);
  write_text_file(path, out.str());
}

std::vector<RolloutRecord> read_rollouts(std::istream& in) {
  std::vector<RolloutRecord> records;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    const std::string_view body = trim(text);
    if (body.empty()) continue;
    json j;
    try {
      j = json::parse(body);
    } catch (const json::parse_error&) {
      fail_line(line, "not valid JSON");
    }
    records.push_back(record_from_json(j, line));
  }
  return records;
}

std::vector<RolloutRecord> load_rollouts(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_rollouts(in);
}

std::vector<double> load_samples(const std::string& path, RecordField field) {
  const std::string text = read_file(path);
  const std::string_view body = trim(text);
  std::vector<double> values;
  if (!body.empty() && body.front() == '[') {
    json j;
    try {
      j = json::parse(body);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kIo, "'" + path + "' is not a valid JSON array");
    }
    for (const auto& x : j) {
      if (!x.is_number()) throw Error(ErrorCode::kIo, "'" + path + "' holds a non-number");
      values.push_back(x.get<double>());
    }
    return values;
  }
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view s = trim(raw);
    if (s.empty() || s.front() == '#') continue;
    if (s.front() == '{') {
      json j;
      try {
        j = json::parse(s);
      } catch (const json::parse_error&) {
        fail_line(line, "not valid JSON");
      }
      const RolloutRecord r = record_from_json(j, line);
      values.push_back(field == RecordField::kCost ? r.total_cost : r.constraint_value);
      continue;
    }
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(x)) {
      fail_line(line, "expected a finite number");
    }
    values.push_back(x);
  }
  return values;
}

json plan_to_json(const Policy& policy) { return policy.controls(); }

Policy plan_from_json(const json& plan) {
  if (!plan.is_array() || plan.empty()) {
    throw Error(ErrorCode::kIo, "plan must be a non-empty list of control vectors");
  }
  std::vector<Vector> controls;
  for (const auto& step : plan) {
    Vector u;
    if (step.is_number()) {
      u.push_back(step.get<double>());
    } else if (step.is_array()) {
      for (const auto& x : step) {
        if (!x.is_number()) throw Error(ErrorCode::kIo, "plan holds a non-number");
        u.push_back(x.get<double>());
      }
    } else {
      throw Error(ErrorCode::kIo, "plan steps must be numbers or lists of numbers");
    }
    controls.push_back(std::move(u));
  }
  return Policy::open_loop(std::move(controls));
}

Policy load_plan(const std::string& path) {
  const std::string text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error&) {
    throw Error(ErrorCode::kIo, "plan file '" + path + "' is not valid JSON");
  }
  if (j.is_object() && j.contains("plan")) return plan_from_json(j["plan"]);
  return plan_from_json(j);
}

std::vector<Policy> load_plans(const std::string& path) {
  const std::string text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error&) {
    throw Error(ErrorCode::kIo, "plan file '" + path + "' is not valid JSON");
  }
  if (!(j.is_object() && j.contains("plans"))) return {load_plan(path)};
  if (!j["plans"].is_array() || j["plans"].empty()) {
    throw Error(ErrorCode::kIo, "plan file '" + path + "': 'plans' must be a non-empty list");
  }
  std::vector<Policy> plans;
  for (const auto& plan : j["plans"]) plans.push_back(plan_from_json(plan));
  return plans;
}

json plans_to_json(const std::vector<Policy>& policies) {
  json plans = json::array();
  for (const Policy& p : policies) plans.push_back(plan_to_json(p));
  return {{"schema_version", 1}, {"plans", plans}};
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write to '" + path + "' failed");
}

}  // namespace policycert
