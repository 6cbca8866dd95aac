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

// JSONL persistence for rollout records and JSON persistence for plans.
//
// One record per line:
//   {"seed": 7, "total_cost": 1.25, "constraint_value": 0, "clipped": false,
//    "states": [[...], ...], "controls": [[...], ...]}
// states and controls are optional. Doubles are written in shortest
// round-trip form, so loading restores every mandatory field bit-exactly.

#ifndef POLICYCERT_ROLLOUT_IO_H_
#define POLICYCERT_ROLLOUT_IO_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "policycert/environment.h"

namespace policycert {

struct PersistOptions {
  bool include_trajectories = false;
};

void write_rollouts(std::ostream& out, const std::vector<RolloutRecord>& records,
                    const PersistOptions& options = {});
// Throws Error(kIo) when the file cannot be written.
void persist_rollouts(const std::vector<RolloutRecord>& records, const std::string& path,
                      const PersistOptions& options = {});

// Blank lines are skipped. Malformed lines throw Error(kIo) whose message
// starts with "line N:".
std::vector<RolloutRecord> read_rollouts(std::istream& in);
std::vector<RolloutRecord> load_rollouts(const std::string& path);

// Reads plain numeric samples: a JSONL rollout file, a JSON array of
// numbers, or one number per line. `field` picks total_cost or
// constraint_value from rollout records.
std::vector<double> load_samples(const std::string& path, RecordField field);

// Plans are JSON arrays of per-step control vectors.
nlohmann::json plan_to_json(const Policy& policy);
Policy plan_from_json(const nlohmann::json& plan);
Policy load_plan(const std::string& path);
// A plan file, or a plan-set file {"plans": [plan, ...]}.
std::vector<Policy> load_plans(const std::string& path);
nlohmann::json plans_to_json(const std::vector<Policy>& policies);

// Writes `text` to `path`, replacing it. Throws Error(kIo) on failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace policycert

#endif  // POLICYCERT_ROLLOUT_IO_H_
