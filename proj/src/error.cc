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

#include "policycert/error.h"

#include <sstream>

namespace policycert {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kInsufficientSamples:
      return "InsufficientSamples";
    case ErrorCode::kMissingUpperBound:
      return "MissingUpperBound";
    case ErrorCode::kAlphaTooLarge:
      return "AlphaTooLarge";
    case ErrorCode::kInvalidQuantile:
      return "InvalidQuantile";
    case ErrorCode::kUnknownEnvironment:
      return "UnknownEnvironment";
    case ErrorCode::kNonFinite:
      return "NonFinite";
    case ErrorCode::kSelection:
      return "SelectionError";
    case ErrorCode::kConfig:
      return "ConfigError";
    case ErrorCode::kIo:
      return "IoError";
  }
  return "Unknown";
}

namespace {

std::string insufficient_message(int have, int required,
                                 const std::string& what) {
  std::ostringstream os;
  os << what << ": need at least " << required << " samples, have " << have;
  return os.str();
}

std::string alpha_message(double alpha, double max_alpha) {
  std::ostringstream os;
  os << "shift budget alpha=" << alpha << " exceeds the admissible maximum "
     << max_alpha;
  return os.str();
}

std::string config_message(const std::string& field, int line,
                           const std::string& message) {
  std::ostringstream os;
  if (line > 0) os << "line " << line << ": ";
  if (!field.empty()) os << "field '" << field << "': ";
  os << message;
  return os.str();
}

}  // namespace

InsufficientSamples::InsufficientSamples(int have, int required,
                                         const std::string& what)
    : Error(ErrorCode::kInsufficientSamples,
            insufficient_message(have, required, what)),
      have_(have),
      required_(required) {}

AlphaTooLarge::AlphaTooLarge(double alpha, double max_alpha)
    : Error(ErrorCode::kAlphaTooLarge, alpha_message(alpha, max_alpha)),
      alpha_(alpha),
      max_alpha_(max_alpha) {}

SelectionError::SelectionError(int policy_index, ErrorCode cause,
                               const std::string& detail)
    : Error(ErrorCode::kSelection, "policy " + std::to_string(policy_index) +
                                       ": " + detail),
      policy_index_(policy_index),
      cause_(cause) {}

ConfigError::ConfigError(std::string field, int line,
                         const std::string& message)
    : Error(ErrorCode::kConfig, config_message(field, line, message)),
      field_(std::move(field)),
      line_(line) {}

namespace internal {

void throw_invalid(const std::string& message) {
  throw Error(ErrorCode::kInvalidArgument, message);
}

}  // namespace internal
}  // namespace policycert
