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

#ifndef POLICYCERT_ERROR_H_
#define POLICYCERT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace policycert {

enum class ErrorCode {
  kInvalidArgument,
  kInsufficientSamples,
  kMissingUpperBound,
  kAlphaTooLarge,
  kInvalidQuantile,
  kUnknownEnvironment,
  kNonFinite,
  kSelection,
  kConfig,
  kIo,
};

// Stable machine-readable name, e.g. "InsufficientSamples".
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised when a bound has no feasible order statistic at the given n.
class InsufficientSamples : public Error {
 public:
  InsufficientSamples(int have, int required, const std::string& what);

  int have() const { return have_; }
  int required() const { return required_; }

 private:
  int have_;
  int required_;
};

class AlphaTooLarge : public Error {
 public:
  AlphaTooLarge(double alpha, double max_alpha);

  double alpha() const { return alpha_; }
  double max_alpha() const { return max_alpha_; }

 private:
  double alpha_;
  double max_alpha_;
};

// Policy selection aborted because one candidate's bound was unusable.
class SelectionError : public Error {
 public:
  SelectionError(int policy_index, ErrorCode cause, const std::string& detail);

  int policy_index() const { return policy_index_; }
  ErrorCode cause() const { return cause_; }

 private:
  int policy_index_;
  ErrorCode cause_;
};

// Config file problems carry a 1-based line (0 when unknown) and the field path.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, int line, const std::string& message);

  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

namespace internal {

[[noreturn]] void throw_invalid(const std::string& message);

inline void require(bool condition, const char* message) {
  if (!condition) throw_invalid(message);
}

}  // namespace internal
}  // namespace policycert

#endif  // POLICYCERT_ERROR_H_
