// Copyright 2026 The RRDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RRDP_ERROR_H_
#define RRDP_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace rrdp {

enum class ErrorCode {
  kInvalidParameter,
  kInfiniteBudget,
  kNoSolution,
  kParseError,
  kInconsistentHeader,
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParameter:
      return "invalid_parameter";
    case ErrorCode::kInfiniteBudget:
      return "infinite_budget";
    case ErrorCode::kNoSolution:
      return "no_solution";
    case ErrorCode::kParseError:
      return "parse_error";
    case ErrorCode::kInconsistentHeader:
      return "inconsistent_header";
  }
  return "unknown";
}

// Every failure raised by the library. `line()` is set only for parse errors
// (1-based; 0 when not applicable).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, int line = 0)
      : std::runtime_error(message), code_(code), line_(line) {}

  ErrorCode code() const { return code_; }
  int line() const { return line_; }

 private:
  ErrorCode code_;
  int line_;
};

[[noreturn]] inline void ThrowInvalid(const std::string& message) {
  throw Error(ErrorCode::kInvalidParameter, message);
}

}  // namespace rrdp

#endif  // RRDP_ERROR_H_
