// Copyright 2026 The QLDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QLDP_ERRORS_HPP_
#define QLDP_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace qldp {

enum class ErrorCode {
  kInvalidInput,
  kDegenerateObservable,
  kNoninvertibleMechanism,
  // A formula was called outside the parameter regime where it is stated.
  kOutOfRegime,
  // The requested guarantee cannot be met by any finite sample size.
  kInfeasible,
  kParse,
  kIo,
};

std::string_view error_code_name(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace qldp

#endif  // QLDP_ERRORS_HPP_
