// Copyright 2026 The netclear Authors
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

#ifndef NETCLEAR_ERRORS_HPP_
#define NETCLEAR_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace netclear {

enum class ErrorCode {
  kNegativeEntry,
  kNonzeroDiagonal,
  kDimensionMismatch,
  kInvalidSpec,
  kNotNested,
  kTooSmall,
  kTooManyAssets,
  kNoConvergence,
  kSpaceTooLarge,
  kCapNotBestResponse,
  kInvalidParams,
  kPreconditionFailed,
  kCapInfeasible,
  kSingularOwnership,
  kInfeasiblePortfolio,
  kParseError,
};

std::string_view error_code_name(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map them to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  // The message without the code prefix that what() carries.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace netclear

#endif  // NETCLEAR_ERRORS_HPP_
