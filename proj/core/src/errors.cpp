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

#include "netclear/errors.hpp"

namespace netclear {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegativeEntry: return "NegativeEntry";
    case ErrorCode::kNonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kNotNested: return "NotNested";
    case ErrorCode::kTooSmall: return "TooSmall";
    case ErrorCode::kTooManyAssets: return "TooManyAssets";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kSpaceTooLarge: return "SpaceTooLarge";
    case ErrorCode::kCapNotBestResponse: return "CapNotBestResponse";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kPreconditionFailed: return "PreconditionFailed";
    case ErrorCode::kCapInfeasible: return "CapInfeasible";
    case ErrorCode::kSingularOwnership: return "SingularOwnership";
    case ErrorCode::kInfeasiblePortfolio: return "InfeasiblePortfolio";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code),
      message_(message) {}

}  // namespace netclear
