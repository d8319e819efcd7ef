// Copyright (c) 2026, The lift3d Authors. All rights reserved.
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

#include "lift3d/error.h"

namespace lift3d {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kFormat: return "FormatError";
    case ErrorCode::kMalformedRle: return "MalformedRle";
    case ErrorCode::kContractViolation: return "ContractViolation";
    case ErrorCode::kInsufficientValidPoints: return "InsufficientValidPoints";
    case ErrorCode::kDegenerateRelativeDepth: return "DegenerateRelativeDepth";
    case ErrorCode::kGravityUnavailable: return "GravityUnavailable";
    case ErrorCode::kNothingVisible: return "NothingVisible";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kConfig: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace lift3d
