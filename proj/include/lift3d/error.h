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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lift3d {

enum class ErrorCode {
  kParse,               // malformed JSON or binary container
  kFormat,              // well-formed container with inconsistent contents
  kMalformedRle,
  kContractViolation,   // caller broke a documented precondition
  kInsufficientValidPoints,
  kDegenerateRelativeDepth,
  kGravityUnavailable,
  kNothingVisible,
  kDuplicateId,
  kIo,
  kConfig,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse error carrying the byte offset reported by the underlying parser.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t byte_offset)
      : Error(ErrorCode::kParse,
              message + " (at byte " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}

  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

#define LIFT3D_CHECK(cond, msg)                                              \
  do {                                                                       \
    if (!(cond)) {                                                           \
      throw ::lift3d::Error(::lift3d::ErrorCode::kContractViolation, (msg)); \
    }                                                                        \
  } while (false)

}  // namespace lift3d
