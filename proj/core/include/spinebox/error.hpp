// Copyright 2026 The Spinebox Authors. All Rights Reserved.
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spinebox {

enum class ErrorCode {
  kInvalidBox,
  kInvalidArgument,
  kDegenerateAngle,
  kEmptyGroup,
  kEmptyPatch,
  kEmptyTruth,
  kIoError,
  kDecodeError,
  kParseError,
  kConfigError,
  kLayoutOverflow,
};

const char* error_code_name(ErrorCode code);

// All library failures are reported through this type; callers switch on
// code() rather than on the dynamic type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by text loaders; line() is 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : Error(ErrorCode::kParseError,
              path + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Raised when a configuration field is unknown or out of range. field() is
// the exact config key so the CLI can name it.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : Error(ErrorCode::kConfigError, field + ": " + what), field_(field) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace spinebox
