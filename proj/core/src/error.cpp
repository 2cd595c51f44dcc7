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

#include "spinebox/error.hpp"

namespace spinebox {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidBox: return "InvalidBox";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDegenerateAngle: return "DegenerateAngle";
    case ErrorCode::kEmptyGroup: return "EmptyGroup";
    case ErrorCode::kEmptyPatch: return "EmptyPatch";
    case ErrorCode::kEmptyTruth: return "EmptyTruth";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kDecodeError: return "DecodeError";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kLayoutOverflow: return "LayoutOverflow";
  }
  return "Unknown";
}

}  // namespace spinebox
