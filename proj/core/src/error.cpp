// Copyright 2026 The nestlab Authors
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

#include "nestlab/error.hpp"

namespace nestlab {

const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::kInvalidParameter:
            return "invalid-parameter";
        case ErrorCode::kParse:
            return "parse-error";
        case ErrorCode::kInternalConsistency:
            return "internal-consistency";
        case ErrorCode::kUnsupportedBoundary:
            return "unsupported-boundary";
        case ErrorCode::kUnsupported:
            return "unsupported";
        case ErrorCode::kWeightDomain:
            return "weight-domain";
        case ErrorCode::kDisconnected:
            return "disconnected";
        case ErrorCode::kParity:
            return "parity";
        case ErrorCode::kSize:
            return "size";
        case ErrorCode::kDivergence:
            return "divergence";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
}

ParseError::ParseError(std::size_t line, const std::string &message)
    : Error(ErrorCode::kParse, "line " + std::to_string(line) + ": " + message), line_(line) {
}

}  // namespace nestlab
