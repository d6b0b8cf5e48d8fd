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

#ifndef NESTLAB_ERROR_HPP
#define NESTLAB_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nestlab {

enum class ErrorCode {
    kInvalidParameter,
    kParse,
    kInternalConsistency,
    kUnsupportedBoundary,
    kUnsupported,
    kWeightDomain,
    kDisconnected,
    kParity,
    kSize,
    kDivergence,
};

const char *error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message);
    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

class ParseError : public Error {
   public:
    ParseError(std::size_t line, const std::string &message);
    /// 1-based line number of the offending input line.
    std::size_t line() const noexcept {
        return line_;
    }

   private:
    std::size_t line_;
};

}  // namespace nestlab

#endif  // NESTLAB_ERROR_HPP
