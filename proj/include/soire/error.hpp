// Copyright 2026 The SOIRE Learner Authors. All rights reserved.
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

#ifndef SOIRE_ERROR_HPP_
#define SOIRE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace soire {

enum class ErrorCode {
  kInvalidPrefix,
  kInvalidInfix,
  kDuplicateSymbol,
  kUnknownCharacter,
  kInvalidAlphabet,
  kIndexOutOfRange,
  kInstanceTooLarge,
  kNotFaithful,
  kSizeExceedsBound,
  kStringTooLong,
  kEmptyBeam,
  kUnsatisfiable,
  kExhaustedRetries,
  kMalformedFile,
  kVersionMismatch,
  kConfig,
};

std::string_view to_string(ErrorCode code);

// Every failure the library reports is an Error carrying a code, so callers
// can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace soire

#endif  // SOIRE_ERROR_HPP_
