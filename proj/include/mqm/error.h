/*
 * Copyright 2026 The mqmkit Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef MQM_ERROR_H_
#define MQM_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace mqm {

// Failure kinds surfaced by the library. Each maps to one named error of an
// operation contract; the CLI turns them into exit status 1.
enum class ErrorCode {
  kUnknownCategory,
  kUnknownSeverity,
  kInvalidScheme,
  kMalformedRow,
  kSpanMarkupError,
  kTextMismatch,
  kLimitExceeded,
  kRangeError,
  kDuplicateKey,
  kNoRatings,
  kEmptyGroup,
  kDegenerateInput,
  kNoUsablePairs,
  kMissingScores,
  kIncompleteGrid,
  kSingularModel,
  kNotReachable,
  kPoolTooSmall,
  kNotAssigned,
  kValidationFailed,
  kProjectClosed,
  kEmptyProject,
  kLogCorrupt,
  kInvalidArgument,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const { return code_; }
  // Message without the code prefix.
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace mqm

#endif  // MQM_ERROR_H_
