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
#include "mqm/error.h"

namespace mqm {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownCategory: return "UnknownCategory";
    case ErrorCode::kUnknownSeverity: return "UnknownSeverity";
    case ErrorCode::kInvalidScheme: return "InvalidScheme";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kSpanMarkupError: return "SpanMarkupError";
    case ErrorCode::kTextMismatch: return "TextMismatch";
    case ErrorCode::kLimitExceeded: return "LimitExceeded";
    case ErrorCode::kRangeError: return "RangeError";
    case ErrorCode::kDuplicateKey: return "DuplicateKey";
    case ErrorCode::kNoRatings: return "NoRatings";
    case ErrorCode::kEmptyGroup: return "EmptyGroup";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kNoUsablePairs: return "NoUsablePairs";
    case ErrorCode::kMissingScores: return "MissingScores";
    case ErrorCode::kIncompleteGrid: return "IncompleteGrid";
    case ErrorCode::kSingularModel: return "SingularModel";
    case ErrorCode::kNotReachable: return "NotReachable";
    case ErrorCode::kPoolTooSmall: return "PoolTooSmall";
    case ErrorCode::kNotAssigned: return "NotAssigned";
    case ErrorCode::kValidationFailed: return "ValidationFailed";
    case ErrorCode::kProjectClosed: return "ProjectClosed";
    case ErrorCode::kEmptyProject: return "EmptyProject";
    case ErrorCode::kLogCorrupt: return "LogCorrupt";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace mqm
