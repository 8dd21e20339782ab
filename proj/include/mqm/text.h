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
#ifndef MQM_TEXT_H_
#define MQM_TEXT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// String helpers shared by the importers and the campaign service. Offsets
// exposed to callers are Unicode scalar-value indices, never bytes.
namespace mqm::text {

std::string_view Trim(std::string_view s);
std::string AsciiLower(std::string_view s);
std::vector<std::string_view> SplitTabs(std::string_view line);

// True when `s` is well-formed UTF-8 (no overlongs, no surrogates).
bool IsValidUtf8(std::string_view s);
// Number of scalar values in well-formed UTF-8.
std::size_t CodePointCount(std::string_view s);
// Byte offset of scalar index `cp` (cp == count yields s.size()).
std::size_t ByteOffsetOf(std::string_view s, std::size_t cp);

// Field escaping for the TSV formats: tab, newline and backslash are written
// as \t, \n and \\. Unescape leaves unknown escapes untouched.
std::string EscapeField(std::string_view s);
std::string UnescapeField(std::string_view s);

inline constexpr std::string_view kSpanOpen = "<v>";
inline constexpr std::string_view kSpanClose = "</v>";

struct MarkedSpan {
  std::size_t start = 0;  // scalar offsets into the stripped text
  std::size_t end = 0;
};

struct StrippedText {
  std::string text;
  std::optional<MarkedSpan> span;
  int pairs = 0;  // number of <v>...</v> pairs found
};

enum class MarkupError { kNone, kUnbalanced, kMultiple };

// Removes <v>/</v> markers. With `merge_multiple`, several well-formed pairs
// collapse to one span from the first opening to the last closing marker;
// otherwise more than one pair is reported as kMultiple.
StrippedText StripSpanMarkers(std::string_view marked, bool merge_multiple,
                              MarkupError* error);

// Inverse of StripSpanMarkers for a single span.
std::string InsertSpanMarkers(std::string_view text, const MarkedSpan& span);

}  // namespace mqm::text

#endif  // MQM_TEXT_H_
