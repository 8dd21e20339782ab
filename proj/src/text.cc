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
#include "mqm/text.h"

#include <cctype>

namespace mqm::text {

std::string_view Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

bool IsValidUtf8(std::string_view s) {
  std::size_t i = 0;
  const auto* p = reinterpret_cast<const unsigned char*>(s.data());
  const std::size_t n = s.size();
  while (i < n) {
    const unsigned char c = p[i];
    if (c < 0x80) {
      ++i;
      continue;
    }
    int len = 0;
    char32_t cp = 0;
    if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (int k = 1; k < len; ++k) {
      if ((p[i + k] & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (p[i + k] & 0x3F);
    }
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
        (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += len;
  }
  return true;
}

std::size_t CodePointCount(std::string_view s) {
  std::size_t count = 0;
  for (char c : s) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++count;
  }
  return count;
}

std::size_t ByteOffsetOf(std::string_view s, std::size_t cp) {
  std::size_t seen = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) {
      if (seen == cp) return i;
      ++seen;
    }
  }
  return s.size();
}

std::string EscapeField(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\t':
        out += "\\t";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\\':
        out += "\\\\";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

std::string UnescapeField(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) {
      const char n = s[i + 1];
      if (n == 't' || n == 'n' || n == '\\') {
        out.push_back(n == 't' ? '\t' : n == 'n' ? '\n' : '\\');
        ++i;
        continue;
      }
    }
    out.push_back(s[i]);
  }
  return out;
}

StrippedText StripSpanMarkers(std::string_view marked, bool merge_multiple,
                              MarkupError* error) {
  StrippedText out;
  *error = MarkupError::kNone;
  out.text.reserve(marked.size());
  bool open = false;
  std::size_t cp = 0;
  std::optional<std::size_t> first_open;
  std::size_t last_close = 0;
  std::size_t i = 0;
  while (i < marked.size()) {
    if (marked.compare(i, kSpanOpen.size(), kSpanOpen) == 0) {
      if (open) {
        *error = MarkupError::kUnbalanced;
        return out;
      }
      open = true;
      if (!first_open) first_open = cp;
      i += kSpanOpen.size();
      continue;
    }
    if (marked.compare(i, kSpanClose.size(), kSpanClose) == 0) {
      if (!open) {
        *error = MarkupError::kUnbalanced;
        return out;
      }
      open = false;
      last_close = cp;
      ++out.pairs;
      i += kSpanClose.size();
      continue;
    }
    const char c = marked[i];
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++cp;
    out.text.push_back(c);
    ++i;
  }
  if (open) {
    *error = MarkupError::kUnbalanced;
    return out;
  }
  if (out.pairs > 1 && !merge_multiple) {
    *error = MarkupError::kMultiple;
    return out;
  }
  if (out.pairs > 0) out.span = MarkedSpan{*first_open, last_close};
  return out;
}

std::string InsertSpanMarkers(std::string_view text, const MarkedSpan& span) {
  const std::size_t b = ByteOffsetOf(text, span.start);
  const std::size_t e = ByteOffsetOf(text, span.end);
  std::string out;
  out.reserve(text.size() + kSpanOpen.size() + kSpanClose.size());
  out.append(text.substr(0, b));
  out.append(kSpanOpen);
  out.append(text.substr(b, e - b));
  out.append(kSpanClose);
  out.append(text.substr(e));
  return out;
}

}  // namespace mqm::text
