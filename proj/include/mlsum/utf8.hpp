// Copyright 2026 The mlsum Authors
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

// Minimal UTF-8 helpers: validation, code point iteration and a lowercase
// mapping that covers ASCII, Latin-1 and Latin Extended-A (enough for
// English and Portuguese text).

#ifndef MLSUM_UTF8_HPP_
#define MLSUM_UTF8_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mlsum::utf8 {

/// Decodes one code point starting at `pos`; advances `pos`. Returns nullopt
/// on malformed input (overlong forms and surrogates included).
inline std::optional<char32_t> decode(std::string_view s, std::size_t& pos) {
  const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
  if (pos >= s.size()) return std::nullopt;
  const unsigned char b0 = byte(pos);
  std::size_t len = 0;
  char32_t cp = 0;
  if (b0 < 0x80) {
    ++pos;
    return b0;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return std::nullopt;
  }
  if (pos + len > s.size()) return std::nullopt;
  for (std::size_t k = 1; k < len; ++k) {
    const unsigned char b = byte(pos + k);
    if ((b & 0xC0) != 0x80) return std::nullopt;
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    return std::nullopt;
  }
  pos += len;
  return cp;
}

inline bool is_valid(std::string_view s) {
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (!decode(s, pos)) return false;
  }
  return true;
}

inline void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

/// Decodes a valid UTF-8 string; invalid bytes decode as U+FFFD.
inline std::u32string to_u32(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (auto cp = decode(s, pos)) {
      out.push_back(*cp);
    } else {
      out.push_back(char32_t{0xFFFD});
      ++pos;
    }
  }
  return out;
}

inline std::string from_u32(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t cp : s) append(out, cp);
  return out;
}

inline char32_t to_lower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 32;
  // Latin-1: À..Þ except ×
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  // Latin Extended-A pairs (even upper, odd lower), with the İ/ı and Ÿ gaps.
  if (cp >= 0x100 && cp <= 0x137 && cp != 0x130 && (cp % 2) == 0) return cp + 1;
  if (cp >= 0x139 && cp <= 0x148 && (cp % 2) == 1) return cp + 1;
  if (cp >= 0x14A && cp <= 0x177 && (cp % 2) == 0) return cp + 1;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x179 && cp <= 0x17E && (cp % 2) == 1) return cp + 1;
  return cp;
}

inline bool is_upper(char32_t cp) { return to_lower(cp) != cp; }

/// Letters: ASCII letters plus the alphabetic parts of Latin-1 Supplement,
/// Latin Extended-A/B and anything above U+0250 that is not punctuation-like.
inline bool is_letter(char32_t cp) {
  if ((cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z')) return true;
  if (cp == 0xAA || cp == 0xB5 || cp == 0xBA) return true;
  if (cp >= 0xC0 && cp <= 0x24F) return cp != 0xD7 && cp != 0xF7;
  if (cp >= 0x370 && cp <= 0x1FFF) return true;  // Greek, Cyrillic, ...
  if (cp >= 0x3040 && cp <= 0x9FFF) return true;  // CJK and kana
  return false;
}

inline bool is_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

inline bool is_alnum(char32_t cp) { return is_letter(cp) || is_digit(cp); }

inline bool is_space(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\f' ||
         cp == U'\v' || cp == 0xA0 || cp == 0x2028 || cp == 0x2029;
}

inline bool is_apostrophe(char32_t cp) { return cp == U'\'' || cp == 0x2019; }

inline std::string lower(std::string_view s) {
  std::u32string u = to_u32(s);
  for (auto& cp : u) cp = to_lower(cp);
  return from_u32(u);
}

/// Number of code points (used for character budgets).
inline std::size_t length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

}  // namespace mlsum::utf8

#endif  // MLSUM_UTF8_HPP_
