/*
 * Copyright 2026 The LingLeak Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "lingleak/unicode.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

namespace lingleak {
namespace {

// Decodes the scalar at `i` and advances it; returns a negative value on
// malformed input.
int32_t NextCodePoint(std::string_view text, int32_t& i) {
  UChar32 c;
  U8_NEXT(reinterpret_cast<const uint8_t*>(text.data()), i,
          static_cast<int32_t>(text.size()), c);
  return c;
}

}  // namespace

bool IsValidUtf8(std::string_view text) {
  int32_t i = 0;
  while (i < static_cast<int32_t>(text.size())) {
    if (NextCodePoint(text, i) < 0) return false;
  }
  return true;
}

std::string NormalizeNfc(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || !IsValidUtf8(text)) return std::string(text);
  icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  icu::UnicodeString normalized = nfc->normalize(source, status);
  if (U_FAILURE(status)) return std::string(text);
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

int CodePointCount(std::string_view text) {
  int count = 0;
  int32_t i = 0;
  while (i < static_cast<int32_t>(text.size())) {
    NextCodePoint(text, i);
    ++count;
  }
  return count;
}

bool StartsWithUppercase(std::string_view text) {
  if (text.empty()) return false;
  int32_t i = 0;
  const UChar32 c = NextCodePoint(text, i);
  return c >= 0 && (u_isupper(c) || u_istitle(c));
}

std::string CaseFold(std::string_view text) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  s.foldCase(U_FOLD_CASE_DEFAULT);
  std::string out;
  s.toUTF8String(out);
  return out;
}

bool IsWordCodePoint(int code_point) {
  if (code_point < 0) return false;
  if (u_hasBinaryProperty(code_point, UCHAR_ALPHABETIC)) return true;
  if (u_isdigit(code_point)) return true;
  const int8_t type = u_charType(code_point);
  return type == U_NON_SPACING_MARK || type == U_COMBINING_SPACING_MARK ||
         type == U_ENCLOSING_MARK;
}

}  // namespace lingleak
