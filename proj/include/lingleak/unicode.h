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

#ifndef LINGLEAK_UNICODE_H_
#define LINGLEAK_UNICODE_H_

#include <string>
#include <string_view>

namespace lingleak {

// True if `text` is well-formed UTF-8.
bool IsValidUtf8(std::string_view text);

// Canonical composition (NFC). Invalid input is returned unchanged.
std::string NormalizeNfc(std::string_view text);

// Number of Unicode scalar values.
int CodePointCount(std::string_view text);

// First scalar value is an uppercase or titlecase letter.
bool StartsWithUppercase(std::string_view text);

// Full Unicode case folding.
std::string CaseFold(std::string_view text);

// Letters, digits and combining marks form words; everything else separates.
bool IsWordCodePoint(int code_point);

}  // namespace lingleak

#endif  // LINGLEAK_UNICODE_H_
