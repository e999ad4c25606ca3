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

#ifndef LINGLEAK_LEXICONS_H_
#define LINGLEAK_LEXICONS_H_

#include <string>
#include <string_view>

#include "lingleak/corpus.h"

namespace lingleak {

// Suffix-stripping fallback lemmatizer. Input must already be case-folded.
// Strips the longest suffix from the language's frozen table while leaving a
// stem of at least three characters. Unknown languages map forms to
// themselves.
std::string FallbackLemma(std::string_view folded_form,
                          std::string_view language);

// Coarse word classes used as a relation proxy when no dependency labels are
// available.
enum class WordClass { kFunction, kContent, kNumeral, kCapitalized };

std::string_view WordClassName(WordClass c);

WordClass ClassifyToken(const Token& token, std::string_view language);

bool IsFunctionWord(std::string_view folded_form, std::string_view language);

}  // namespace lingleak

#endif  // LINGLEAK_LEXICONS_H_
