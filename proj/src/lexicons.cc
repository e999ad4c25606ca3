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

#include "lingleak/lexicons.h"

#include <algorithm>
#include <array>
#include <span>

#include "lingleak/unicode.h"

namespace lingleak {
namespace {

// Suffix tables, longest first within each language. Frozen: changing an
// entry changes every fallback-derived morphological complexity value.
constexpr std::array<std::string_view, 14> kEnglishSuffixes = {
    "ations", "ation", "ingly", "ments", "ment", "ness", "ings",
    "ing",    "ied",   "ies",   "ed",    "es",   "ly",   "s"};

constexpr std::array<std::string_view, 26> kSpanishSuffixes = {
    "amientos", "imientos", "amiento", "imiento", "aciones", "iciones", "ación",
    "ición",    "mente",    "ando",    "iendo",   "ados",    "idos",    "adas",
    "idas",     "ado",      "ido",     "ada",     "ida",     "ar",      "er",
    "ir",       "as",       "os",      "es",      "s"};

constexpr std::array<std::string_view, 24> kFrenchSuffixes = {
    "issements", "issement", "ations", "ation", "ements", "ement",
    "euses",     "euse",     "ières",  "ière",  "ées",    "ée",
    "és",        "eux",      "aux",    "er",    "ez",     "ent",
    "es",        "é",        "e",      "s",     "x",      "ir"};

constexpr std::array<std::string_view, 24> kItalianSuffixes = {
    "azioni", "azione", "amente", "mente", "ando", "endo", "ati", "ato",
    "ata",    "ate",    "iti",    "ito",   "ita",  "ite",  "are", "ere",
    "ire",    "ali",    "ale",    "i",     "o",    "a",    "e",   "he"};

constexpr std::array<std::string_view, 48> kEnglishFunction = {
    "a",    "an",    "the",   "and",  "or",   "but",   "if",    "of",
    "in",   "on",    "at",    "to",   "for",  "from",  "by",    "with",
    "as",   "is",    "are",   "was",  "were", "be",    "been",  "has",
    "have", "had",   "do",    "does", "did",  "not",   "no",    "this",
    "that", "these", "those", "it",   "its",  "he",    "she",   "they",
    "we",   "you",   "i",     "his",  "her",  "their", "which", "who"};

constexpr std::array<std::string_view, 48> kSpanishFunction = {
    "el",  "la",  "los",  "las",  "un",    "una",   "unos", "unas",
    "y",   "o",   "pero", "de",   "del",   "a",     "al",   "en",
    "con", "por", "para", "sin",  "sobre", "entre", "que",  "se",
    "su",  "sus", "es",   "son",  "fue",   "ha",    "han",  "no",
    "lo",  "le",  "les",  "como", "más",   "este",  "esta", "estos",
    "esa", "ese", "yo",   "él",   "ella",  "ellos", "si",   "muy"};

constexpr std::array<std::string_view, 48> kFrenchFunction = {
    "le",  "la",  "les",   "un",   "une",  "des",   "du",   "de",
    "et",  "ou",  "mais",  "à",    "au",   "aux",   "en",   "dans",
    "sur", "par", "pour",  "avec", "sans", "que",   "qui",  "se",
    "sa",  "son", "ses",   "est",  "sont", "été",   "a",    "ont",
    "ne",  "pas", "il",    "elle", "ils",  "elles", "nous", "vous",
    "je",  "ce",  "cette", "ces",  "l",    "d",     "qu",   "n"};

constexpr std::array<std::string_view, 48> kItalianFunction = {
    "il",     "lo",     "la",   "i",   "gli",   "le",   "un",    "uno",
    "una",    "e",      "o",    "ma",  "di",    "del",  "della", "dei",
    "a",      "al",     "alla", "da",  "in",    "nel",  "nella", "con",
    "su",     "per",    "tra",  "fra", "che",   "si",   "suo",   "sua",
    "è",      "sono",   "era",  "ha",  "hanno", "non",  "come",  "questo",
    "questa", "quello", "io",   "lui", "lei",   "loro", "l",     "un"};

std::span<const std::string_view> SuffixesFor(std::string_view language) {
  if (language == "en") return kEnglishSuffixes;
  if (language == "es") return kSpanishSuffixes;
  if (language == "fr") return kFrenchSuffixes;
  if (language == "it") return kItalianSuffixes;
  return {};
}

std::span<const std::string_view> FunctionWordsFor(std::string_view language) {
  if (language == "en") return kEnglishFunction;
  if (language == "es") return kSpanishFunction;
  if (language == "fr") return kFrenchFunction;
  if (language == "it") return kItalianFunction;
  return {};
}

bool AllDigits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

std::string FallbackLemma(std::string_view folded_form,
                          std::string_view language) {
  size_t best = 0;
  for (std::string_view suffix : SuffixesFor(language)) {
    if (suffix.size() <= best || suffix.size() >= folded_form.size()) continue;
    if (!folded_form.ends_with(suffix)) continue;
    const std::string_view stem =
        folded_form.substr(0, folded_form.size() - suffix.size());
    if (CodePointCount(stem) >= 3) best = suffix.size();
  }
  return std::string(folded_form.substr(0, folded_form.size() - best));
}

std::string_view WordClassName(WordClass c) {
  switch (c) {
    case WordClass::kFunction:
      return "F";
    case WordClass::kContent:
      return "W";
    case WordClass::kNumeral:
      return "N";
    case WordClass::kCapitalized:
      return "C";
  }
  return "?";
}

bool IsFunctionWord(std::string_view folded_form, std::string_view language) {
  for (std::string_view w : FunctionWordsFor(language)) {
    if (w == folded_form) return true;
  }
  return false;
}

WordClass ClassifyToken(const Token& token, std::string_view language) {
  if (AllDigits(token.surface)) return WordClass::kNumeral;
  if (IsFunctionWord(CaseFold(token.surface), language)) {
    return WordClass::kFunction;
  }
  if (token.is_capitalized) return WordClass::kCapitalized;
  return WordClass::kContent;
}

}  // namespace lingleak
