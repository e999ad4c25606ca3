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

#include "lingleak/synth.h"

#include <array>
#include <cctype>
#include <utility>
#include <vector>

#include "lingleak/digest.h"
#include "lingleak/rng.h"
#include "lingleak/strings.h"

namespace lingleak {
namespace {

constexpr std::string_view kConsonants = "bcdfghklmnprstvz";
constexpr std::string_view kVowels = "aeiou";
constexpr int kSyllables = 16 * 5;

constexpr std::array<std::string_view, 8> kSuffixes = {"",   "s",  "ed", "ing",
                                                       "er", "es", "ly", "en"};

constexpr std::array<std::string_view, 12> kRelations = {
    "nsubj", "obj",    "obl",  "amod", "det",  "case",
    "nmod",  "advmod", "conj", "cc",   "mark", "root"};

constexpr uint64_t kKindStream = 1;
constexpr uint64_t kTemplateChoiceStream = 2;
constexpr uint64_t kDocStream = 3;
constexpr uint64_t kTemplateStream = 4;

int StemSyllables(int vocab_size) {
  int syllables = 2;
  int64_t capacity = int64_t{kSyllables} * kSyllables;
  while (capacity < vocab_size) {
    capacity *= kSyllables;
    ++syllables;
  }
  return syllables;
}

std::string Suffix(int form) {
  if (form < static_cast<int>(kSuffixes.size())) {
    return std::string(kSuffixes[form]);
  }
  // Bijective base-5 over vowels after a 'u' marker; never collides with the
  // fixed list because none of those starts with 'u'.
  int64_t j = form - static_cast<int64_t>(kSuffixes.size()) + 1;
  std::string digits;
  while (j > 0) {
    --j;
    digits.insert(digits.begin(), kVowels[j % 5]);
    j /= 5;
  }
  return StrCat("u", digits);
}

struct SynthToken {
  int lemma;
  int form;
};

std::vector<SynthToken> DrawTokens(const SynthSpec& spec, SplitMix64& rng) {
  const int length =
      spec.min_len + static_cast<int>(rng.NextBelow(static_cast<uint64_t>(
                         spec.max_len - spec.min_len + 1)));
  std::vector<SynthToken> tokens(length);
  for (SynthToken& t : tokens) {
    t.lemma = static_cast<int>(rng.NextBelow(spec.vocab_size));
    t.form = static_cast<int>(rng.NextBelow(spec.inflection));
  }
  return tokens;
}

Document Render(const SynthSpec& spec, int index,
                const std::vector<SynthToken>& drawn) {
  Document doc;
  doc.id = fmt::format("{}-{:06d}", spec.language, index);
  doc.language = spec.language;
  std::vector<std::string> surfaces;
  std::vector<std::string> lemmas;
  std::vector<std::string> deprels;
  for (const SynthToken& t : drawn) {
    surfaces.push_back(SynthForm(t.lemma, t.form, spec.vocab_size));
    lemmas.push_back(SynthStem(t.lemma, spec.vocab_size));
    deprels.emplace_back(
        kRelations[Mix64(static_cast<uint64_t>(t.lemma)) % kRelations.size()]);
  }
  if (!surfaces.empty()) {
    surfaces[0][0] = static_cast<char>(
        std::toupper(static_cast<unsigned char>(surfaces[0][0])));
  }
  doc.text = StrCat(StrJoin(surfaces, " "), ".");
  for (std::string& s : surfaces) doc.tokens.push_back(MakeToken(std::move(s)));
  doc.lemmas = std::move(lemmas);
  doc.deprels = std::move(deprels);
  return doc;
}

}  // namespace

std::string SynthStem(int lemma, int vocab_size) {
  const int syllables = StemSyllables(vocab_size);
  std::string stem;
  int64_t rest = lemma;
  for (int s = 0; s < syllables; ++s) {
    const int syllable = static_cast<int>(rest % kSyllables);
    rest /= kSyllables;
    stem.push_back(kConsonants[syllable / 5]);
    stem.push_back(kVowels[syllable % 5]);
  }
  return stem;
}

std::string SynthForm(int lemma, int form, int vocab_size) {
  return StrCat(SynthStem(lemma, vocab_size), Suffix(form));
}

absl::StatusOr<Corpus> SynthCorpus(const SynthSpec& spec) {
  if (spec.n_docs < 1) return absl::InvalidArgumentError("n_docs must be >= 1");
  if (spec.vocab_size < 2) {
    return absl::InvalidArgumentError("vocab_size must be >= 2");
  }
  if (!(spec.redundancy >= 0.0 && spec.redundancy <= 1.0)) {
    return absl::InvalidArgumentError("redundancy must lie in [0, 1]");
  }
  if (spec.inflection < 1) {
    return absl::InvalidArgumentError("inflection must be >= 1");
  }
  if (spec.min_len < 1 || spec.max_len < spec.min_len) {
    return absl::InvalidArgumentError("need 1 <= min_len <= max_len");
  }
  if (spec.n_templates < 1) {
    return absl::InvalidArgumentError("n_templates must be >= 1");
  }

  std::vector<std::vector<SynthToken>> templates;
  for (int t = 0; t < spec.n_templates; ++t) {
    SplitMix64 rng(CounterHash(spec.seed, kTemplateStream, t));
    templates.push_back(DrawTokens(spec, rng));
  }

  Corpus corpus;
  corpus.language = spec.language;
  corpus.provenance.source = "synth";
  corpus.provenance.format = "synth";
  corpus.provenance.options_digest = Sha256Hex(
      fmt::format("{}|{}|{}|{}|{}|{}|{}|{}|{}", spec.n_docs, spec.vocab_size,
                  spec.redundancy, spec.inflection, spec.seed, spec.min_len,
                  spec.max_len, spec.n_templates, spec.language));
  corpus.docs.reserve(spec.n_docs);
  for (int i = 0; i < spec.n_docs; ++i) {
    const bool from_template =
        UnitDouble(CounterHash(spec.seed, kKindStream, i)) < spec.redundancy;
    if (from_template) {
      const uint64_t t =
          CounterHash(spec.seed, kTemplateChoiceStream, i) % spec.n_templates;
      corpus.docs.push_back(Render(spec, i, templates[t]));
    } else {
      SplitMix64 rng(CounterHash(spec.seed, kDocStream, i));
      corpus.docs.push_back(Render(spec, i, DrawTokens(spec, rng)));
    }
  }
  return corpus;
}

}  // namespace lingleak
