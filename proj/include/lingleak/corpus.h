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

#ifndef LINGLEAK_CORPUS_H_
#define LINGLEAK_CORPUS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace lingleak {

struct Token {
  std::string surface;
  int char_len = 0;  // Unicode scalar values in `surface`.
  bool is_capitalized = false;
};

enum class Split { kUnassigned, kTrain, kTest };

std::string_view SplitName(Split split);

struct Document {
  std::string id;
  std::string language;
  std::string text;  // NFC-normalized source text.
  std::vector<Token> tokens;
  // Optional annotations, parallel to `tokens` when present.
  std::optional<std::vector<std::string>> lemmas;
  std::optional<std::vector<std::string>> deprels;
  Split split = Split::kUnassigned;
  std::optional<int> bin_label;
};

struct Provenance {
  std::string source;
  std::string format;
  std::string options_digest;
};

// Immutable once built; every transformation below returns a new corpus.
struct Corpus {
  std::string language;
  std::vector<Document> docs;
  Provenance provenance;
};

enum class CorpusFormat { kJsonl, kTsv };

struct LoadOptions {
  CorpusFormat format = CorpusFormat::kJsonl;
  // Required for TSV. For JSONL, records without "lang" fall back to it and
  // records with a different "lang" are rejected.
  std::string language;
};

// Maximal runs of letters, digits and combining marks. Apostrophes and all
// punctuation separate tokens; case is preserved. The rule is the same for
// every language; `language` is accepted for interface stability.
std::vector<Token> Tokenize(std::string_view text, std::string_view language);

Token MakeToken(std::string surface);

absl::StatusOr<Corpus> ParseCorpus(std::string_view content,
                                   const LoadOptions& options,
                                   std::string_view source_name = "<memory>");
absl::StatusOr<Corpus> LoadCorpus(const std::string& path,
                                  const LoadOptions& options);

// Records carry "split" and "bin" when assigned, so a written corpus parses
// back to the same structure.
std::string WriteCorpusJsonl(const Corpus& corpus);

// Tags exactly floor(train_fraction * N) documents as train. Placement is a
// pure function of (seed, document index).
absl::StatusOr<Corpus> SplitCorpus(const Corpus& corpus, double train_fraction,
                                   uint64_t seed);

// Quantile length bins over token counts; ties go to the lowest bin.
absl::StatusOr<Corpus> AssignLengthBins(const Corpus& corpus, int n_bins = 9);

// Documents tagged with `split`, in corpus order.
Corpus SplitSubset(const Corpus& corpus, Split split);

// Stable content digest over ids, texts and annotations.
std::string CorpusDigest(const Corpus& corpus);

std::vector<std::string> Surfaces(const Document& doc);

}  // namespace lingleak

#endif  // LINGLEAK_CORPUS_H_
