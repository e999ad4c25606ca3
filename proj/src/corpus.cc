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

#include "lingleak/corpus.h"

#include <unicode/utf8.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "json.hpp"
#include "lingleak/digest.h"
#include "lingleak/rng.h"
#include "lingleak/status_macros.h"
#include "lingleak/strings.h"
#include "lingleak/unicode.h"

namespace lingleak {
namespace {

using nlohmann::json;

constexpr uint64_t kSplitStream = 0x73706c6974ULL;  // "split"

absl::StatusOr<std::vector<std::string>> StringArray(const json& value,
                                                     std::string_view field,
                                                     int line) {
  if (!value.is_array()) {
    return absl::InvalidArgumentError(
        StrCat("line ", line, ": \"", field, "\" must be an array"));
  }
  std::vector<std::string> out;
  out.reserve(value.size());
  for (const json& item : value) {
    if (!item.is_string()) {
      return absl::InvalidArgumentError(
          StrCat("line ", line, ": \"", field, "\" must contain only strings"));
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

absl::StatusOr<Document> MakeDocument(std::string id, std::string language,
                                      std::string_view raw_text, int line) {
  if (id.empty()) {
    return absl::InvalidArgumentError(
        StrCat("line ", line, ": empty document id"));
  }
  if (!IsValidUtf8(raw_text)) {
    return absl::InvalidArgumentError(
        StrCat("line ", line, ": text is not valid UTF-8"));
  }
  Document doc;
  doc.id = std::move(id);
  doc.language = std::move(language);
  doc.text = NormalizeNfc(raw_text);
  doc.tokens = Tokenize(doc.text, doc.language);
  return doc;
}

absl::Status CheckLanguage(std::string& corpus_language,
                           const std::string& doc_language, int line) {
  if (doc_language.empty()) {
    return absl::InvalidArgumentError(StrCat(
        "line ", line, ": no language declared (record \"lang\" or option)"));
  }
  if (corpus_language.empty()) {
    corpus_language = doc_language;
  } else if (corpus_language != doc_language) {
    return absl::InvalidArgumentError(
        StrCat("line ", line, ": language \"", doc_language,
               "\" differs from corpus language \"", corpus_language, "\""));
  }
  return absl::OkStatus();
}

absl::StatusOr<Document> ParseJsonRecord(std::string_view text,
                                         const LoadOptions& options, int line) {
  json record = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (record.is_discarded() || !record.is_object()) {
    return absl::InvalidArgumentError(
        StrCat("line ", line, ": malformed JSON record"));
  }
  auto id_it = record.find("id");
  if (id_it == record.end() || !id_it->is_string()) {
    return absl::InvalidArgumentError(
        StrCat("line ", line, ": missing string field \"id\""));
  }
  auto text_it = record.find("text");
  if (text_it == record.end() || !text_it->is_string()) {
    return absl::InvalidArgumentError(
        StrCat("line ", line, ": missing string field \"text\""));
  }
  std::string language = options.language;
  if (auto it = record.find("lang"); it != record.end()) {
    if (!it->is_string()) {
      return absl::InvalidArgumentError(
          StrCat("line ", line, ": \"lang\" must be a string"));
    }
    language = it->get<std::string>();
  }
  ASSIGN_OR_RETURN(Document doc,
                   MakeDocument(id_it->get<std::string>(), language,
                                text_it->get_ref<const std::string&>(), line));
  if (auto it = record.find("lemmas"); it != record.end()) {
    ASSIGN_OR_RETURN(auto lemmas, StringArray(*it, "lemmas", line));
    if (lemmas.size() != doc.tokens.size()) {
      return absl::InvalidArgumentError(StrCat("line ", line, ": ",
                                               lemmas.size(), " lemmas for ",
                                               doc.tokens.size(), " tokens"));
    }
    doc.lemmas = std::move(lemmas);
  }
  if (auto it = record.find("deprels"); it != record.end()) {
    ASSIGN_OR_RETURN(auto deprels, StringArray(*it, "deprels", line));
    if (deprels.size() != doc.tokens.size()) {
      return absl::InvalidArgumentError(StrCat("line ", line, ": ",
                                               deprels.size(), " deprels for ",
                                               doc.tokens.size(), " tokens"));
    }
    doc.deprels = std::move(deprels);
  }
  if (auto it = record.find("split"); it != record.end()) {
    const std::string split = it->is_string() ? it->get<std::string>() : "";
    if (split == "train") {
      doc.split = Split::kTrain;
    } else if (split == "test") {
      doc.split = Split::kTest;
    } else if (split != "unassigned") {
      return absl::InvalidArgumentError(
          StrCat("line ", line, ": bad \"split\" value"));
    }
  }
  if (auto it = record.find("bin"); it != record.end() && !it->is_null()) {
    if (!it->is_number_integer() || it->get<int>() < 0 || it->get<int>() > 8) {
      return absl::InvalidArgumentError(
          StrCat("line ", line, ": \"bin\" must be an integer in 0..8"));
    }
    doc.bin_label = it->get<int>();
  }
  return doc;
}

}  // namespace

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kTest:
      return "test";
    case Split::kUnassigned:
      break;
  }
  return "unassigned";
}

Token MakeToken(std::string surface) {
  Token token;
  token.char_len = CodePointCount(surface);
  token.is_capitalized = StartsWithUppercase(surface);
  token.surface = std::move(surface);
  return token;
}

std::vector<Token> Tokenize(std::string_view text,
                            [[maybe_unused]] std::string_view language) {
  std::vector<Token> tokens;
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const int32_t length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  int32_t start = -1;
  while (i < length) {
    const int32_t at = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (IsWordCodePoint(c)) {
      if (start < 0) start = at;
    } else if (start >= 0) {
      tokens.push_back(MakeToken(std::string(text.substr(start, at - start))));
      start = -1;
    }
  }
  if (start >= 0) tokens.push_back(MakeToken(std::string(text.substr(start))));
  return tokens;
}

absl::StatusOr<Corpus> ParseCorpus(std::string_view content,
                                   const LoadOptions& options,
                                   std::string_view source_name) {
  Corpus corpus;
  corpus.language = options.language;
  corpus.provenance.source = std::string(source_name);
  corpus.provenance.format =
      options.format == CorpusFormat::kJsonl ? "jsonl" : "tsv";
  corpus.provenance.options_digest = Sha256Hex(StrCat(
      corpus.provenance.format, "\x1f", options.language, "\x1f", "nfc"));
  if (options.format == CorpusFormat::kTsv && options.language.empty()) {
    return absl::InvalidArgumentError("TSV input requires a language tag");
  }

  std::unordered_set<std::string> seen_ids;
  int line_number = 0;
  for (std::string_view line : StrSplit(content, '\n')) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    Document doc;
    if (options.format == CorpusFormat::kJsonl) {
      ASSIGN_OR_RETURN(doc, ParseJsonRecord(line, options, line_number));
    } else {
      const size_t tab = line.find('\t');
      if (tab == std::string_view::npos) {
        return absl::InvalidArgumentError(
            StrCat("line ", line_number, ": expected id<TAB>text"));
      }
      ASSIGN_OR_RETURN(
          doc, MakeDocument(std::string(line.substr(0, tab)), options.language,
                            line.substr(tab + 1), line_number));
    }
    RETURN_IF_ERROR(CheckLanguage(corpus.language, doc.language, line_number));
    if (!seen_ids.insert(doc.id).second) {
      return absl::InvalidArgumentError(StrCat(
          "line ", line_number, ": duplicate document id \"", doc.id, "\""));
    }
    corpus.docs.push_back(std::move(doc));
  }
  return corpus;
}

absl::StatusOr<Corpus> LoadCorpus(const std::string& path,
                                  const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseCorpus(buffer.str(), options, path);
}

std::string WriteCorpusJsonl(const Corpus& corpus) {
  std::string out;
  for (const Document& doc : corpus.docs) {
    json record = json::object();
    record["id"] = doc.id;
    record["lang"] = doc.language;
    record["text"] = doc.text;
    if (doc.lemmas) record["lemmas"] = *doc.lemmas;
    if (doc.deprels) record["deprels"] = *doc.deprels;
    if (doc.split != Split::kUnassigned) record["split"] = SplitName(doc.split);
    if (doc.bin_label) record["bin"] = *doc.bin_label;
    StrAppend(&out, record.dump(), "\n");
  }
  return out;
}

absl::StatusOr<Corpus> SplitCorpus(const Corpus& corpus, double train_fraction,
                                   uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    return absl::InvalidArgumentError(
        StrCat("train fraction must lie in (0, 1), got ", train_fraction));
  }
  const size_t n = corpus.docs.size();
  if (n < 2) {
    return absl::InvalidArgumentError("splitting needs at least 2 documents");
  }
  // The epsilon absorbs representation error in products such as 0.57 * 100.
  const size_t n_train = static_cast<size_t>(
      std::floor(train_fraction * static_cast<double>(n) + 1e-9));

  std::vector<std::pair<uint64_t, size_t>> keys(n);
  for (size_t i = 0; i < n; ++i) {
    keys[i] = {CounterHash(seed, kSplitStream, i), i};
  }
  std::sort(keys.begin(), keys.end());

  Corpus out = corpus;
  for (size_t rank = 0; rank < n; ++rank) {
    out.docs[keys[rank].second].split =
        rank < n_train ? Split::kTrain : Split::kTest;
  }
  return out;
}

absl::StatusOr<Corpus> AssignLengthBins(const Corpus& corpus, int n_bins) {
  if (n_bins < 1) return absl::InvalidArgumentError("n_bins must be >= 1");
  const size_t n = corpus.docs.size();
  if (n < static_cast<size_t>(n_bins)) {
    return absl::InvalidArgumentError(
        StrCat("corpus has ", n, " documents, fewer than ", n_bins, " bins"));
  }
  std::vector<size_t> lengths;
  lengths.reserve(n);
  for (const Document& doc : corpus.docs) lengths.push_back(doc.tokens.size());
  std::vector<size_t> sorted = lengths;
  std::sort(sorted.begin(), sorted.end());

  // edges[b] is the nearest-rank quantile at level (b + 1) / n_bins.
  std::vector<size_t> edges;
  for (int b = 1; b < n_bins; ++b) {
    const size_t rank = (static_cast<size_t>(b) * n + n_bins - 1) / n_bins;
    edges.push_back(sorted[rank - 1]);
  }

  Corpus out = corpus;
  for (size_t i = 0; i < n; ++i) {
    int label = n_bins - 1;
    for (int b = 0; b < n_bins - 1; ++b) {
      if (lengths[i] <= edges[b]) {
        label = b;
        break;
      }
    }
    out.docs[i].bin_label = label;
  }
  return out;
}

Corpus SplitSubset(const Corpus& corpus, Split split) {
  Corpus out;
  out.language = corpus.language;
  out.provenance = corpus.provenance;
  for (const Document& doc : corpus.docs) {
    if (doc.split == split) out.docs.push_back(doc);
  }
  return out;
}

std::string CorpusDigest(const Corpus& corpus) {
  Sha256 h;
  h.UpdateField(corpus.language);
  for (const Document& doc : corpus.docs) {
    h.UpdateField(doc.id).UpdateField(doc.text);
    h.UpdateField(doc.lemmas ? StrJoin(*doc.lemmas, "\x1f")
                             : std::string(1, '\0'));
    h.UpdateField(doc.deprels ? StrJoin(*doc.deprels, "\x1f")
                              : std::string(1, '\0'));
  }
  return h.HexDigest();
}

std::vector<std::string> Surfaces(const Document& doc) {
  std::vector<std::string> out;
  out.reserve(doc.tokens.size());
  for (const Token& t : doc.tokens) out.push_back(t.surface);
  return out;
}

}  // namespace lingleak
