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

#ifndef LINGLEAK_MATCHINDEX_H_
#define LINGLEAK_MATCHINDEX_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "absl/status/statusor.h"
#include "lingleak/corpus.h"

namespace lingleak {

inline constexpr int kDefaultPromptSizes[] = {5, 12, 25, 37};

struct PromptSpec {
  std::string doc_id;
  int prompt_size = 0;
  std::vector<std::string> prompt;        // first k tokens
  std::string prompt_text;                // prompt tokens joined by spaces
  std::vector<std::string> continuation;  // remaining tokens of the document
};

struct PromptSet {
  std::vector<PromptSpec> prompts;
  std::vector<std::string> warnings;
};

// One prompt per eligible document, ordered by doc id. Documents tagged as
// test are skipped; documents with fewer than k + min_match_len tokens are
// excluded.
PromptSet BuildPrompts(const Corpus& train, int k, int min_match_len = 10);

struct Posting {
  uint32_t doc = 0;  // index into the indexed corpus
  uint32_t pos = 0;  // token offset of the window start
};

// Token n-gram index over a training corpus. Immutable after Build.
class MatchIndex {
 public:
  static absl::StatusOr<MatchIndex> Build(const Corpus& train,
                                          int seed_ngram = 5);

  int order() const { return order_; }
  const std::string& corpus_digest() const { return corpus_digest_; }
  size_t num_docs() const { return docs_.size(); }
  const std::vector<std::string>& doc_tokens(size_t d) const {
    return docs_[d];
  }
  const std::string& doc_id(size_t d) const { return doc_ids_[d]; }
  std::optional<size_t> FindDoc(std::string_view id) const;

  // Postings for `ngram` (which must have exactly order() tokens); empty when
  // absent.
  const std::vector<Posting>& Lookup(
      const std::vector<std::string>& ngram) const;
  size_t num_keys() const { return postings_.size(); }

 private:
  MatchIndex() = default;
  static std::string Key(const std::vector<std::string>& tokens, size_t begin,
                         size_t n);

  int order_ = 0;
  std::string corpus_digest_;
  std::vector<std::string> doc_ids_;
  std::vector<std::vector<std::string>> docs_;
  std::unordered_map<std::string, size_t> doc_lookup_;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
};

enum class MatchKind { kExact, kNear };
std::string_view MatchKindName(MatchKind kind);

struct ExtractionMatch {
  std::string doc_id;  // document the prompt came from
  int prompt_size = 0;
  std::string matched_doc_id;  // training document holding the span
  std::string matched_span_text;
  int match_len = 0;  // tokens in the training span
  MatchKind kind = MatchKind::kExact;
  double edit_ratio = 0.0;
};

struct DetectOptions {
  int min_match_len = 10;
  double near_threshold = 0.1;
};

// Looks for the longest qualifying match of `generation` against the indexed
// corpus. If the generation repeats the prompt, the echoed prompt is removed
// first so prompt tokens never count.
std::optional<ExtractionMatch> DetectExtraction(
    const std::vector<std::string>& generation, const PromptSpec& spec,
    const MatchIndex& index, const DetectOptions& options = {});

// Token-level Levenshtein distance.
int EditDistance(const std::vector<std::string>& a,
                 const std::vector<std::string>& b);

struct CdfPoint {
  double value = 0;
  double cumulative = 0;
};

// Empirical CDF: one point per distinct value, ascending, ending at 1.0.
std::vector<CdfPoint> EmpiricalCdf(std::vector<double> values);

struct PromptSizeSummary {
  int prompt_size = 0;
  int64_t unique_extractions = 0;
  int64_t exact_matches = 0;
  int64_t near_matches = 0;
  int64_t attempts = 0;
};

struct ExtractionReport {
  std::vector<PromptSizeSummary> per_size;  // in requested order
  std::vector<CdfPoint> all_word_count_cdf;
  std::vector<CdfPoint> extracted_word_count_cdf;
};

// `attempts` maps prompt size to the number of generations evaluated. Unique
// counts deduplicate on matched span text within a prompt size.
ExtractionReport BuildExtractionReport(
    const std::vector<ExtractionMatch>& matches, const Corpus& corpus,
    const std::vector<int>& prompt_sizes,
    const std::map<int, int64_t>& attempts);

// Generation-log record as exchanged with model back ends.
struct GenerationRecord {
  std::string doc_id;
  int prompt_size = 0;
  std::string prompt;
  std::string generation;
  std::string model_id;
};

struct LogEvaluation {
  std::vector<ExtractionMatch> matches;  // ordered by (doc_id, size, record)
  std::map<int, int64_t> attempts;
};

// Tokenizes every generation with the corpus tokenizer and runs detection.
// Records whose doc id is not in the index are still scored; their prompt is
// taken from the record. Output is independent of `threads`.
absl::StatusOr<LogEvaluation> EvaluateGenerationLog(
    const std::vector<GenerationRecord>& records, const MatchIndex& index,
    const std::string& language, const DetectOptions& options = {},
    int threads = 1);

}  // namespace lingleak

#endif  // LINGLEAK_MATCHINDEX_H_
