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

#include "lingleak/matchindex.h"

#include <algorithm>
#include <limits>
#include <set>
#include <tuple>
#include <utility>

#include "lingleak/parallel.h"
#include "lingleak/strings.h"

namespace lingleak {
namespace {

constexpr char kKeySep = '\x1f';

const std::vector<Posting>& EmptyPostings() {
  static const std::vector<Posting>* empty = new std::vector<Posting>();
  return *empty;
}

std::vector<std::string> StripPromptEcho(
    const std::vector<std::string>& generation,
    const std::vector<std::string>& prompt) {
  if (!prompt.empty() && generation.size() >= prompt.size() &&
      std::equal(prompt.begin(), prompt.end(), generation.begin())) {
    return {generation.begin() + prompt.size(), generation.end()};
  }
  return generation;
}

struct Candidate {
  int length = 0;
  uint32_t doc = 0;
  uint32_t pos = 0;
  MatchKind kind = MatchKind::kExact;
  int edits = 0;
};

// Longest verbatim run seeded from the index. Only left-maximal seeds are
// extended, so each run is visited once per (doc, alignment).
std::optional<Candidate> LongestExact(const std::vector<std::string>& gen,
                                      const MatchIndex& index,
                                      int min_match_len) {
  const size_t n = static_cast<size_t>(index.order());
  if (gen.size() < n) return std::nullopt;
  std::optional<Candidate> best;
  std::vector<std::string> window(n);
  for (size_t i = 0; i + n <= gen.size(); ++i) {
    std::copy(gen.begin() + i, gen.begin() + i + n, window.begin());
    for (const Posting& p : index.Lookup(window)) {
      const auto& doc = index.doc_tokens(p.doc);
      if (i > 0 && p.pos > 0 && gen[i - 1] == doc[p.pos - 1]) continue;
      size_t len = n;
      while (i + len < gen.size() && p.pos + len < doc.size() &&
             gen[i + len] == doc[p.pos + len]) {
        ++len;
      }
      const int length = static_cast<int>(len);
      if (!best || length > best->length ||
          (length == best->length &&
           std::tie(p.doc, p.pos) < std::tie(best->doc, best->pos))) {
        best = Candidate{length, p.doc, p.pos, MatchKind::kExact, 0};
      }
    }
  }
  if (best && best->length < min_match_len) return std::nullopt;
  return best;
}

// Semi-global alignment: all of `gen` against the best-fitting substring of
// `doc`. Returns (edits, span begin, span end) minimizing edits/max(|gen|,
// |span|), then preferring longer and earlier spans.
struct Alignment {
  int edits = 0;
  size_t begin = 0;
  size_t end = 0;
};

Alignment AlignToSubstring(const std::vector<std::string>& gen,
                           const std::vector<std::string>& doc) {
  const size_t m = gen.size();
  const size_t l = doc.size();
  std::vector<int> prev(l + 1), cur(l + 1);
  std::vector<size_t> prev_start(l + 1), cur_start(l + 1);
  for (size_t j = 0; j <= l; ++j) {
    prev[j] = 0;
    prev_start[j] = j;
  }
  for (size_t i = 1; i <= m; ++i) {
    cur[0] = static_cast<int>(i);
    cur_start[0] = 0;
    for (size_t j = 1; j <= l; ++j) {
      int cost = prev[j - 1] + (gen[i - 1] == doc[j - 1] ? 0 : 1);
      size_t start = prev_start[j - 1];
      if (prev[j] + 1 < cost) {
        cost = prev[j] + 1;
        start = prev_start[j];
      }
      if (cur[j - 1] + 1 < cost) {
        cost = cur[j - 1] + 1;
        start = cur_start[j - 1];
      }
      cur[j] = cost;
      cur_start[j] = start;
    }
    std::swap(prev, cur);
    std::swap(prev_start, cur_start);
  }
  Alignment best{std::numeric_limits<int>::max(), 0, 0};
  double best_ratio = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j <= l; ++j) {
    const size_t span = j - prev_start[j];
    const double denom = static_cast<double>(std::max(m, span));
    const double ratio = denom > 0 ? prev[j] / denom : 0.0;
    const size_t best_span = best.end - best.begin;
    if (ratio < best_ratio || (ratio == best_ratio && span > best_span)) {
      best_ratio = ratio;
      best = {prev[j], prev_start[j], j};
    }
  }
  return best;
}

std::optional<Candidate> BestNear(const std::vector<std::string>& gen,
                                  const PromptSpec& spec,
                                  const MatchIndex& index,
                                  const DetectOptions& options) {
  if (options.near_threshold <= 0 ||
      static_cast<int>(gen.size()) < options.min_match_len) {
    return std::nullopt;
  }
  // Candidate documents: any document sharing a seed n-gram, plus the
  // prompt's own source. Identical documents are aligned once.
  std::set<uint32_t> docs;
  const size_t n = static_cast<size_t>(index.order());
  std::vector<std::string> window(n);
  for (size_t i = 0; i + n <= gen.size(); ++i) {
    std::copy(gen.begin() + i, gen.begin() + i + n, window.begin());
    for (const Posting& p : index.Lookup(window)) docs.insert(p.doc);
  }
  if (auto source = index.FindDoc(spec.doc_id)) {
    docs.insert(static_cast<uint32_t>(*source));
  }
  std::set<std::vector<std::string>> seen;
  std::optional<Candidate> best;
  for (uint32_t d : docs) {
    const auto& doc = index.doc_tokens(d);
    if (!seen.insert(doc).second) continue;
    const Alignment a = AlignToSubstring(gen, doc);
    const int span = static_cast<int>(a.end - a.begin);
    if (span < options.min_match_len) continue;
    const double ratio =
        static_cast<double>(a.edits) /
        static_cast<double>(std::max<size_t>(gen.size(), a.end - a.begin));
    if (ratio > options.near_threshold) continue;
    const uint32_t pos = static_cast<uint32_t>(a.begin);
    if (!best || span > best->length ||
        (span == best->length && a.edits < best->edits)) {
      best = Candidate{span, d, pos,
                       a.edits == 0 ? MatchKind::kExact : MatchKind::kNear,
                       a.edits};
    }
  }
  return best;
}

}  // namespace

PromptSet BuildPrompts(const Corpus& train, int k, int min_match_len) {
  PromptSet out;
  if (k < 1) {
    out.warnings.push_back(StrCat("prompt size ", k, " is not positive"));
    return out;
  }
  std::vector<const Document*> eligible;
  for (const Document& doc : train.docs) {
    if (doc.split == Split::kTest) continue;
    if (static_cast<int64_t>(doc.tokens.size()) <
        int64_t{k} + std::max(min_match_len, 1)) {
      continue;
    }
    eligible.push_back(&doc);
  }
  std::sort(eligible.begin(), eligible.end(),
            [](const Document* a, const Document* b) { return a->id < b->id; });
  for (const Document* doc : eligible) {
    PromptSpec spec;
    spec.doc_id = doc->id;
    spec.prompt_size = k;
    const std::vector<std::string> tokens = Surfaces(*doc);
    spec.prompt.assign(tokens.begin(), tokens.begin() + k);
    spec.continuation.assign(tokens.begin() + k, tokens.end());
    spec.prompt_text = StrJoin(spec.prompt, " ");
    out.prompts.push_back(std::move(spec));
  }
  if (out.prompts.empty()) {
    out.warnings.push_back(StrCat("no documents with at least ",
                                  k + min_match_len, " tokens for prompt size ",
                                  k));
  }
  return out;
}

std::string MatchIndex::Key(const std::vector<std::string>& tokens,
                            size_t begin, size_t n) {
  std::string key;
  for (size_t i = begin; i < begin + n; ++i) {
    if (i > begin) key.push_back(kKeySep);
    key += tokens[i];
  }
  return key;
}

absl::StatusOr<MatchIndex> MatchIndex::Build(const Corpus& train,
                                             int seed_ngram) {
  if (seed_ngram < 1) {
    return absl::InvalidArgumentError("seed n-gram order must be >= 1");
  }
  MatchIndex index;
  index.order_ = seed_ngram;
  index.corpus_digest_ = CorpusDigest(train);
  size_t longest = 0;
  for (const Document& doc : train.docs) {
    if (doc.split == Split::kTest) continue;
    index.doc_lookup_.emplace(doc.id, index.docs_.size());
    index.doc_ids_.push_back(doc.id);
    index.docs_.push_back(Surfaces(doc));
    longest = std::max(longest, doc.tokens.size());
  }
  if (static_cast<size_t>(seed_ngram) > longest) {
    return absl::InvalidArgumentError(StrCat("seed n-gram order ", seed_ngram,
                                             " exceeds the longest document (",
                                             longest, " tokens)"));
  }
  const size_t n = static_cast<size_t>(seed_ngram);
  for (size_t d = 0; d < index.docs_.size(); ++d) {
    const auto& tokens = index.docs_[d];
    for (size_t p = 0; p + n <= tokens.size(); ++p) {
      index.postings_[Key(tokens, p, n)].push_back(
          {static_cast<uint32_t>(d), static_cast<uint32_t>(p)});
    }
  }
  return index;
}

std::optional<size_t> MatchIndex::FindDoc(std::string_view id) const {
  auto it = doc_lookup_.find(std::string(id));
  if (it == doc_lookup_.end()) return std::nullopt;
  return it->second;
}

const std::vector<Posting>& MatchIndex::Lookup(
    const std::vector<std::string>& ngram) const {
  if (ngram.size() != static_cast<size_t>(order_)) return EmptyPostings();
  auto it = postings_.find(Key(ngram, 0, ngram.size()));
  return it == postings_.end() ? EmptyPostings() : it->second;
}

std::string_view MatchKindName(MatchKind kind) {
  return kind == MatchKind::kExact ? "exact" : "near";
}

int EditDistance(const std::vector<std::string>& a,
                 const std::vector<std::string>& b) {
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1,
                         prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::optional<ExtractionMatch> DetectExtraction(
    const std::vector<std::string>& generation, const PromptSpec& spec,
    const MatchIndex& index, const DetectOptions& options) {
  const std::vector<std::string> gen = StripPromptEcho(generation, spec.prompt);
  std::optional<Candidate> best =
      LongestExact(gen, index, options.min_match_len);
  if (!best || best->length < static_cast<int>(gen.size())) {
    std::optional<Candidate> near = BestNear(gen, spec, index, options);
    if (near && (!best || near->length > best->length)) best = near;
  }
  if (!best) return std::nullopt;

  const auto& doc = index.doc_tokens(best->doc);
  ExtractionMatch match;
  match.doc_id = spec.doc_id;
  match.prompt_size = spec.prompt_size;
  match.matched_doc_id = index.doc_id(best->doc);
  match.match_len = best->length;
  match.kind = best->kind;
  const std::vector<std::string> span(doc.begin() + best->pos,
                                      doc.begin() + best->pos + best->length);
  match.matched_span_text = StrJoin(span, " ");
  match.edit_ratio =
      best->edits == 0
          ? 0.0
          : static_cast<double>(best->edits) /
                static_cast<double>(std::max<size_t>(gen.size(), span.size()));
  return match;
}

std::vector<CdfPoint> EmpiricalCdf(std::vector<double> values) {
  std::vector<CdfPoint> out;
  if (values.empty()) return out;
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
    out.push_back({values[i], static_cast<double>(i + 1) / n});
  }
  out.back().cumulative = 1.0;
  return out;
}

ExtractionReport BuildExtractionReport(
    const std::vector<ExtractionMatch>& matches, const Corpus& corpus,
    const std::vector<int>& prompt_sizes,
    const std::map<int, int64_t>& attempts) {
  ExtractionReport report;
  for (int k : prompt_sizes) {
    PromptSizeSummary summary;
    summary.prompt_size = k;
    auto it = attempts.find(k);
    summary.attempts = it == attempts.end() ? 0 : it->second;
    std::set<std::string> unique;
    for (const ExtractionMatch& m : matches) {
      if (m.prompt_size != k) continue;
      unique.insert(m.matched_span_text);
      (m.kind == MatchKind::kExact ? summary.exact_matches
                                   : summary.near_matches)++;
    }
    summary.unique_extractions = static_cast<int64_t>(unique.size());
    report.per_size.push_back(summary);
  }

  std::vector<double> all;
  std::unordered_map<std::string, size_t> length_of;
  for (const Document& doc : corpus.docs) {
    all.push_back(static_cast<double>(doc.tokens.size()));
    length_of.emplace(doc.id, doc.tokens.size());
  }
  std::set<std::string> sources;
  for (const ExtractionMatch& m : matches) sources.insert(m.matched_doc_id);
  std::vector<double> extracted;
  for (const std::string& id : sources) {
    auto it = length_of.find(id);
    if (it != length_of.end()) {
      extracted.push_back(static_cast<double>(it->second));
    }
  }
  report.all_word_count_cdf = EmpiricalCdf(std::move(all));
  report.extracted_word_count_cdf = EmpiricalCdf(std::move(extracted));
  return report;
}

absl::StatusOr<LogEvaluation> EvaluateGenerationLog(
    const std::vector<GenerationRecord>& records, const MatchIndex& index,
    const std::string& language, const DetectOptions& options, int threads) {
  std::vector<std::optional<ExtractionMatch>> found(records.size());
  ParallelFor(records.size(), threads, [&](size_t r) {
    const GenerationRecord& rec = records[r];
    PromptSpec spec;
    spec.doc_id = rec.doc_id;
    spec.prompt_size = rec.prompt_size;
    for (Token& t : Tokenize(rec.prompt, language)) {
      spec.prompt.push_back(std::move(t.surface));
    }
    spec.prompt_text = rec.prompt;
    std::vector<std::string> gen;
    for (Token& t : Tokenize(rec.generation, language)) {
      gen.push_back(std::move(t.surface));
    }
    found[r] = DetectExtraction(gen, spec, index, options);
  });

  std::vector<size_t> order(records.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return std::tie(records[a].doc_id, records[a].prompt_size) <
           std::tie(records[b].doc_id, records[b].prompt_size);
  });
  LogEvaluation out;
  for (size_t r : order) {
    ++out.attempts[records[r].prompt_size];
    if (found[r]) out.matches.push_back(std::move(*found[r]));
  }
  return out;
}

}  // namespace lingleak
