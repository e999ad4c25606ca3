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

#include "lingleak/linguametrics.h"

#include <cmath>
#include <set>
#include <tuple>
#include <utility>

#include "lingleak/lexicons.h"
#include "lingleak/parallel.h"
#include "lingleak/status_macros.h"
#include "lingleak/strings.h"
#include "lingleak/unicode.h"

namespace lingleak {
namespace {

using nlohmann::json;

// Splits [0, n) into at most `threads` contiguous chunks, builds one partial
// per chunk and merges them in chunk order. Partials hold integer counts or
// sets, so the merged result does not depend on the chunking.
template <typename Partial, typename Build, typename Merge>
Partial ChunkedReduce(size_t n, int threads, Build build, Merge merge) {
  const size_t chunks = std::max<size_t>(
      1, std::min<size_t>(static_cast<size_t>(std::max(threads, 1)), n));
  const size_t step = (n + chunks - 1) / std::max<size_t>(chunks, 1);
  std::vector<Partial> partials(chunks);
  ParallelFor(chunks, threads, [&](size_t c) {
    const size_t begin = std::min(n, c * step);
    const size_t end = std::min(n, begin + step);
    partials[c] = build(begin, end);
  });
  Partial out = std::move(partials[0]);
  for (size_t c = 1; c < chunks; ++c) merge(out, partials[c]);
  return out;
}

absl::Status Tagged(std::string_view metric, const absl::Status& status) {
  return absl::Status(status.code(), StrCat(metric, ": ", status.message()));
}

struct SurfaceStats {
  int64_t tokens = 0;
  int64_t chars = 0;
  int64_t capitalized = 0;
  std::set<std::string> types;
  std::map<int, int64_t> sentence_len_hist;
  std::map<int, int64_t> word_len_hist;
};

SurfaceStats ComputeSurfaceStats(const Corpus& corpus, int threads) {
  return ChunkedReduce<SurfaceStats>(
      corpus.docs.size(), threads,
      [&](size_t begin, size_t end) {
        SurfaceStats s;
        for (size_t i = begin; i < end; ++i) {
          const Document& doc = corpus.docs[i];
          ++s.sentence_len_hist[static_cast<int>(doc.tokens.size())];
          for (const Token& t : doc.tokens) {
            ++s.tokens;
            s.chars += t.char_len;
            s.capitalized += t.is_capitalized ? 1 : 0;
            s.types.insert(CaseFold(t.surface));
            ++s.word_len_hist[t.char_len];
          }
        }
        return s;
      },
      [](SurfaceStats& into, SurfaceStats& from) {
        into.tokens += from.tokens;
        into.chars += from.chars;
        into.capitalized += from.capitalized;
        into.types.merge(from.types);
        for (auto [k, v] : from.sentence_len_hist)
          into.sentence_len_hist[k] += v;
        for (auto [k, v] : from.word_len_hist) into.word_len_hist[k] += v;
      });
}

absl::Status RequireTokens(const SurfaceStats& s) {
  if (s.tokens == 0)
    return absl::FailedPreconditionError("corpus has no tokens");
  return absl::OkStatus();
}

struct InflectionSets {
  std::set<std::pair<std::string, std::string>> lemma_forms;
  bool used_fallback = false;
  bool missing_lemmas = false;
};

absl::StatusOr<InflectionSets> ComputeInflectionSets(
    const Corpus& corpus, const MetricOptions& options) {
  InflectionSets sets = ChunkedReduce<InflectionSets>(
      corpus.docs.size(), options.threads,
      [&](size_t begin, size_t end) {
        InflectionSets s;
        for (size_t i = begin; i < end; ++i) {
          const Document& doc = corpus.docs[i];
          if (!doc.lemmas && !options.fallback_lemmatizer) {
            s.missing_lemmas = true;
            continue;
          }
          for (size_t k = 0; k < doc.tokens.size(); ++k) {
            std::string form = CaseFold(doc.tokens[k].surface);
            std::string lemma;
            if (doc.lemmas) {
              lemma = CaseFold((*doc.lemmas)[k]);
            } else {
              lemma = FallbackLemma(form, doc.language);
              s.used_fallback = true;
            }
            s.lemma_forms.emplace(std::move(lemma), std::move(form));
          }
        }
        return s;
      },
      [](InflectionSets& into, InflectionSets& from) {
        into.lemma_forms.merge(from.lemma_forms);
        into.used_fallback |= from.used_fallback;
        into.missing_lemmas |= from.missing_lemmas;
      });
  if (sets.missing_lemmas) {
    return absl::FailedPreconditionError(
        "documents without lemma annotations; supply \"lemmas\" or enable the "
        "fallback lemmatizer");
  }
  if (sets.lemma_forms.empty()) {
    return absl::FailedPreconditionError("corpus has no tokens");
  }
  return sets;
}

struct RelationCounts {
  std::map<std::string, int64_t> counts;
  bool used_fallback = false;
  bool missing = false;
};

absl::StatusOr<RelationCounts> ComputeRelationCounts(
    const Corpus& corpus, const MetricOptions& options) {
  RelationCounts rc = ChunkedReduce<RelationCounts>(
      corpus.docs.size(), options.threads,
      [&](size_t begin, size_t end) {
        RelationCounts r;
        for (size_t i = begin; i < end; ++i) {
          const Document& doc = corpus.docs[i];
          if (doc.deprels) {
            for (const std::string& label : *doc.deprels) ++r.counts[label];
          } else if (options.fallback_relations) {
            r.used_fallback = true;
            for (size_t k = 1; k < doc.tokens.size(); ++k) {
              ++r.counts[StrCat(
                  WordClassName(ClassifyToken(doc.tokens[k - 1], doc.language)),
                  ">",
                  WordClassName(ClassifyToken(doc.tokens[k], doc.language)))];
            }
          } else {
            r.missing = true;
          }
        }
        return r;
      },
      [](RelationCounts& into, RelationCounts& from) {
        for (const auto& [k, v] : from.counts) into.counts[k] += v;
        into.used_fallback |= from.used_fallback;
        into.missing |= from.missing;
      });
  if (rc.missing) {
    return absl::FailedPreconditionError(
        "documents without relation labels; supply \"deprels\" or enable the "
        "fallback relation proxy");
  }
  if (rc.counts.empty()) {
    return absl::FailedPreconditionError("no relations observed");
  }
  return rc;
}

double EntropyNats(const std::map<std::string, int64_t>& counts) {
  int64_t total = 0;
  for (const auto& [label, c] : counts) total += c;
  double h = 0.0;
  for (const auto& [label, c] : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log(p);
  }
  return h;
}

using Context = std::pair<std::string, std::string>;
using Event = std::tuple<std::string, std::string, std::string>;

struct EventCounts {
  std::map<Event, int64_t> joint;
  bool has_interior = false;
};

}  // namespace

absl::StatusOr<double> MorphologicalComplexity(const Corpus& corpus,
                                               const MetricOptions& options) {
  ASSIGN_OR_RETURN(InflectionSets sets, ComputeInflectionSets(corpus, options));
  std::set<std::string> lemmas;
  for (const auto& [lemma, form] : sets.lemma_forms) lemmas.insert(lemma);
  return static_cast<double>(sets.lemma_forms.size()) /
         static_cast<double>(lemmas.size());
}

absl::StatusOr<RelationDistribution> RelationDistributionOf(
    const Corpus& corpus, const MetricOptions& options) {
  ASSIGN_OR_RETURN(RelationCounts rc, ComputeRelationCounts(corpus, options));
  RelationDistribution dist;
  for (const auto& [label, c] : rc.counts) dist.total += c;
  for (const auto& [label, c] : rc.counts) {
    dist.probabilities[label] =
        static_cast<double>(c) / static_cast<double>(dist.total);
  }
  return dist;
}

absl::StatusOr<double> SyntacticEntropy(const Corpus& corpus,
                                        const MetricOptions& options) {
  ASSIGN_OR_RETURN(RelationCounts rc, ComputeRelationCounts(corpus, options));
  return EntropyNats(rc.counts);
}

absl::StatusOr<double> Redundancy(const Corpus& corpus,
                                  const MetricOptions& options) {
  if (!(options.smoothing_k > 0.0)) {
    return absl::InvalidArgumentError("smoothing pseudo-count must be > 0");
  }
  const std::string boundary(kBoundarySymbol);
  EventCounts events = ChunkedReduce<EventCounts>(
      corpus.docs.size(), options.threads,
      [&](size_t begin, size_t end) {
        EventCounts e;
        for (size_t i = begin; i < end; ++i) {
          const Document& doc = corpus.docs[i];
          const size_t n = doc.tokens.size();
          if (n >= 3) e.has_interior = true;
          std::vector<std::string> folded;
          folded.reserve(n);
          for (const Token& t : doc.tokens)
            folded.push_back(CaseFold(t.surface));
          for (size_t k = 0; k < n; ++k) {
            ++e.joint[Event{folded[k], k > 0 ? folded[k - 1] : boundary,
                            k + 1 < n ? folded[k + 1] : boundary}];
          }
        }
        return e;
      },
      [](EventCounts& into, EventCounts& from) {
        for (const auto& [k, v] : from.joint) into.joint[k] += v;
        into.has_interior |= from.has_interior;
      });
  if (!events.has_interior) {
    return absl::FailedPreconditionError(
        "no document has an interior position (needs >= 3 tokens)");
  }

  std::map<std::string, int64_t> center;
  std::map<Context, int64_t> context;
  int64_t total = 0;
  for (const auto& [event, c] : events.joint) {
    const auto& [w, left, right] = event;
    center[w] += c;
    context[Context{left, right}] += c;
    total += c;
  }
  const double k = options.smoothing_k;
  const double n = static_cast<double>(total);
  const double v_center = static_cast<double>(center.size());
  const double v_context = static_cast<double>(context.size());
  const double joint_denominator = n + k * v_center * v_context;
  const double center_denominator = n + k * v_center;
  const double context_denominator = n + k * v_context;

  double sum = 0.0;
  for (const auto& [event, c] : events.joint) {
    const auto& [w, left, right] = event;
    const double p_joint = (static_cast<double>(c) + k) / joint_denominator;
    const double p_center =
        (static_cast<double>(center[w]) + k) / center_denominator;
    const double p_context =
        (static_cast<double>(context[Context{left, right}]) + k) /
        context_denominator;
    sum += static_cast<double>(c) * std::log2(p_joint / (p_center * p_context));
  }
  return sum / n;
}

absl::StatusOr<double> AvgWordLength(const Corpus& corpus) {
  const SurfaceStats s = ComputeSurfaceStats(corpus, 1);
  RETURN_IF_ERROR(RequireTokens(s));
  return static_cast<double>(s.chars) / static_cast<double>(s.tokens);
}

absl::StatusOr<double> CapitalizationRate(const Corpus& corpus) {
  const SurfaceStats s = ComputeSurfaceStats(corpus, 1);
  RETURN_IF_ERROR(RequireTokens(s));
  return static_cast<double>(s.capitalized) / static_cast<double>(s.tokens);
}

absl::StatusOr<double> VocabularyRichness(const Corpus& corpus) {
  const SurfaceStats s = ComputeSurfaceStats(corpus, 1);
  RETURN_IF_ERROR(RequireTokens(s));
  return static_cast<double>(s.types.size()) / static_cast<double>(s.tokens);
}

absl::StatusOr<LinguisticProfile> Profile(const Corpus& corpus,
                                          const MetricOptions& options) {
  LinguisticProfile p;
  SurfaceStats s = ComputeSurfaceStats(corpus, options.threads);
  if (absl::Status st = RequireTokens(s); !st.ok()) {
    return Tagged("avg_word_length", st);
  }
  p.n_tokens = s.tokens;
  p.n_types = static_cast<int64_t>(s.types.size());
  p.avg_word_len = static_cast<double>(s.chars) / static_cast<double>(s.tokens);
  p.cap_rate =
      static_cast<double>(s.capitalized) / static_cast<double>(s.tokens);
  p.vocab_richness =
      static_cast<double>(p.n_types) / static_cast<double>(p.n_tokens);
  p.mean_sentence_len =
      static_cast<double>(s.tokens) / static_cast<double>(corpus.docs.size());
  p.sentence_len_hist = std::move(s.sentence_len_hist);
  p.word_len_hist = std::move(s.word_len_hist);

  auto sets = ComputeInflectionSets(corpus, options);
  if (!sets.ok()) return Tagged("morphological_complexity", sets.status());
  std::set<std::string> lemmas;
  for (const auto& [lemma, form] : sets->lemma_forms) lemmas.insert(lemma);
  p.morph_complexity = static_cast<double>(sets->lemma_forms.size()) /
                       static_cast<double>(lemmas.size());
  if (sets->used_fallback)
    p.fallbacks_used.push_back("lemmatizer:suffix-strip");

  auto relations = ComputeRelationCounts(corpus, options);
  if (!relations.ok()) {
    return Tagged("syntactic_entropy", relations.status());
  }
  p.syntactic_entropy = EntropyNats(relations->counts);
  if (relations->used_fallback) {
    p.fallbacks_used.push_back("relations:word-class-bigrams");
  }

  auto r = Redundancy(corpus, options);
  if (!r.ok()) return Tagged("redundancy", r.status());
  p.redundancy = *r;
  return p;
}

namespace {

json HistToJson(const std::map<int, int64_t>& hist) {
  json out = json::array();
  for (const auto& [len, count] : hist)
    out.push_back(json::array({len, count}));
  return out;
}

absl::StatusOr<std::map<int, int64_t>> HistFromJson(const json& j,
                                                    std::string_view field) {
  std::map<int, int64_t> out;
  if (!j.is_array()) {
    return absl::InvalidArgumentError(StrCat(field, " must be an array"));
  }
  for (const json& pair : j) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
        !pair[1].is_number_integer()) {
      return absl::InvalidArgumentError(
          StrCat(field, " entries must be [len, count]"));
    }
    out[pair[0].get<int>()] = pair[1].get<int64_t>();
  }
  return out;
}

}  // namespace

json ProfileToJson(const LinguisticProfile& p) {
  json j = json::object();
  j["M"] = p.morph_complexity;
  j["S"] = p.syntactic_entropy;
  j["R"] = p.redundancy;
  j["T"] = p.avg_word_len;
  j["C"] = p.cap_rate;
  j["D"] = p.vocab_richness;
  j["n_tokens"] = p.n_tokens;
  j["n_types"] = p.n_types;
  j["mean_sentence_len"] = p.mean_sentence_len;
  j["sentence_len_hist"] = HistToJson(p.sentence_len_hist);
  j["word_len_hist"] = HistToJson(p.word_len_hist);
  j["fallbacks_used"] = p.fallbacks_used;
  j["metadata"] = {{"type_case_folding", "unicode-full"},
                   {"entropy_log_base", "e"},
                   {"redundancy_log_base", 2}};
  return j;
}

absl::StatusOr<LinguisticProfile> ProfileFromJson(const json& j) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError("profile must be a JSON object");
  }
  LinguisticProfile p;
  const std::pair<const char*, double*> reals[] = {
      {"M", &p.morph_complexity}, {"S", &p.syntactic_entropy},
      {"R", &p.redundancy},       {"T", &p.avg_word_len},
      {"C", &p.cap_rate},         {"D", &p.vocab_richness}};
  for (const auto& [key, target] : reals) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number()) {
      return absl::InvalidArgumentError(
          StrCat("profile field \"", key, "\" missing or not numeric"));
    }
    *target = it->get<double>();
  }
  for (const auto& [key, target] :
       {std::pair<const char*, int64_t*>{"n_tokens", &p.n_tokens},
        std::pair<const char*, int64_t*>{"n_types", &p.n_types}}) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number_integer()) {
      return absl::InvalidArgumentError(
          StrCat("profile field \"", key, "\" missing or not integer"));
    }
    *target = it->get<int64_t>();
  }
  if (auto it = j.find("mean_sentence_len"); it != j.end() && it->is_number()) {
    p.mean_sentence_len = it->get<double>();
  }
  if (auto it = j.find("sentence_len_hist"); it != j.end()) {
    ASSIGN_OR_RETURN(p.sentence_len_hist,
                     HistFromJson(*it, "sentence_len_hist"));
  }
  if (auto it = j.find("word_len_hist"); it != j.end()) {
    ASSIGN_OR_RETURN(p.word_len_hist, HistFromJson(*it, "word_len_hist"));
  }
  if (auto it = j.find("fallbacks_used"); it != j.end() && it->is_array()) {
    for (const json& f : *it) {
      if (f.is_string()) p.fallbacks_used.push_back(f.get<std::string>());
    }
  }
  return p;
}

}  // namespace lingleak
