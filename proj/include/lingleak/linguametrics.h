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

#ifndef LINGLEAK_LINGUAMETRICS_H_
#define LINGLEAK_LINGUAMETRICS_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "lingleak/corpus.h"

namespace lingleak {

struct MetricOptions {
  // Documents without lemma annotations are lemmatized by suffix stripping.
  bool fallback_lemmatizer = false;
  // Documents without relation labels use word-class bigrams instead.
  bool fallback_relations = false;
  // Pseudo-count for the redundancy estimator.
  double smoothing_k = 1.0;
  int threads = 1;
};

// Empirical relation-label distribution; probabilities are all positive.
struct RelationDistribution {
  std::map<std::string, double> probabilities;
  int64_t total = 0;
};

struct LinguisticProfile {
  double morph_complexity = 0.0;   // M, forms per lemma
  double syntactic_entropy = 0.0;  // S, nats
  double redundancy = 0.0;         // R, bits
  double avg_word_len = 0.0;       // T, characters
  double cap_rate = 0.0;           // C
  double vocab_richness = 0.0;     // D = n_types / n_tokens
  int64_t n_tokens = 0;
  int64_t n_types = 0;
  double mean_sentence_len = 0.0;  // tokens per document
  std::map<int, int64_t> sentence_len_hist;
  std::map<int, int64_t> word_len_hist;
  std::vector<std::string> fallbacks_used;
};

absl::StatusOr<double> MorphologicalComplexity(
    const Corpus& corpus, const MetricOptions& options = {});

absl::StatusOr<RelationDistribution> RelationDistributionOf(
    const Corpus& corpus, const MetricOptions& options = {});

absl::StatusOr<double> SyntacticEntropy(const Corpus& corpus,
                                        const MetricOptions& options = {});

// Mean pointwise mutual information, in bits, between each token and its
// (left, right) neighbour pair. Document edges use a reserved boundary
// symbol. Joint and marginal probabilities are add-k smoothed over the
// observed center and context inventories.
absl::StatusOr<double> Redundancy(const Corpus& corpus,
                                  const MetricOptions& options = {});

absl::StatusOr<double> AvgWordLength(const Corpus& corpus);
absl::StatusOr<double> CapitalizationRate(const Corpus& corpus);
absl::StatusOr<double> VocabularyRichness(const Corpus& corpus);

// Errors from a sub-metric are prefixed with the metric's name.
absl::StatusOr<LinguisticProfile> Profile(const Corpus& corpus,
                                          const MetricOptions& options = {});

nlohmann::json ProfileToJson(const LinguisticProfile& profile);
absl::StatusOr<LinguisticProfile> ProfileFromJson(const nlohmann::json& j);

// Boundary symbol used by the redundancy estimator; cannot collide with a
// token because tokens never contain '<'.
inline constexpr std::string_view kBoundarySymbol = "<b>";

}  // namespace lingleak

#endif  // LINGLEAK_LINGUAMETRICS_H_
