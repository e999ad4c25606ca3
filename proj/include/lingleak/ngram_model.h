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

#ifndef LINGLEAK_NGRAM_MODEL_H_
#define LINGLEAK_NGRAM_MODEL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "absl/status/statusor.h"
#include "lingleak/corpus.h"

namespace lingleak {

inline constexpr std::string_view kBosSymbol = "<s>";
inline constexpr std::string_view kEosSymbol = "</s>";

enum class DecodeMode { kGreedy, kSample };

struct GenerateOptions {
  int max_tokens = 64;
  DecodeMode mode = DecodeMode::kGreedy;
  uint64_t seed = 0;  // sample mode only
};

// Count-based n-gram model with fixed pseudo-count smoothing and backoff to
// the longest observed context suffix. Ids: 0 = <s>, 1 = </s>, then surface
// forms in byte order.
class NGramModel {
 public:
  static absl::StatusOr<NGramModel> Train(const Corpus& train, int order = 5,
                                          double smoothing = 0.01);

  int order() const { return order_; }
  double smoothing() const { return smoothing_; }
  size_t vocab_size() const { return vocab_.size(); }
  const std::string& corpus_digest() const { return corpus_digest_; }
  // SHA-256 over order, smoothing, vocabulary and every count table.
  const std::string& digest() const { return digest_; }

  // P(next | context) using the longest observed suffix of `context`
  // (at most order-1 tokens). Distributions range over the vocabulary minus
  // <s>; unknown `next` gets probability 0.
  double Probability(const std::vector<std::string>& context,
                     std::string_view next) const;

  // Continuation of `prompt`, excluding the prompt and the end symbol.
  std::vector<std::string> Generate(const std::vector<std::string>& prompt,
                                    const GenerateOptions& options) const;

 private:
  struct Table {
    std::vector<std::pair<uint32_t, uint32_t>> counts;  // (id, count), by id
    uint64_t total = 0;
    uint32_t argmax = 0;  // highest count, lowest id on ties
  };

  NGramModel() = default;
  uint32_t IdOf(std::string_view token) const;
  static std::string ContextKey(const std::vector<uint32_t>& ids, size_t end,
                                size_t len);
  const Table* LongestTable(const std::vector<uint32_t>& history) const;

  int order_ = 0;
  double smoothing_ = 0;
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, uint32_t> ids_;
  // One map per context length 0..order-1.
  std::vector<std::unordered_map<std::string, Table>> tables_;
  std::string corpus_digest_;
  std::string digest_;
};

}  // namespace lingleak

#endif  // LINGLEAK_NGRAM_MODEL_H_
