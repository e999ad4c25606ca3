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

#include "lingleak/ngram_model.h"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "lingleak/digest.h"
#include "lingleak/rng.h"
#include "lingleak/strings.h"

namespace lingleak {
namespace {

constexpr uint32_t kBos = 0;
constexpr uint32_t kEos = 1;
constexpr uint32_t kUnknown = std::numeric_limits<uint32_t>::max();

}  // namespace

absl::StatusOr<NGramModel> NGramModel::Train(const Corpus& train, int order,
                                             double smoothing) {
  if (order < 2) return absl::InvalidArgumentError("order must be >= 2");
  if (!(smoothing > 0)) {
    return absl::InvalidArgumentError("smoothing must be positive");
  }
  std::vector<const Document*> docs;
  for (const Document& doc : train.docs) {
    if (doc.split != Split::kTest) docs.push_back(&doc);
  }
  if (docs.empty()) return absl::InvalidArgumentError("empty train set");

  NGramModel model;
  model.order_ = order;
  model.smoothing_ = smoothing;
  model.corpus_digest_ = CorpusDigest(train);

  std::set<std::string> surfaces;
  for (const Document* doc : docs) {
    for (const Token& t : doc->tokens) surfaces.insert(t.surface);
  }
  model.vocab_ = {std::string(kBosSymbol), std::string(kEosSymbol)};
  model.vocab_.insert(model.vocab_.end(), surfaces.begin(), surfaces.end());
  for (size_t i = 0; i < model.vocab_.size(); ++i) {
    model.ids_.emplace(model.vocab_[i], static_cast<uint32_t>(i));
  }

  // Ordered maps while counting keep table construction deterministic.
  std::vector<std::map<std::string, std::map<uint32_t, uint32_t>>> counts(
      order);
  const size_t pad = static_cast<size_t>(order - 1);
  for (const Document* doc : docs) {
    std::vector<uint32_t> ids(pad, kBos);
    for (const Token& t : doc->tokens) ids.push_back(model.ids_.at(t.surface));
    ids.push_back(kEos);
    for (size_t i = pad; i < ids.size(); ++i) {
      for (size_t len = 0; len <= pad; ++len) {
        ++counts[len][ContextKey(ids, i, len)][ids[i]];
      }
    }
  }

  Sha256 hash;
  hash.UpdateField(StrCat(order, "|", FormatDouble(smoothing)));
  for (const std::string& v : model.vocab_) hash.UpdateField(v);
  model.tables_.resize(order);
  for (int len = 0; len < order; ++len) {
    for (const auto& [key, row] : counts[len]) {
      Table table;
      uint32_t best = 0;
      for (const auto& [id, c] : row) {
        table.counts.emplace_back(id, c);
        table.total += c;
        if (c > best) {
          best = c;
          table.argmax = id;
        }
      }
      hash.UpdateField(key);
      for (const auto& [id, c] : table.counts) {
        hash.UpdateField(StrCat(id, ":", c));
      }
      model.tables_[len].emplace(key, std::move(table));
    }
  }
  model.digest_ = hash.HexDigest();
  return model;
}

std::string NGramModel::ContextKey(const std::vector<uint32_t>& ids, size_t end,
                                   size_t len) {
  std::string key;
  key.reserve(len * 4);
  for (size_t i = end - len; i < end; ++i) {
    const uint32_t v = ids[i];
    for (int b = 0; b < 4; ++b) key.push_back(static_cast<char>(v >> (8 * b)));
  }
  return key;
}

uint32_t NGramModel::IdOf(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? kUnknown : it->second;
}

const NGramModel::Table* NGramModel::LongestTable(
    const std::vector<uint32_t>& history) const {
  const size_t max_len =
      std::min(history.size(), static_cast<size_t>(order_ - 1));
  for (size_t len = max_len + 1; len-- > 0;) {
    auto it = tables_[len].find(ContextKey(history, history.size(), len));
    if (it != tables_[len].end()) return &it->second;
  }
  return nullptr;  // unreachable: the empty context is always present
}

double NGramModel::Probability(const std::vector<std::string>& context,
                               std::string_view next) const {
  const uint32_t id = IdOf(next);
  if (id == kUnknown || id == kBos) return 0.0;
  std::vector<uint32_t> history(order_ - 1, kBos);
  for (const std::string& t : context) history.push_back(IdOf(t));
  const Table* table = LongestTable(history);
  auto it = std::lower_bound(
      table->counts.begin(), table->counts.end(), std::make_pair(id, 0u),
      [](const auto& a, const auto& b) { return a.first < b.first; });
  const double c =
      (it != table->counts.end() && it->first == id) ? it->second : 0.0;
  const double outcomes = static_cast<double>(vocab_.size() - 1);
  return (c + smoothing_) /
         (static_cast<double>(table->total) + smoothing_ * outcomes);
}

std::vector<std::string> NGramModel::Generate(
    const std::vector<std::string>& prompt,
    const GenerateOptions& options) const {
  std::vector<std::string> out;
  std::vector<uint32_t> history(order_ - 1, kBos);
  for (const std::string& t : prompt) history.push_back(IdOf(t));
  SplitMix64 rng(options.seed);
  const double outcomes = static_cast<double>(vocab_.size() - 1);
  for (int step = 0; step < options.max_tokens; ++step) {
    const Table* table = LongestTable(history);
    uint32_t next = table->argmax;
    if (options.mode == DecodeMode::kSample) {
      // Smoothed mass: observed ids carry (c + d), every other outcome d.
      const double total =
          static_cast<double>(table->total) + smoothing_ * outcomes;
      double u = rng.NextDouble() * total;
      next = kUnknown;
      size_t cursor = 0;
      for (uint32_t id = 1; id < vocab_.size(); ++id) {
        double mass = smoothing_;
        if (cursor < table->counts.size() &&
            table->counts[cursor].first == id) {
          mass += table->counts[cursor].second;
          ++cursor;
        }
        if (u < mass) {
          next = id;
          break;
        }
        u -= mass;
      }
      if (next == kUnknown) next = static_cast<uint32_t>(vocab_.size() - 1);
    }
    if (next == kEos) break;
    out.push_back(vocab_[next]);
    history.push_back(next);
  }
  return out;
}

}  // namespace lingleak
