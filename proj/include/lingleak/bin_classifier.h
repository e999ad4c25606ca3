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

#ifndef LINGLEAK_BIN_CLASSIFIER_H_
#define LINGLEAK_BIN_CLASSIFIER_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "lingleak/corpus.h"

namespace lingleak {

struct ClassifierOptions {
  int epochs = 30;
  int n_classes = 9;
  int feature_bits = 12;  // hashed feature space of 2^bits
  double learning_rate = 0.5;
  double l2 = 1e-4;  // weight decay per example, applied once per epoch
  uint64_t seed = 0;
  // Extra copies of a document in every epoch of training (id -> copies).
  // Only consulted for documents inside the in-mask.
  std::map<std::string, int> repeats;
};

// Sparse input: hashed case-folded token unigrams and bigrams, L2-normalized,
// plus a log-length feature log1p(n) / log1p(1000), which stays near [0, 1]
// for sentences, and a bias.
using FeatureVector = std::vector<std::pair<uint32_t, double>>;
FeatureVector ExtractFeatures(const Document& doc, int feature_bits);

// Linear one-vs-rest classifier for the length-bin task. Probabilities are
// the per-class sigmoids renormalized to sum to one; the per-sample loss is
// the mean one-vs-rest sigmoid cross-entropy. Immutable after Train.
class BinClassifier {
 public:
  // Trains on the documents of `corpus` listed in `in_mask` and records a
  // snapshot (weights, per-document probabilities and losses) for every
  // document in `corpus` after each epoch. Snapshot 0 is the untrained
  // model.
  static absl::StatusOr<BinClassifier> Train(
      const Corpus& corpus, const std::set<std::string>& in_mask,
      const ClassifierOptions& options);

  int epochs() const { return options_.epochs; }
  int n_classes() const { return options_.n_classes; }
  const ClassifierOptions& options() const { return options_; }
  const std::set<std::string>& in_mask() const { return in_mask_; }
  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  std::optional<size_t> DocIndex(const std::string& id) const;

  // Probabilities for an arbitrary document under the weights of `epoch`
  // (default: final).
  absl::StatusOr<std::vector<double>> Predict(
      const Document& doc, std::optional<int> epoch = std::nullopt) const;

  // Recorded per-document values; epoch in [0, epochs()].
  const std::vector<double>& SnapshotProbabilities(int epoch,
                                                   size_t doc) const {
    return probs_[epoch][doc];
  }
  double SnapshotLoss(int epoch, size_t doc) const {
    return losses_[epoch][doc];
  }
  // Digest of all snapshot streams.
  std::string SnapshotDigest() const;

 private:
  BinClassifier() = default;
  std::vector<double> Scores(const FeatureVector& x, int epoch) const;

  ClassifierOptions options_;
  size_t dim_ = 0;
  std::set<std::string> in_mask_;
  std::vector<std::string> doc_ids_;
  std::unordered_map<std::string, size_t> doc_index_;
  std::vector<std::vector<double>> weights_;  // [epoch][class * dim + j]
  std::vector<std::vector<std::vector<double>>> probs_;  // [epoch][doc][c]
  std::vector<std::vector<double>> losses_;              // [epoch][doc]
};

// Normalized sigmoid probabilities and the mean one-vs-rest loss for scores.
std::vector<double> SigmoidProbabilities(const std::vector<double>& scores);
double OneVsRestLoss(const std::vector<double>& scores, int label);

}  // namespace lingleak

#endif  // LINGLEAK_BIN_CLASSIFIER_H_
