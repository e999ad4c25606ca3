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

#include "lingleak/bin_classifier.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lingleak/digest.h"
#include "lingleak/rng.h"
#include "lingleak/strings.h"
#include "lingleak/unicode.h"

namespace lingleak {
namespace {

constexpr uint64_t kShuffleStream = 11;

uint64_t Fnv1a(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double Softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

}  // namespace

FeatureVector ExtractFeatures(const Document& doc, int feature_bits) {
  const uint32_t hashed = 1u << feature_bits;
  std::map<uint32_t, double> acc;
  std::vector<std::string> folded;
  for (const Token& t : doc.tokens) folded.push_back(CaseFold(t.surface));
  auto add = [&](const std::string& feature) {
    const uint64_t h = Mix64(Fnv1a(feature));
    acc[static_cast<uint32_t>(h & (hashed - 1))] += (h >> 63) ? -1.0 : 1.0;
  };
  for (size_t i = 0; i < folded.size(); ++i) {
    add(StrCat("u:", folded[i]));
    if (i + 1 < folded.size()) add(StrCat("b:", folded[i], " ", folded[i + 1]));
  }
  double norm = 0;
  for (const auto& [j, v] : acc) norm += v * v;
  norm = std::sqrt(norm);
  FeatureVector x;
  for (const auto& [j, v] : acc) {
    if (v != 0) x.emplace_back(j, v / norm);
  }
  x.emplace_back(hashed, std::log1p(static_cast<double>(doc.tokens.size())) /
                             std::log1p(1000.0));
  x.emplace_back(hashed + 1, 1.0);
  return x;
}

std::vector<double> SigmoidProbabilities(const std::vector<double>& scores) {
  std::vector<double> p(scores.size());
  double total = 0;
  for (size_t c = 0; c < scores.size(); ++c) {
    p[c] = Sigmoid(scores[c]);
    total += p[c];
  }
  for (double& v : p) v /= total;
  return p;
}

double OneVsRestLoss(const std::vector<double>& scores, int label) {
  double loss = 0;
  for (size_t c = 0; c < scores.size(); ++c) {
    // -log sigmoid(z) = softplus(-z); -log(1 - sigmoid(z)) = softplus(z).
    loss += static_cast<int>(c) == label ? Softplus(-scores[c])
                                         : Softplus(scores[c]);
  }
  return loss / static_cast<double>(scores.size());
}

absl::StatusOr<BinClassifier> BinClassifier::Train(
    const Corpus& corpus, const std::set<std::string>& in_mask,
    const ClassifierOptions& options) {
  if (in_mask.empty()) return absl::InvalidArgumentError("empty in_mask");
  if (options.epochs < 1) return absl::InvalidArgumentError("epochs < 1");
  if (options.n_classes < 2) {
    return absl::InvalidArgumentError("need at least 2 classes");
  }
  if (options.feature_bits < 1 || options.feature_bits > 24) {
    return absl::InvalidArgumentError("feature_bits must lie in [1, 24]");
  }
  BinClassifier model;
  model.options_ = options;
  model.in_mask_ = in_mask;
  model.dim_ = (size_t{1} << options.feature_bits) + 2;

  std::vector<FeatureVector> features;
  std::vector<int> labels;
  std::vector<size_t> train_order;
  for (const Document& doc : corpus.docs) {
    if (!doc.bin_label) {
      return absl::FailedPreconditionError(
          StrCat("document ", doc.id, " has no bin label"));
    }
    if (*doc.bin_label < 0 || *doc.bin_label >= options.n_classes) {
      return absl::InvalidArgumentError(
          StrCat("document ", doc.id, " has bin label ", *doc.bin_label,
                 " outside [0, ", options.n_classes, ")"));
    }
    const size_t index = model.doc_ids_.size();
    model.doc_index_.emplace(doc.id, index);
    model.doc_ids_.push_back(doc.id);
    features.push_back(ExtractFeatures(doc, options.feature_bits));
    labels.push_back(*doc.bin_label);
    if (in_mask.count(doc.id)) {
      if (doc.split == Split::kTest) {
        return absl::InvalidArgumentError(
            StrCat("in_mask contains test document ", doc.id));
      }
      auto it = options.repeats.find(doc.id);
      const int copies = it == options.repeats.end() ? 1 : it->second;
      for (int r = 0; r < copies; ++r) train_order.push_back(index);
    }
  }
  for (const std::string& id : in_mask) {
    if (!model.doc_index_.count(id)) {
      return absl::InvalidArgumentError(
          StrCat("in_mask id ", id, " is not in the corpus"));
    }
  }

  const size_t n_classes = static_cast<size_t>(options.n_classes);
  std::vector<double> w(n_classes * model.dim_, 0.0);
  auto snapshot = [&] {
    model.weights_.push_back(w);
    const int epoch = static_cast<int>(model.weights_.size()) - 1;
    std::vector<std::vector<double>> probs(features.size());
    std::vector<double> losses(features.size());
    for (size_t d = 0; d < features.size(); ++d) {
      const std::vector<double> scores = model.Scores(features[d], epoch);
      probs[d] = SigmoidProbabilities(scores);
      losses[d] = OneVsRestLoss(scores, labels[d]);
    }
    model.probs_.push_back(std::move(probs));
    model.losses_.push_back(std::move(losses));
  };
  snapshot();

  const double decay =
      std::max(0.0, 1.0 - options.learning_rate * options.l2 *
                              static_cast<double>(train_order.size()));
  for (int epoch = 1; epoch <= options.epochs; ++epoch) {
    std::vector<size_t> order = train_order;
    SplitMix64 rng(CounterHash(options.seed, kShuffleStream, epoch));
    Shuffle(std::span<size_t>(order), rng);
    for (size_t d : order) {
      const FeatureVector& x = features[d];
      for (size_t c = 0; c < n_classes; ++c) {
        double* wc = &w[c * model.dim_];
        double z = 0;
        for (const auto& [j, v] : x) z += wc[j] * v;
        const double target = static_cast<int>(c) == labels[d] ? 1.0 : 0.0;
        const double g = options.learning_rate * (Sigmoid(z) - target);
        for (const auto& [j, v] : x) wc[j] -= g * v;
      }
    }
    for (double& v : w) v *= decay;
    snapshot();
  }
  return model;
}

std::vector<double> BinClassifier::Scores(const FeatureVector& x,
                                          int epoch) const {
  const std::vector<double>& w = weights_[epoch];
  std::vector<double> scores(options_.n_classes, 0.0);
  for (size_t c = 0; c < scores.size(); ++c) {
    const double* wc = &w[c * dim_];
    for (const auto& [j, v] : x) scores[c] += wc[j] * v;
  }
  return scores;
}

std::optional<size_t> BinClassifier::DocIndex(const std::string& id) const {
  auto it = doc_index_.find(id);
  if (it == doc_index_.end()) return std::nullopt;
  return it->second;
}

absl::StatusOr<std::vector<double>> BinClassifier::Predict(
    const Document& doc, std::optional<int> epoch) const {
  const int e = epoch.value_or(options_.epochs);
  if (e < 0 || e > options_.epochs) {
    return absl::OutOfRangeError(
        StrCat("epoch ", e, " outside [0, ", options_.epochs, "]"));
  }
  return SigmoidProbabilities(
      Scores(ExtractFeatures(doc, options_.feature_bits), e));
}

std::string BinClassifier::SnapshotDigest() const {
  Sha256 hash;
  for (size_t e = 0; e < probs_.size(); ++e) {
    for (size_t d = 0; d < probs_[e].size(); ++d) {
      std::string row = FormatDouble(losses_[e][d]);
      for (double p : probs_[e][d]) StrAppend(&row, ",", FormatDouble(p));
      hash.UpdateField(row);
    }
  }
  return hash.HexDigest();
}

}  // namespace lingleak
