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

#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "lingleak/strings.h"
#include "lingleak/synth.h"

namespace lingleak {
namespace {

using ::testing::HasSubstr;

Corpus BinnedCorpus(int n_docs, uint64_t seed) {
  SynthSpec spec;
  spec.n_docs = n_docs;
  spec.vocab_size = 3000;
  spec.seed = seed;
  spec.min_len = 4;
  spec.max_len = 40;
  auto corpus = SynthCorpus(spec);
  EXPECT_TRUE(corpus.ok());
  auto split = SplitCorpus(*corpus, 0.8, seed);
  EXPECT_TRUE(split.ok());
  auto binned = AssignLengthBins(*split, 9);
  EXPECT_TRUE(binned.ok()) << binned.status();
  return *binned;
}

std::set<std::string> TrainIds(const Corpus& c) {
  std::set<std::string> ids;
  for (const Document& d : c.docs) {
    if (d.split == Split::kTrain) ids.insert(d.id);
  }
  return ids;
}

double MeanLoss(const BinClassifier& model, const Corpus& c, bool member,
                int epoch) {
  double total = 0;
  int n = 0;
  for (size_t i = 0; i < c.docs.size(); ++i) {
    if (model.in_mask().count(c.docs[i].id) != (member ? 1u : 0u)) continue;
    total += model.SnapshotLoss(epoch, i);
    ++n;
  }
  return total / n;
}

TEST(SigmoidProbabilitiesTest, Examples) {
  const auto uniform = SigmoidProbabilities(std::vector<double>(9, 0.0));
  for (double p : uniform) EXPECT_DOUBLE_EQ(p, 1.0 / 9.0);
  const auto two = SigmoidProbabilities({0.0, std::log(3.0)});
  EXPECT_NEAR(two[0], 0.4, 1e-15);
  EXPECT_NEAR(two[1], 0.6, 1e-15);
  const auto extreme = SigmoidProbabilities({800.0, -800.0, 0.0});
  EXPECT_NEAR(std::accumulate(extreme.begin(), extreme.end(), 0.0), 1.0, 1e-15);
  EXPECT_TRUE(std::isfinite(extreme[1]));
}

TEST(OneVsRestLossTest, Examples) {
  EXPECT_NEAR(OneVsRestLoss({0.0, 0.0, 0.0}, 1), std::log(2.0), 1e-15);
  const double s0 = 1.5, s1 = -0.5;
  const double expected =
      (std::log1p(std::exp(-s0)) + std::log1p(std::exp(s1))) / 2.0;
  EXPECT_NEAR(OneVsRestLoss({s0, s1}, 0), expected, 1e-15);
  EXPECT_TRUE(std::isfinite(OneVsRestLoss({-1000.0, 1000.0}, 0)));
  EXPECT_NEAR(OneVsRestLoss({-1000.0, 1000.0}, 0), 1000.0, 1e-9);
}

TEST(ExtractFeaturesTest, NormalizedWithLengthAndBias) {
  Document doc;
  doc.tokens = Tokenize("The cat sat on the mat", "en");
  const FeatureVector x = ExtractFeatures(doc, 10);
  ASSERT_GE(x.size(), 3u);
  double norm = 0;
  for (size_t i = 0; i + 2 < x.size(); ++i) {
    EXPECT_LT(x[i].first, 1024u);
    norm += x[i].second * x[i].second;
  }
  EXPECT_NEAR(norm, 1.0, 1e-12);
  EXPECT_EQ(x[x.size() - 2].first, 1024u);
  EXPECT_DOUBLE_EQ(x[x.size() - 2].second,
                   std::log1p(6.0) / std::log1p(1000.0));
  EXPECT_EQ(x.back().first, 1025u);
  EXPECT_EQ(x.back().second, 1.0);

  Document upper;
  upper.tokens = Tokenize("THE CAT sat on THE mat", "en");
  EXPECT_EQ(ExtractFeatures(upper, 10), x);
}

TEST(ExtractFeaturesTest, EmptyDocumentHasOnlyLengthAndBias) {
  const FeatureVector x = ExtractFeatures(Document{}, 4);
  ASSERT_EQ(x.size(), 2u);
  EXPECT_EQ(x[0], std::make_pair(16u, 0.0));
  EXPECT_EQ(x[1], std::make_pair(17u, 1.0));
}

class BinClassifierTest : public ::testing::Test {
 protected:
  void SetUp() override {
    corpus_ = BinnedCorpus(300, 5);
    in_ = TrainIds(corpus_);
    options_.epochs = 8;
    options_.seed = 3;
  }
  Corpus corpus_;
  std::set<std::string> in_;
  ClassifierOptions options_;
};

TEST_F(BinClassifierTest, SnapshotsCoverEveryEpochAndDocument) {
  auto model = BinClassifier::Train(corpus_, in_, options_);
  ASSERT_TRUE(model.ok()) << model.status();
  EXPECT_EQ(model->epochs(), 8);
  EXPECT_EQ(model->doc_ids().size(), corpus_.docs.size());
  for (int e = 0; e <= 8; ++e) {
    for (size_t d = 0; d < corpus_.docs.size(); ++d) {
      const auto& p = model->SnapshotProbabilities(e, d);
      ASSERT_EQ(p.size(), 9u);
      EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12);
      EXPECT_GT(model->SnapshotLoss(e, d), 0.0);
    }
  }
  // The untrained model is uniform.
  EXPECT_NEAR(model->SnapshotLoss(0, 0), std::log(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(model->SnapshotProbabilities(0, 0)[4], 1.0 / 9.0);
}

TEST_F(BinClassifierTest, PredictAgreesWithSnapshots) {
  auto model = BinClassifier::Train(corpus_, in_, options_);
  ASSERT_TRUE(model.ok());
  for (size_t d = 0; d < corpus_.docs.size(); d += 17) {
    for (int e : {0, 3, 8}) {
      auto p = model->Predict(corpus_.docs[d], e);
      ASSERT_TRUE(p.ok());
      const auto& snap = model->SnapshotProbabilities(e, d);
      for (int c = 0; c < 9; ++c) EXPECT_DOUBLE_EQ((*p)[c], snap[c]);
    }
    auto final_p = model->Predict(corpus_.docs[d]);
    ASSERT_TRUE(final_p.ok());
    EXPECT_EQ(*final_p, model->SnapshotProbabilities(8, d));
  }
  EXPECT_EQ(model->Predict(corpus_.docs[0], 9).status().code(),
            absl::StatusCode::kOutOfRange);
  EXPECT_EQ(model->Predict(corpus_.docs[0], -1).status().code(),
            absl::StatusCode::kOutOfRange);
}

TEST_F(BinClassifierTest, TrainingLowersMemberLossMoreThanNonMember) {
  auto model = BinClassifier::Train(corpus_, in_, options_);
  ASSERT_TRUE(model.ok());
  const double in0 = MeanLoss(*model, corpus_, true, 0);
  const double in8 = MeanLoss(*model, corpus_, true, 8);
  const double out8 = MeanLoss(*model, corpus_, false, 8);
  EXPECT_LT(in8, in0);
  EXPECT_LT(in8, out8);
  // Better than chance on the length bins.
  int correct = 0, n = 0;
  for (size_t d = 0; d < corpus_.docs.size(); ++d) {
    if (!in_.count(corpus_.docs[d].id)) continue;
    const auto& p = model->SnapshotProbabilities(8, d);
    const int argmax =
        static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
    correct += argmax == *corpus_.docs[d].bin_label;
    ++n;
  }
  EXPECT_GT(static_cast<double>(correct) / n, 2.0 / 9.0);
}

TEST_F(BinClassifierTest, SeedDeterminism) {
  auto a = BinClassifier::Train(corpus_, in_, options_);
  auto b = BinClassifier::Train(corpus_, in_, options_);
  ClassifierOptions other = options_;
  other.seed = 4;
  auto c = BinClassifier::Train(corpus_, in_, other);
  ASSERT_TRUE(a.ok() && b.ok() && c.ok());
  EXPECT_EQ(a->SnapshotDigest(), b->SnapshotDigest());
  EXPECT_NE(a->SnapshotDigest(), c->SnapshotDigest());
}

TEST_F(BinClassifierTest, RepeatsLowerTheRepeatedDocumentLoss) {
  const std::string target = *in_.begin();
  const size_t index =
      *BinClassifier::Train(corpus_, in_, options_)->DocIndex(target);
  auto plain = BinClassifier::Train(corpus_, in_, options_);
  ClassifierOptions repeated = options_;
  repeated.repeats[target] = 50;
  auto boosted = BinClassifier::Train(corpus_, in_, repeated);
  ASSERT_TRUE(plain.ok() && boosted.ok());
  EXPECT_LT(boosted->SnapshotLoss(8, index), plain->SnapshotLoss(8, index));
}

TEST_F(BinClassifierTest, InvalidInputs) {
  EXPECT_EQ(BinClassifier::Train(corpus_, {}, options_).status().code(),
            absl::StatusCode::kInvalidArgument);
  auto unknown = BinClassifier::Train(corpus_, {"no-such-doc"}, options_);
  EXPECT_FALSE(unknown.ok());

  std::string test_id;
  for (const Document& d : corpus_.docs) {
    if (d.split == Split::kTest) test_id = d.id;
  }
  auto leaked = BinClassifier::Train(corpus_, {test_id}, options_);
  ASSERT_FALSE(leaked.ok());
  EXPECT_THAT(std::string(leaked.status().message()), HasSubstr(test_id));

  Corpus unlabeled = corpus_;
  unlabeled.docs[3].bin_label.reset();
  EXPECT_EQ(BinClassifier::Train(unlabeled, in_, options_).status().code(),
            absl::StatusCode::kFailedPrecondition);

  ClassifierOptions few = options_;
  few.n_classes = 3;
  EXPECT_EQ(BinClassifier::Train(corpus_, in_, few).status().code(),
            absl::StatusCode::kInvalidArgument);
  ClassifierOptions no_epochs = options_;
  no_epochs.epochs = 0;
  EXPECT_FALSE(BinClassifier::Train(corpus_, in_, no_epochs).ok());
}

}  // namespace
}  // namespace lingleak
